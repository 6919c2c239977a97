#include "trc/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace trc {

std::string_view entryKindName(EntryKind k) {
  switch (k) {
    case EntryKind::Equality: return "equality";
    case EntryKind::Refutation: return "refutation";
    case EntryKind::CompileSuccess: return "compile-success";
    case EntryKind::CompileFailure: return "compile-failure";
  }
  return "?";
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// ---------------------------------------------------------------------------
// Index

namespace {

std::optional<EntryKind> kindFromName(const std::string& s) {
  for (auto k : {EntryKind::Equality, EntryKind::Refutation, EntryKind::CompileSuccess, EntryKind::CompileFailure}) {
    if (entryKindName(k) == s) return k;
  }
  return std::nullopt;
}

bool isCompile(EntryKind k) { return k == EntryKind::CompileSuccess || k == EntryKind::CompileFailure; }

}  // namespace

CorpusIndex CorpusIndex::parse(std::string_view text) {
  CorpusIndex index;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    auto where = [&](const std::string& msg) { return CorpusError("index line " + std::to_string(lineNo) + ": " + msg); };
    std::string expectedText;
    if (auto arrow = raw.find("=>"); arrow != std::string::npos) {
      expectedText = raw.substr(arrow + 2);
      raw.erase(arrow);
    } else if (auto hash = raw.find('#'); hash != std::string::npos && (hash == 0 || raw[hash - 1] == ' ')) {
      raw.erase(hash);
    }
    std::istringstream words(raw);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty()) continue;
    if (w.size() < 3) throw where("expected `ID KIND FILE ...`");
    CorpusEntry e;
    e.id = w[0];
    e.line = lineNo;
    auto kind = kindFromName(w[1]);
    if (!kind) throw where("unknown entry kind " + w[1]);
    e.kind = *kind;
    e.file = w[2];
    for (std::size_t i = 3; i < w.size(); ++i) {
      if (w[i].rfind("spec=", 0) == 0) {
        e.spec = w[i].substr(5);
      } else {
        e.dependencies.push_back(w[i]);
      }
    }
    if (isCompile(e.kind)) {
      auto hash = e.file.find('#');
      if (hash == std::string::npos) throw where("compile entries name `FILE#SPEC`");
      e.spec = e.file.substr(hash + 1);
      e.file.erase(hash);
    }
    if (e.kind == EntryKind::CompileSuccess) {
      if (expectedText.empty()) throw where("compile-success entries need `=> EXPECTED`");
      try {
        e.expected = trc::parse(expectedText);
      } catch (const SyntaxError& err) {
        throw where(std::string("expected term: ") + err.what());
      }
    } else if (!expectedText.empty()) {
      throw where("only compile-success entries take `=> EXPECTED`");
    }
    if (index.find(e.id)) throw where("duplicate id " + e.id);
    for (const auto& d : e.dependencies) {
      if (!index.find(d)) throw where("dependency " + d + " of " + e.id + " does not appear earlier");
    }
    index.entries.push_back(std::move(e));
  }
  return index;
}

CorpusIndex CorpusIndex::load(const std::string& dir) { return parse(readFile(dir + "/index")); }

const CorpusEntry* CorpusIndex::find(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Running

namespace {

struct EntryOutcome {
  CheckReport report;
  std::optional<ProofScript> script;
};

CheckReport failure(const std::string& id, const std::string& reason) {
  CheckReport r;
  r.id = id;
  r.pass = false;
  r.failStep = "0";
  r.reason = reason;
  return r;
}

std::string joinSet(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
  return "{" + out + "}";
}

std::optional<CombinatorSpec> findSpec(const std::string& path, const std::string& name, std::string& error) {
  try {
    for (auto& s : parseCombinatorSpecs(readFile(path))) {
      if (s.name == name) return s;
    }
    error = "no combinator spec " + name + " in " + path;
  } catch (const SyntaxError& e) {
    error = path + ":" + e.what();
  } catch (const CorpusError& e) {
    error = e.what();
  }
  return std::nullopt;
}

EntryOutcome checkCompileEntry(const std::string& dir, const CorpusEntry& e, const RuleSet& rules) {
  std::string error;
  auto spec = findSpec(dir + "/" + e.file, *e.spec, error);
  if (!spec) return {failure(e.id, error), std::nullopt};
  CompileOptions opts;
  opts.engine = rules.config();
  opts.optimize = true;
  CheckReport r;
  r.id = e.id;
  try {
    Term compiled = compileCombinator(*spec, opts);
    r.trace.push_back("  COMPILED " + renderCombinatorSpec(*spec) + " => " + render(compiled));
    if (e.kind == EntryKind::CompileFailure) return {failure(e.id, "compiler accepted " + spec->name), std::nullopt};
    auto eq = extEqual(compiled, *e.expected, standardRuleSet(rules.config()));
    if (!eq.equal) {
      return {failure(e.id, "compiled " + render(compiled) + " is not ext-equal to " + render(*e.expected)),
              std::nullopt};
    }
  } catch (const CompileError& err) {
    r.trace.push_back(std::string("  REJECTED ") + err.what());
    if (e.kind == EntryKind::CompileSuccess) return {failure(e.id, err.what()), std::nullopt};
  }
  r.pass = true;
  r.failStep.clear();
  return {r, std::nullopt};
}

EntryOutcome checkScriptEntry(const std::string& dir, const CorpusEntry& e, const RuleSet& rules,
                              const Registry& registry) {
  std::string path = dir + "/" + e.file;
  std::vector<ProofScript> scripts;
  try {
    scripts = parseScripts(readFile(path), e.file);
  } catch (const CorpusError& err) {
    return {failure(e.id, err.what()), std::nullopt};
  } catch (const SyntaxError& err) {
    return {failure(e.id, "parse error " + e.file + ":" + err.what()), std::nullopt};
  }
  auto it = std::find_if(scripts.begin(), scripts.end(), [&](const ProofScript& s) { return s.id == e.id; });
  if (it == scripts.end()) return {failure(e.id, e.file + " has no theorem " + e.id), std::nullopt};
  const ProofScript& script = *it;

  bool allEqual = std::all_of(script.statements.begin(), script.statements.end(),
                              [](const Judgment& j) { return j.kind == Judgment::Kind::Equal; });
  if ((e.kind == EntryKind::Equality) != allEqual) {
    return {failure(e.id, "statement kind does not match index kind " + std::string(entryKindName(e.kind))),
            std::nullopt};
  }

  CheckReport r = checkScript(script, registry, rules);
  if (r.pass) {
    std::set<std::string> declared(e.dependencies.begin(), e.dependencies.end());
    if (declared != r.dependencies) {
      r.pass = false;
      r.failStep = "0";
      r.reason = "index dependencies " + joinSet(declared) + " differ from script dependencies " +
                 joinSet(r.dependencies);
    }
  }
  if (r.pass && e.spec) {
    std::string error;
    auto spec = findSpec(dir + "/specs.trc", *e.spec, error);
    if (!spec) return {failure(e.id, error), std::nullopt};
    CompileOptions opts;
    opts.engine = rules.config();
    try {
      Term t = compileCombinator(*spec, opts);
      return {failure(e.id, "compiler accepts refuted combinator " + spec->name + " as " + render(t)), std::nullopt};
    } catch (const CompileError& err) {
      r.trace.push_back(std::string("  REJECTED ") + err.what());
    }
  }
  return {r, script};
}

}  // namespace

CorpusRun runCorpus(const std::string& dir, const CorpusIndex& index, const RuleSet& rules, Registry& registry,
                    const CorpusOptions& options) {
  const std::size_t n = index.entries.size();
  std::vector<int> level(n, 0);
  std::map<std::string, std::size_t> position;
  int maxLevel = 0;
  for (std::size_t i = 0; i < n; ++i) {
    position[index.entries[i].id] = i;
    for (const auto& d : index.entries[i].dependencies) level[i] = std::max(level[i], level[position.at(d)] + 1);
    maxLevel = std::max(maxLevel, level[i]);
  }

  CorpusRun run;
  run.reports.resize(n);
  std::vector<bool> passed(n, false);
  const unsigned jobs = std::max(1u, options.jobs);

  for (int lv = 0; lv <= maxLevel; ++lv) {
    std::vector<std::size_t> wave;
    for (std::size_t i = 0; i < n; ++i) {
      if (level[i] != lv) continue;
      const auto& e = index.entries[i];
      std::string blocker;
      for (const auto& d : e.dependencies) {
        if (!passed[position.at(d)]) {
          blocker = d;
          break;
        }
      }
      if (!blocker.empty()) {
        run.reports[i] = failure(e.id, "blocked: dependency " + blocker + " did not pass");
      } else {
        wave.push_back(i);
      }
    }

    std::vector<EntryOutcome> outcomes(wave.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k; (k = next++) < wave.size();) {
        const auto& e = index.entries[wave[k]];
        outcomes[k] = isCompile(e.kind) ? checkCompileEntry(dir, e, rules) : checkScriptEntry(dir, e, rules, registry);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::min<std::size_t>(jobs, wave.size()); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (std::size_t k = 0; k < wave.size(); ++k) {
      auto& out = outcomes[k];
      if (out.report.pass && out.script) {
        try {
          registry.registerTheorem(recordFor(*out.script, out.report), out.report);
        } catch (const RegistryError& err) {
          out.report.pass = false;
          out.report.failStep = "0";
          out.report.reason = err.what();
        }
      }
      passed[wave[k]] = out.report.pass;
      run.reports[wave[k]] = std::move(out.report);
    }
  }

  run.pass = std::all_of(passed.begin(), passed.end(), [](bool b) { return b; });
  if (!rules.config().correctedAxioms) {
    run.notes.push_back(
        "NOTE erratum mode: the printed forms of the pair-app axiom (<x,y> z -> <x y, x z>) and the abst axiom "
        "(Abst x y z -> x k(y) (y z)) are active; results whose chains rely on the corrected forms fail");
  }
  return run;
}

CorpusRun runCorpus(const std::string& dir, const CorpusOptions& options) {
  auto index = CorpusIndex::load(dir);
  Registry registry;
  return runCorpus(dir, index, standardRuleSet(options.engine), registry, options);
}

RuleSet checkedRuleSet(const RuleSet& base, const Registry& registry) {
  RuleSet rs = base;
  auto add = [&](const std::string& name, const Term& lhs, const Term& rhs, const std::string& theorem) {
    if (!registry.find(theorem) || rs.find(name)) return;
    rs = registerDerivedRule(rs, name, lhs, rhs, theorem, registry);
  };
  add("proj1-app", parse("P1 $x $y"), parse("P1 ($x $y)"), "2.2c");
  add("proj2-app", parse("P2 $x $y"), parse("P2 ($x $y)"), "2.2c");
  for (const auto& s : simplifications()) add(s.name, s.lhs, s.rhs, s.theorem);
  return rs;
}

std::string CorpusRun::format(const CorpusIndex& index, bool trace) const {
  std::ostringstream os;
  std::size_t pass = 0, blocked = 0;
  for (const auto& r : reports) {
    os << r.line() << "\n";
    if (trace) {
      for (const auto& t : r.trace) os << t << "\n";
    }
    if (r.pass) ++pass;
    if (!r.pass && r.reason.rfind("blocked:", 0) == 0) ++blocked;
  }
  for (const auto& n : notes) os << n << "\n";
  os << "COVERAGE\n";
  for (std::size_t i = 0; i < index.entries.size() && i < reports.size(); ++i) {
    const auto& e = index.entries[i];
    std::string status = reports[i].pass ? "PASS" : (reports[i].reason.rfind("blocked:", 0) == 0 ? "BLOCKED" : "FAIL");
    std::string file = e.file + (isCompile(e.kind) ? "#" + *e.spec : "");
    os << "  " << e.id << std::string(e.id.size() < 12 ? 12 - e.id.size() : 1, ' ') << entryKindName(e.kind)
       << std::string(16 - std::min<std::size_t>(15, entryKindName(e.kind).size()), ' ') << file << "  " << status
       << "\n";
  }
  os << "SUMMARY " << reports.size() << " entries, " << pass << " pass, " << reports.size() - pass - blocked
     << " fail, " << blocked << " blocked\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Listing

namespace {

Term expandDefinitions(Term t, const std::vector<Definition>& defs) {
  for (auto it = defs.rbegin(); it != defs.rend(); ++it) t = substituteDefined(t, {{it->name, it->body}});
  return t;
}

// The refute steps at the top level of a script: what was built from the
// hypothesis, and which earlier result it contradicts.
std::vector<std::string> constructions(const ProofScript& s) {
  std::vector<std::string> out;
  for (const auto& step : s.body.steps) {
    const auto* r = std::get_if<RefuteProof>(&step.justification.value);
    if (!r) continue;
    std::string parts;
    for (const auto& [c, image] : r->constants) {
      parts += (parts.empty() ? "" : ", ") + c + " = " + render(expandDefinitions(image, s.definitions));
    }
    out.push_back(parts + " => false via " + r->id);
  }
  return out;
}

}  // namespace

std::string listTheorems(const std::string& dir, const CorpusIndex& index, const CorpusRun& run) {
  std::ostringstream os;
  for (std::size_t i = 0; i < index.entries.size(); ++i) {
    const auto& e = index.entries[i];
    std::string status = "UNCHECKED";
    if (i < run.reports.size()) status = run.reports[i].pass ? "PASS" : "FAIL";
    os << e.id << "  " << status << "  ";
    std::string title;
    if (isCompile(e.kind)) {
      std::string error;
      auto spec = findSpec(dir + "/" + e.file, *e.spec, error);
      os << (spec ? renderCombinatorSpec(*spec) : error);
      if (e.expected) os << " compiles to " << render(*e.expected);
    } else {
      try {
        auto scripts = parseScripts(readFile(dir + "/" + e.file), e.file);
        auto it = std::find_if(scripts.begin(), scripts.end(), [&](const ProofScript& s) { return s.id == e.id; });
        if (it == scripts.end()) {
          os << "(missing)";
        } else {
          title = it->title;
          auto built = constructions(*it);
          if (it->isNonexistence() && !built.empty()) {
            for (std::size_t k = 0; k < built.size(); ++k) os << (k ? "; " : "") << built[k];
          } else {
            for (std::size_t k = 0; k < it->statements.size(); ++k) {
              os << (k ? "; " : "") << render(it->statements[k]);
            }
          }
        }
      } catch (const std::exception& err) {
        os << "(unreadable: " << err.what() << ")";
      }
    }
    if (!e.dependencies.empty()) {
      os << "  [deps:";
      for (const auto& d : e.dependencies) os << " " << d;
      os << "]";
    }
    if (!title.empty()) os << "  \"" << title << "\"";
    os << "\n";
  }
  return os.str();
}

}  // namespace trc
