// trc: command-line front end for the TRC rewriting engine, stratifier,
// abstraction compiler and proof checker.
//
// Exit codes: 0 success, 1 mathematical failure (failed check, not
// abstractable, unknown equality, fuel exhausted), 2 usage or parse error.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "trc/corpus.hpp"
#include "trc/kernel.hpp"
#include "trc/rewrite.hpp"
#include "trc/stratify.hpp"

#ifndef TRC_CORPUS_DIR
#define TRC_CORPUS_DIR "corpus"
#endif

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::optional<std::size_t> fuel;
  std::optional<std::size_t> extDepth;
  bool printedAxioms = false;
  bool noSurjectivePairing = false;
  bool noEqRefl = false;
  bool trace = false;
  bool optimize = false;
  bool eta = false;
  bool checkedRules = false;
  unsigned jobs = 1;
  std::string file;
  std::vector<std::string> inputs;
  std::string corpusDir = TRC_CORPUS_DIR;
};

trc::EngineConfig engineConfig(const Options& o) {
  trc::EngineConfig c;
  if (!o.config.empty()) {
    try {
      c = trc::EngineConfig::fromFile(o.config);
    } catch (const std::exception& e) {
      throw UsageError(std::string("config: ") + e.what());
    }
  }
  if (o.fuel) c.fuel = *o.fuel;
  if (o.extDepth) c.extDepth = *o.extDepth;
  if (o.printedAxioms) c.correctedAxioms = false;
  if (o.noSurjectivePairing) c.surjectivePairing = false;
  if (o.noEqRefl) c.eqReflexivity = false;
  return c;
}

// The evaluation rules, optionally extended by derived rules from the corpus.
trc::RuleSet evaluationRules(const Options& o) {
  auto cfg = engineConfig(o);
  auto rules = trc::standardRuleSet(cfg);
  if (!o.checkedRules) return rules;
  trc::Registry registry;
  trc::CorpusOptions copts;
  copts.engine = cfg;
  copts.jobs = o.jobs;
  trc::runCorpus(o.corpusDir, trc::CorpusIndex::load(o.corpusDir), rules, registry, copts);
  return trc::checkedRuleSet(rules, registry);
}

std::string readInput(const std::string& path) {
  try {
    return trc::readFile(path);
  } catch (const trc::CorpusError& e) {
    throw UsageError(e.what());
  }
}

// Terms come from positional arguments, or one per non-empty line of --file.
std::vector<trc::Term> termInputs(const Options& o, std::size_t count) {
  std::vector<std::string> texts = o.inputs;
  if (!o.file.empty()) {
    std::istringstream in(readInput(o.file));
    for (std::string line; std::getline(in, line);) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) texts.push_back(line);
    }
  }
  if (texts.size() != count) {
    throw UsageError("expected " + std::to_string(count) + " term(s), got " + std::to_string(texts.size()));
  }
  std::vector<trc::Term> out;
  for (const auto& t : texts) out.push_back(trc::parse(t));
  return out;
}

int cmdParse(const Options& o) {
  std::cout << trc::render(termInputs(o, 1)[0]) << "\n";
  return 0;
}

int cmdNormalize(const Options& o) {
  auto t = termInputs(o, 1)[0];
  auto r = trc::normalize(t, evaluationRules(o));
  if (o.trace) std::cout << trc::formatTrace(r.trace);
  std::cout << trc::render(r.result) << "\n";
  if (r.exhausted) {
    std::cout << "FUEL EXHAUSTED after " << r.trace.size() << " steps\n";
    return 1;
  }
  return 0;
}

int cmdEq(const Options& o) {
  auto ts = termInputs(o, 2);
  auto r = trc::extEqual(ts[0], ts[1], evaluationRules(o));
  const auto& levels = r.evidence.levels;
  const auto& last = levels.back();
  std::string vars;
  for (const auto& v : r.evidence.freshVariables()) vars += " " + v;
  if (r.equal) {
    std::cout << "EQUAL";
    if (levels.size() == 1) {
      std::cout << " common normal form " << trc::render(last.leftNormal.result) << "\n";
    } else {
      std::cout << " after applying" << vars << ": " << trc::render(last.leftNormal.result) << "\n";
    }
    return 0;
  }
  std::cout << "UNKNOWN";
  if (last.leftNormal.exhausted || last.rightNormal.exhausted) std::cout << " (fuel exhausted)";
  std::cout << " at depth " << levels.size() - 1 << ": " << trc::render(last.leftNormal.result) << " vs "
            << trc::render(last.rightNormal.result) << "\n";
  return 1;
}

int cmdStratify(const Options& o) {
  auto r = trc::stratify(termInputs(o, 1)[0]);
  if (r.satisfiable()) {
    std::cout << trc::formatAssignment(r.assignment) << "\n";
    return 0;
  }
  std::cout << "CONFLICT offsets around the cycle sum to " << r.conflictOffset() << "\n";
  for (const auto& c : *r.conflict) {
    std::cout << "  type(" << c.left << ") = type(" << c.right << ") + " << c.offset << "\n";
  }
  return 1;
}

int cmdAbstract(const Options& o) {
  if (o.inputs.size() != 2) throw UsageError("abstract takes a variable and a term");
  const std::string& x = o.inputs[0];
  auto t = trc::parse(o.inputs[1]);
  auto v = trc::parse(x);
  if (!v.is(trc::Kind::Variable)) throw UsageError(x + " is not a variable name");
  try {
    trc::AbstractOptions opts;
    opts.etaContract = o.eta;
    auto r = trc::abstract(x, t, opts);
    if (o.optimize) r = trc::optimize(r);
    std::cout << trc::render(r) << "\n";
    return 0;
  } catch (const trc::NotAbstractable& e) {
    std::cout << "NotAbstractable: " << e.what() << "\n";
    return 1;
  }
}

int cmdCompile(const Options& o) {
  std::string text;
  if (!o.file.empty()) {
    text = readInput(o.file);
  } else if (o.inputs.size() == 1) {
    text = readInput(o.inputs[0]);
  } else {
    throw UsageError("compile takes one spec file");
  }
  auto specs = trc::parseCombinatorSpecs(text);
  trc::CompileOptions opts;
  opts.optimize = o.optimize;
  opts.abstraction.etaContract = o.eta;
  opts.engine = engineConfig(o);
  int status = 0;
  for (const auto& spec : specs) {
    try {
      std::cout << spec.name << " := " << trc::render(trc::compileCombinator(spec, opts)) << "\n";
    } catch (const trc::CompileError& e) {
      std::cout << e.what() << "\n";
      status = 1;
    }
  }
  return status;
}

int cmdCheck(const Options& o) {
  if (o.inputs.empty()) throw UsageError("check takes one or more script files");
  auto cfg = engineConfig(o);
  auto rules = trc::standardRuleSet(cfg);
  trc::Registry registry;
  if (!o.corpusDir.empty() && o.corpusDir != "none") {
    trc::CorpusOptions copts;
    copts.engine = cfg;
    copts.jobs = o.jobs;
    trc::runCorpus(o.corpusDir, trc::CorpusIndex::load(o.corpusDir), rules, registry, copts);
  }
  std::vector<std::pair<std::string, std::vector<trc::ProofScript>>> files;
  for (const auto& path : o.inputs) {
    try {
      files.emplace_back(path, trc::parseScripts(readInput(path), path));
    } catch (const trc::SyntaxError& e) {
      throw trc::SyntaxError(e.line, e.column, path + ": " + e.message, e.expected);
    }
  }
  int status = 0;
  for (const auto& [path, scripts] : files) {
    for (const auto& script : scripts) {
      auto report = trc::checkScript(script, registry, rules);
      std::cout << report.line() << "\n";
      if (o.trace) {
        for (const auto& t : report.trace) std::cout << t << "\n";
      }
      if (!report.pass) {
        status = 1;
        continue;
      }
      try {
        registry.registerTheorem(trc::recordFor(script, report), report);
      } catch (const trc::RegistryError& e) {
        std::cout << "REGISTRY " << script.id << ": " << e.what() << "\n";
        status = 1;
      }
    }
  }
  return status;
}

int cmdCorpus(const Options& o) {
  std::string dir = o.inputs.empty() ? o.corpusDir : o.inputs[0];
  trc::CorpusIndex index;
  try {
    index = trc::CorpusIndex::load(dir);
  } catch (const trc::CorpusError& e) {
    throw UsageError(e.what());
  }
  trc::CorpusOptions copts;
  copts.engine = engineConfig(o);
  copts.trace = o.trace;
  copts.jobs = o.jobs;
  trc::Registry registry;
  auto run = trc::runCorpus(dir, index, trc::standardRuleSet(copts.engine), registry, copts);
  std::cout << run.format(index, o.trace);
  return run.pass ? 0 : 1;
}

int cmdList(const Options& o) {
  std::string dir = o.inputs.empty() ? o.corpusDir : o.inputs[0];
  trc::CorpusIndex index;
  try {
    index = trc::CorpusIndex::load(dir);
  } catch (const trc::CorpusError& e) {
    throw UsageError(e.what());
  }
  trc::CorpusOptions copts;
  copts.engine = engineConfig(o);
  copts.jobs = o.jobs;
  trc::Registry registry;
  auto run = trc::runCorpus(dir, index, trc::standardRuleSet(copts.engine), registry, copts);
  std::cout << trc::listTheorems(dir, index, run);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trc: rewriting, stratification, abstraction and proof checking for TRC"};
  app.require_subcommand(1);
  Options o;

  auto engineFlags = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "engine settings file (key = value lines)");
    cmd->add_option("--fuel", o.fuel, "rewrite step bound per normalization (default 10000)");
    cmd->add_option("--ext-depth", o.extDepth, "fresh-variable applications for eq (default 4)");
    cmd->add_flag("--printed-axioms", o.printedAxioms, "use the printed (erroneous) pair-app and abst rules");
    cmd->add_flag("--no-surjective-pairing", o.noSurjectivePairing, "drop the surjective pairing rule");
    cmd->add_flag("--no-eq-refl", o.noEqRefl, "drop the Eq reflexivity rule");
    cmd->add_flag("--checked-rules", o.checkedRules,
                  "add derived rules from theorems checked in the corpus (normalize, eq)");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Command commands[] = {
      {"parse", "parse a term and print its canonical form", cmdParse},
      {"normalize", "normalize a term (leftmost-outermost)", cmdNormalize},
      {"eq", "decide equality of two terms by normalization and extensionality", cmdEq},
      {"stratify", "compute a type assignment or a conflict cycle", cmdStratify},
      {"abstract", "abstract a variable out of a term: abstract X TERM", cmdAbstract},
      {"compile", "compile a file of combinator definitions", cmdCompile},
      {"check", "check proof scripts", cmdCheck},
      {"corpus", "check the whole proof corpus", cmdCorpus},
      {"list", "list corpus entries with their status", cmdList},
  };

  int (*selected)(const Options&) = nullptr;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    engineFlags(sub);
    sub->add_option("inputs", o.inputs, "terms or files");
    sub->add_option("--file", o.file, "read terms (one per line) or specs from a file");
    sub->add_flag("--trace", o.trace, "print rewrite or proof-step traces");
    sub->add_flag("--optimize", o.optimize, "simplify abstraction output");
    sub->add_flag("--eta", o.eta, "eta-contract during abstraction");
    sub->add_option("--jobs", o.jobs, "parallel workers for check and corpus")->check(CLI::PositiveNumber);
    sub->add_option("--corpus", o.corpusDir, "corpus directory (`none` for check without it)");
    sub->callback([&selected, &c] { selected = c.run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return selected(o);
  } catch (const trc::SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
  } catch (const trc::CorpusError& e) {
    std::cerr << "corpus error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
