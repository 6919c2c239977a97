#include "trc/rewrite.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace trc {

Rule Rule::make(std::string name, Term lhs, Term rhs, Provenance provenance) {
  auto lv = patternVars(lhs);
  for (const auto& v : patternVars(rhs)) {
    if (!lv.count(v)) {
      throw std::invalid_argument("rule " + name + ": rhs variable $" + v + " does not occur in lhs");
    }
  }
  return Rule{std::move(name), std::move(lhs), std::move(rhs), std::move(provenance), std::nullopt};
}

bool Rule::sideConditionHolds(const Substitution& s) const {
  if (!identicalVars) return true;
  auto a = s.find(identicalVars->first);
  auto b = s.find(identicalVars->second);
  return a != s.end() && b != s.end() && a->second == b->second;
}

// ---------------------------------------------------------------------------

namespace {

bool parseBool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw std::invalid_argument("config key " + key + ": expected a boolean, got '" + v + "'");
}

std::size_t parseCount(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) {
    throw std::invalid_argument("config key " + key + ": expected a count, got '" + v + "'");
  }
  return static_cast<std::size_t>(n);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void EngineConfig::set(const std::string& key, const std::string& value) {
  if (key == "fuel") {
    fuel = parseCount(key, value);
    if (fuel < 1) throw std::invalid_argument("fuel must be at least 1");
  } else if (key == "ext-depth") {
    extDepth = parseCount(key, value);
  } else if (key == "corrected-axioms") {
    correctedAxioms = parseBool(key, value);
  } else if (key == "printed-axioms") {
    correctedAxioms = !parseBool(key, value);
  } else if (key == "surjective-pairing") {
    surjectivePairing = parseBool(key, value);
  } else if (key == "eq-refl") {
    eqReflexivity = parseBool(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

EngineConfig EngineConfig::fromFile(const std::string& path) { return fromFile(path, EngineConfig{}); }

EngineConfig EngineConfig::fromFile(const std::string& path, EngineConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    for (const char* c : {"#", "--"}) {
      auto p = line.find(c);
      if (p != std::string::npos) line.erase(p);
    }
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineNo) + ": expected key = value");
    }
    base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

// ---------------------------------------------------------------------------

RuleSet RuleSet::with(Rule rule) const {
  if (find(rule.name)) throw std::invalid_argument("duplicate rule name " + rule.name);
  RuleSet out = *this;
  out.rules_.push_back(std::move(rule));
  return out;
}

RuleSet RuleSet::withDefinition(const std::string& name, const Term& body) const {
  return with(Rule::make("def:" + name, Term::defined(name), body, Provenance::definition(name)));
}

const Rule* RuleSet::find(const std::string& name) const {
  for (const auto& r : rules_) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

RuleSet coreRuleSet(const EngineConfig& config) {
  auto v = [](const char* n) { return Term::patternVar(n); };
  auto c = [](Constant k) { return Term::constant(k); };
  auto app = [](Term f, Term a) { return Term::apply(std::move(f), std::move(a)); };
  const auto ax = Provenance::axiom();

  RuleSet rs(config);
  rs = rs.with(Rule::make("k-apply", app(Term::kwrap(v("x")), v("y")), v("x"), ax));
  rs = rs.with(Rule::make("proj1", app(c(Constant::P1), Term::pair(v("a"), v("b"))), v("a"), ax));
  rs = rs.with(Rule::make("proj2", app(c(Constant::P2), Term::pair(v("a"), v("b"))), v("b"), ax));
  if (config.surjectivePairing) {
    rs = rs.with(Rule::make(
        "surj-pair", Term::pair(app(c(Constant::P1), v("x")), app(c(Constant::P2), v("x"))), v("x"), ax));
  }
  Term pairApp = app(Term::pair(v("x"), v("y")), v("z"));
  if (config.correctedAxioms) {
    rs = rs.with(Rule::make("pair-app", pairApp, Term::pair(app(v("x"), v("z")), app(v("y"), v("z"))), ax));
  } else {
    rs = rs.with(Rule::make("pair-app", pairApp, Term::pair(app(v("x"), v("y")), app(v("x"), v("z"))), ax));
  }
  Term abst = app(app(app(c(Constant::Abst), v("x")), v("y")), v("z"));
  if (config.correctedAxioms) {
    rs = rs.with(Rule::make("abst", abst, app(app(v("x"), Term::kwrap(v("z"))), app(v("y"), v("z"))), ax));
  } else {
    rs = rs.with(Rule::make("abst", abst, app(app(v("x"), Term::kwrap(v("y"))), app(v("y"), v("z"))), ax));
  }
  if (config.eqReflexivity) {
    Rule eq = Rule::make("eq-refl", app(c(Constant::Eq), Term::pair(v("a"), v("b"))), c(Constant::P1), ax);
    eq.identicalVars = std::make_pair(std::string("a"), std::string("b"));
    rs = rs.with(std::move(eq));
  }
  return rs;
}

RuleSet standardRuleSet(const EngineConfig& config) {
  return coreRuleSet(config).with(Rule::make(std::string(kIdentityApplyRule),
                                             Term::apply(identity(), Term::patternVar("x")), Term::patternVar("x"),
                                             Provenance::derived(std::string(kIdentityTheorem))));
}

RuleSet definitionalRuleSet(const EngineConfig& config) {
  return coreRuleSet(config).withDefinition(std::string(kIdentityName), identityDefinition());
}

// ---------------------------------------------------------------------------

namespace {

std::optional<Term> applyAtRoot(const Rule& rule, const Term& t) {
  Substitution s;
  if (!matchInto(rule.lhs, t, s) || !rule.sideConditionHolds(s)) return std::nullopt;
  return instantiate(rule.rhs, s);
}

struct Found {
  Term replaced;
  const Rule* rule;
};

// Leftmost-outermost search; rebuilds the spine on the way back up.
std::optional<Found> stepAt(const Term& t, const RuleSet& rs, Position& pos) {
  for (const auto& r : rs.rules()) {
    if (auto out = applyAtRoot(r, t)) return Found{*out, &r};
  }
  auto descend = [&](Selector s, const Term& c, auto rebuild) -> std::optional<Found> {
    pos.push_back(s);
    auto f = stepAt(c, rs, pos);
    if (f) return Found{rebuild(f->replaced), f->rule};
    pos.pop_back();
    return std::nullopt;
  };
  switch (t.kind()) {
    case Kind::Application: {
      if (auto f = descend(Selector::Function, t.function(),
                           [&](Term n) { return Term::apply(std::move(n), t.argument()); })) {
        return f;
      }
      return descend(Selector::Argument, t.argument(),
                     [&](Term n) { return Term::apply(t.function(), std::move(n)); });
    }
    case Kind::KWrap:
      return descend(Selector::KBody, t.body(), [](Term n) { return Term::kwrap(std::move(n)); });
    case Kind::Pair: {
      if (auto f = descend(Selector::PairLeft, t.left(),
                           [&](Term n) { return Term::pair(std::move(n), t.right()); })) {
        return f;
      }
      return descend(Selector::PairRight, t.right(),
                     [&](Term n) { return Term::pair(t.left(), std::move(n)); });
    }
    default: return std::nullopt;
  }
}

}  // namespace

std::optional<Term> applyRuleAt(const Rule& rule, const Term& t, const Position& p) {
  if (!validPosition(t, p)) return std::nullopt;
  auto out = applyAtRoot(rule, navigate(t, p));
  if (!out) return std::nullopt;
  return replaceAt(t, p, *out);
}

std::optional<TraceStep> rewriteStep(const Term& t, const RuleSet& rs) {
  Position pos;
  auto f = stepAt(t, rs, pos);
  if (!f) return std::nullopt;
  return TraceStep{std::move(pos), f->rule->name, t, f->replaced};
}

NormalizeResult normalize(const Term& t, const RuleSet& rs) { return normalize(t, rs, rs.config().fuel); }

NormalizeResult normalize(const Term& t, const RuleSet& rs, std::size_t fuel) {
  NormalizeResult out{t, {}, false};
  while (true) {
    auto step = rewriteStep(out.result, rs);
    if (!step) return out;
    if (out.trace.size() == fuel) {
      out.exhausted = true;
      return out;
    }
    out.result = step->after;
    out.trace.push_back(std::move(*step));
  }
}

std::string formatTrace(const std::vector<TraceStep>& trace) {
  std::ostringstream os;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << (i + 1) << ' ' << renderPosition(trace[i].position) << ' ' << trace[i].ruleName << " ⊢ "
       << render(trace[i].after) << '\n';
  }
  return os.str();
}

bool replayTrace(const Term& start, const std::vector<TraceStep>& trace, const RuleSet& rs) {
  Term cur = start;
  for (const auto& step : trace) {
    if (!(step.before == cur)) return false;
    const Rule* r = rs.find(step.ruleName);
    if (!r) return false;
    auto out = applyRuleAt(*r, cur, step.position);
    if (!out || !(*out == step.after)) return false;
    cur = *out;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::vector<std::string> ExtEvidence::freshVariables() const {
  std::vector<std::string> out;
  for (const auto& l : levels) {
    if (l.freshVariable) out.push_back(*l.freshVariable);
  }
  return out;
}

ExtResult extEqual(const Term& s, const Term& t, const RuleSet& rs) {
  ExtResult out;
  std::set<std::string> avoid = freeVars(s);
  avoid.merge(freeVars(t));
  Term left = s;
  Term right = t;
  for (std::size_t depth = 0;; ++depth) {
    ExtLevel level{left, right, normalize(left, rs), normalize(right, rs), std::nullopt};
    bool same = level.leftNormal.result == level.rightNormal.result;
    if (same || depth == rs.config().extDepth) {
      out.equal = same;
      out.evidence.levels.push_back(std::move(level));
      return out;
    }
    std::string z = freshVar(avoid);
    avoid.insert(z);
    level.freshVariable = z;
    left = Term::apply(level.leftNormal.result, Term::variable(z));
    right = Term::apply(level.rightNormal.result, Term::variable(z));
    out.evidence.levels.push_back(std::move(level));
  }
}

// ---------------------------------------------------------------------------

namespace {

bool alphaInto(const Term& a, const Term& b, std::map<std::string, std::string>& fwd,
               std::map<std::string, std::string>& bwd) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::PatternVar: {
      auto [f, fi] = fwd.emplace(a.name(), b.name());
      auto [g, gi] = bwd.emplace(b.name(), a.name());
      return f->second == b.name() && g->second == a.name();
    }
    case Kind::Application:
      return alphaInto(a.function(), b.function(), fwd, bwd) && alphaInto(a.argument(), b.argument(), fwd, bwd);
    case Kind::KWrap: return alphaInto(a.body(), b.body(), fwd, bwd);
    case Kind::Pair: return alphaInto(a.left(), b.left(), fwd, bwd) && alphaInto(a.right(), b.right(), fwd, bwd);
    default: return a == b;
  }
}

}  // namespace

bool alphaEquivalent(const Term& l1, const Term& r1, const Term& l2, const Term& r2) {
  std::map<std::string, std::string> fwd, bwd;
  return alphaInto(l1, l2, fwd, bwd) && alphaInto(r1, r2, fwd, bwd);
}

RuleSet registerDerivedRule(const RuleSet& rs, const std::string& name, const Term& lhs, const Term& rhs,
                            const std::string& theoremRef, const CheckedEquations& theorems) {
  auto eqs = theorems.equationsOf(theoremRef);
  if (!eqs) throw RuleRegistrationError("no checked theorem " + theoremRef);
  for (const auto& [l, r] : *eqs) {
    Term pl = patternize(l);
    Term pr = patternize(r);
    if (alphaEquivalent(lhs, rhs, pl, pr) || alphaEquivalent(lhs, rhs, pr, pl)) {
      return rs.with(Rule::make(name, lhs, rhs, Provenance::derived(theoremRef)));
    }
  }
  throw RuleRegistrationError("rule " + name + " is not a statement of theorem " + theoremRef);
}

}  // namespace trc
