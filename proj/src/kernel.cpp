#include "trc/kernel.hpp"

#include <chrono>
#include <sstream>

namespace trc {

bool Judgment::sameUpToSymmetry(const Judgment& o) const {
  if (*this == o) return true;
  return kind == o.kind && kind != Kind::Falsum && lhs == o.rhs && rhs == o.lhs;
}

Judgment Judgment::substituted(const Substitution& s) const {
  if (kind == Kind::Falsum) return *this;
  return {kind, substitute(lhs, s), substitute(rhs, s)};
}

std::set<std::string> Judgment::freeVariables() const {
  if (kind == Kind::Falsum) return {};
  auto out = freeVars(lhs);
  out.merge(freeVars(rhs));
  return out;
}

std::string render(const Judgment& j) {
  switch (j.kind) {
    case Judgment::Kind::Equal: return render(j.lhs) + " = " + render(j.rhs);
    case Judgment::Kind::NotEqual: return render(j.lhs) + " != " + render(j.rhs);
    case Judgment::Kind::Falsum: return "false";
  }
  return "?";
}

std::string CheckReport::line() const {
  if (pass) return "THEOREM " + id + " PASS";
  return "THEOREM " + id + " FAIL " + (failStep.empty() ? "0" : failStep) + " " + reason;
}

// ---------------------------------------------------------------------------
// Registry

Registry::Registry() {
  TheoremRecord viii;
  viii.id = "VIII";
  viii.title = "the projections are distinct";
  viii.statements = {Judgment::notEqual(Term::constant(Constant::P1), Term::constant(Constant::P2))};
  index_[viii.id] = 0;
  records_.push_back(std::move(viii));
}

const TheoremRecord* Registry::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &records_[it->second];
}

void Registry::registerTheorem(TheoremRecord record, const CheckReport& report) {
  if (!report.pass || report.id != record.id) {
    throw RegistryError(RegistryError::Kind::NotPassing, "theorem " + record.id + " has no passing check report");
  }
  if (const auto* existing = find(record.id)) {
    if (existing->statements.size() == record.statements.size()) {
      bool same = true;
      for (std::size_t i = 0; i < record.statements.size(); ++i) {
        same = same && existing->statements[i] == record.statements[i];
      }
      if (same) return;
    }
    throw RegistryError(RegistryError::Kind::IdConflict,
                        "theorem id " + record.id + " is already registered with a different statement");
  }
  for (const auto& d : record.dependencies) {
    if (!find(d)) {
      throw RegistryError(RegistryError::Kind::DependencyMissing,
                          "theorem " + record.id + " depends on unregistered " + d);
    }
  }
  index_[record.id] = records_.size();
  records_.push_back(std::move(record));
}

Judgment Registry::instantiateTheorem(const std::string& id, const Substitution& s, std::size_t statement) const {
  const auto* r = find(id);
  if (!r) throw RegistryError(RegistryError::Kind::UnknownTheorem, "unknown theorem " + id);
  if (statement >= r->statements.size()) {
    throw RegistryError(RegistryError::Kind::MalformedSubstitution, "theorem " + id + " has no statement " +
                                                                       std::to_string(statement));
  }
  const auto& j = r->statements[statement];
  if (j.kind == Judgment::Kind::Falsum) {
    throw RegistryError(RegistryError::Kind::MalformedSubstitution,
                        "theorem " + id + " is a nonexistence result; it cannot be instantiated");
  }
  auto vars = j.freeVariables();
  for (const auto& [name, term] : s) {
    if (!vars.count(name)) {
      throw RegistryError(RegistryError::Kind::MalformedSubstitution,
                          "theorem " + id + " has no variable " + name);
    }
    if (!patternVars(term).empty()) {
      throw RegistryError(RegistryError::Kind::MalformedSubstitution, "binding for " + name + " has pattern variables");
    }
  }
  return j.substituted(s);
}

std::optional<std::vector<std::pair<Term, Term>>> Registry::equationsOf(const std::string& id) const {
  const auto* r = find(id);
  if (!r) return std::nullopt;
  std::vector<std::pair<Term, Term>> out;
  for (const auto& j : r->statements) {
    if (j.kind == Judgment::Kind::Equal) out.emplace_back(j.lhs, j.rhs);
  }
  return out;
}

TheoremRecord recordFor(const ProofScript& script, const CheckReport& report) {
  return TheoremRecord{script.id,       script.title, script.statements, script.hypotheses,
                       report.dependencies, script.file, script};
}

// ---------------------------------------------------------------------------
// Checker

namespace {

struct StepFailure {
  std::string reason;
};

struct Fact {
  std::string label;
  Judgment judgment;
  std::set<std::string> fixed;
};

struct Scope {
  const Scope* parent = nullptr;
  std::vector<Fact> facts;
  std::set<std::string> fixed;

  const Fact* lookup(const std::string& label) const {
    for (auto it = facts.rbegin(); it != facts.rend(); ++it) {
      if (it->label == label) return &*it;
    }
    return parent ? parent->lookup(label) : nullptr;
  }

  template <typename Fn>
  void forEachFact(const Fn& fn) const {
    if (parent) parent->forEachFact(fn);
    for (const auto& f : facts) fn(f);
  }
};

struct Candidate {
  std::string name;
  Term lhs;
  Term rhs;
  const Rule* rule = nullptr;  // side condition source, if any
};

Candidate fromEquation(std::string name, const Judgment& j, const std::set<std::string>& keep) {
  return {std::move(name), patternize(j.lhs, keep), patternize(j.rhs, keep), nullptr};
}

// Positions where a and b may differ by a single replacement: the path from
// the root down to the deepest node at which they still differ.
std::vector<Position> differencePath(const Term& a, const Term& b) {
  std::vector<Position> out;
  Position cur;
  const Term* x = &a;
  const Term* y = &b;
  while (true) {
    out.push_back(cur);
    if (x->kind() != y->kind()) return out;
    const Term* nx = nullptr;
    const Term* ny = nullptr;
    Selector sel{};
    int differing = 0;
    auto consider = [&](Selector s, const Term& cx, const Term& cy) {
      if (!(cx == cy)) {
        ++differing;
        nx = &cx;
        ny = &cy;
        sel = s;
      }
    };
    switch (x->kind()) {
      case Kind::Application:
        consider(Selector::Function, x->function(), y->function());
        consider(Selector::Argument, x->argument(), y->argument());
        break;
      case Kind::KWrap: consider(Selector::KBody, x->body(), y->body()); break;
      case Kind::Pair:
        consider(Selector::PairLeft, x->left(), y->left());
        consider(Selector::PairRight, x->right(), y->right());
        break;
      default: return out;
    }
    if (differing != 1) return out;
    cur.push_back(sel);
    x = nx;
    y = ny;
  }
}

bool jointMatch(const Candidate& c, const Term& from, const Term& to, bool reversed) {
  Substitution s;
  const Term& l = reversed ? c.rhs : c.lhs;
  const Term& r = reversed ? c.lhs : c.rhs;
  if (!matchInto(l, from, s) || !matchInto(r, to, s)) return false;
  return !c.rule || c.rule->sideConditionHolds(s);
}

class Checker {
 public:
  Checker(const ProofScript& script, const Registry& registry, const RuleSet& rules)
      : script_(script), registry_(registry) {
    // Derived rules are only usable once their theorem is registered.
    working_ = RuleSet(rules.config());
    for (const auto& r : rules.rules()) {
      if (r.provenance.kind == Provenance::Kind::Derived && !registry.find(r.provenance.reference)) continue;
      working_ = working_.with(r);
    }
    if (!working_.find("def:" + std::string(kIdentityName))) {
      working_ = working_.withDefinition(std::string(kIdentityName), identityDefinition());
    }
  }

  CheckReport run() {
    auto start = std::chrono::steady_clock::now();
    report_.id = script_.id;
    try {
      prepare();
      checkTopLevel();
      report_.pass = true;
    } catch (const StepFailure& f) {
      report_.pass = false;
      report_.failStep = currentStep_.empty() ? "0" : currentStep_;
      report_.reason = f.reason;
    }
    report_.wallSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report_;
  }

 private:
  [[noreturn]] static void fail(const std::string& reason) { throw StepFailure{reason}; }

  const TheoremRecord& requireTheorem(const std::string& id) {
    const auto* r = registry_.find(id);
    if (!r) fail("dependency-missing: theorem " + id + " is not registered");
    if (r->script) report_.dependencies.insert(id);
    return *r;
  }

  void prepare() {
    std::set<std::string> allowed{std::string(kIdentityName)};
    for (const auto& st : script_.statements) {
      if (st.kind == Judgment::Kind::Falsum) continue;
      for (const auto& n : definedNames(st.lhs)) {
        if (!allowed.count(n)) fail("statement mentions script-local constant " + n);
      }
      for (const auto& n : definedNames(st.rhs)) {
        if (!allowed.count(n)) fail("statement mentions script-local constant " + n);
      }
    }
    if (script_.isNonexistence() &&
        !(script_.statements.size() == 1 && script_.statements[0].kind == Judgment::Kind::Falsum)) {
      fail("a script with hypotheses must state exactly `false`");
    }

    std::set<std::string> declared = allowed;
    std::map<std::string, int> hypCount;
    for (const auto& h : script_.hypotheses) {
      declared.insert(h.constant);
      if (!(h.lhs.head().is(Kind::Defined) && h.lhs.head().name() == h.constant)) {
        fail("hypothesis equation for " + h.constant + " must be headed by it");
      }
      for (const auto& n : definedNames(h.lhs)) {
        if (!declared.count(n)) fail("hypothesis mentions undeclared constant " + n);
      }
      for (const auto& n : definedNames(h.rhs)) {
        if (!declared.count(n)) fail("hypothesis mentions undeclared constant " + n);
      }
      int n = ++hypCount[h.constant];
      std::string name = "hyp:" + h.constant + (n > 1 ? "#" + std::to_string(n) : "");
      try {
        working_ = working_.with(Rule::make(name, h.lhs, h.rhs, Provenance::hypothesis(script_.id)));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    for (const auto& d : script_.definitions) {
      for (const auto& n : definedNames(d.body)) {
        if (!declared.count(n)) fail("definition of " + d.name + " mentions undeclared constant " + n);
      }
      if (declared.count(d.name)) fail("name " + d.name + " is defined twice");
      declared.insert(d.name);
      try {
        working_ = working_.withDefinition(d.name, d.body);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    declared_ = declared;
    for (const auto& r : working_.rules()) candidates_.push_back({r.name, r.lhs, r.rhs, &r});
    for (const auto& id : script_.uses) {
      const auto& rec = requireTheorem(id);
      for (const auto& st : rec.statements) {
        if (st.kind == Judgment::Kind::Equal) candidates_.push_back(fromEquation(id, st, {}));
      }
    }
  }

  void checkDeclared(const Judgment& j) {
    if (j.kind == Judgment::Kind::Falsum) return;
    for (const Term* t : {&j.lhs, &j.rhs}) {
      for (const auto& n : definedNames(*t)) {
        if (!declared_.count(n)) fail("undeclared constant " + n);
      }
    }
  }

  void checkTopLevel() {
    Scope top;
    std::size_t proven = 0;
    for (std::size_t i = 0; i < script_.body.steps.size(); ++i) {
      const Step& st = script_.body.steps[i];
      currentStep_ = std::to_string(i + 1);
      if (st.qed) {
        if (proven == script_.statements.size()) fail("qed with no statement left to prove");
        Judgment goal = script_.statements[proven];
        checkStep(st, goal, top, currentStep_);
        ++proven;
      } else {
        checkStep(st, *st.goal, top, currentStep_);
      }
    }
    currentStep_ = std::to_string(script_.body.steps.size() + 1);
    if (proven != script_.statements.size()) {
      fail("statement " + std::to_string(proven + 1) + " (" + render(script_.statements[proven]) +
           ") is never established");
    }
  }

  void checkStep(const Step& st, const Judgment& goal, Scope& scope, const std::string& number) {
    currentStep_ = number;
    checkDeclared(goal);
    checkJustification(st.justification, goal, scope, number);
    currentStep_ = number;
    ++report_.steps;
    report_.trace.push_back("  STEP " + number + " " + (st.qed ? std::string("qed") : "have " + st.label) +
                            " : " + render(goal) + " by " + kindName(st.justification));
    if (!st.qed) scope.facts.push_back({st.label, goal, allFixed(scope)});
  }

  void checkBlock(const Block& b, const Judgment& goal, Scope& scope, const std::string& number) {
    for (std::size_t i = 0; i < b.steps.size(); ++i) {
      const Step& st = b.steps[i];
      std::string n = number + "." + std::to_string(i + 1);
      if (st.qed) {
        if (i + 1 != b.steps.size()) {
          currentStep_ = n;
          fail("qed must be the last step of a block");
        }
        checkStep(st, goal, scope, n);
        return;
      }
      checkStep(st, *st.goal, scope, n);
    }
    currentStep_ = number;
    fail("block does not establish its goal " + render(goal));
  }

  static std::set<std::string> allFixed(const Scope& scope) {
    std::set<std::string> out;
    for (const Scope* s = &scope; s; s = s->parent) out.insert(s->fixed.begin(), s->fixed.end());
    return out;
  }

  static std::string kindName(const Justification& j) {
    static const char* names[] = {"chain", "normalize", "ext", "theorem", "refute",
                                  "falsum", "kinject", "apply", "contra", "cases"};
    return names[j.value.index()];
  }

  const Fact& fact(const Scope& scope, const std::string& label) {
    const Fact* f = scope.lookup(label);
    if (!f) fail("unknown fact " + label);
    return *f;
  }

  static void requireKind(const Judgment& goal, Judgment::Kind k, const char* what) {
    if (goal.kind != k) fail(std::string(what) + " cannot prove " + render(goal));
  }

  void checkJustification(const Justification& j, const Judgment& goal, Scope& scope, const std::string& number) {
    std::visit([&](const auto& p) { check(p, goal, scope, number); }, j.value);
  }

  // --- chain -------------------------------------------------------------

  void check(const ChainProof& p, const Judgment& goal, Scope& scope, const std::string&) {
    requireKind(goal, Judgment::Kind::Equal, "chain");
    if (p.links.empty()) fail("empty chain");
    if (!(p.links.front().term == goal.lhs)) {
      fail("chain starts at " + render(p.links.front().term) + ", goal starts at " + render(goal.lhs));
    }
    if (!(p.links.back().term == goal.rhs)) {
      fail("chain ends at " + render(p.links.back().term) + ", goal ends at " + render(goal.rhs));
    }
    std::vector<Candidate> cands = candidates_;
    auto fixedNow = allFixed(scope);
    scope.forEachFact([&](const Fact& f) {
      if (f.judgment.kind == Judgment::Kind::Equal) cands.push_back(fromEquation(f.label, f.judgment, f.fixed));
    });
    for (std::size_t i = 1; i < p.links.size(); ++i) {
      const Term& a = p.links[i - 1].term;
      const Term& b = p.links[i].term;
      if (!linkHolds(a, b, cands, p.links[i].citation)) {
        std::ostringstream os;
        os << "link " << i << ": no single rule instance rewrites " << render(a) << " to " << render(b)
           << "; tried " << cands.size() << " equations at positions {";
        auto ps = a == b ? std::vector<Position>{} : differencePath(a, b);
        for (std::size_t k = 0; k < ps.size(); ++k) os << (k ? "," : "") << renderPosition(ps[k]);
        os << "} in both directions";
        if (p.links[i].citation) os << " (citation " << *p.links[i].citation << ")";
        fail(os.str());
      }
    }
  }

  bool linkHolds(const Term& a, const Term& b, const std::vector<Candidate>& cands,
                 const std::optional<std::string>& citation) {
    if (a == b) return false;
    for (const auto& pos : differencePath(a, b)) {
      const Term& x = navigate(a, pos);
      const Term& y = navigate(b, pos);
      for (const auto& c : cands) {
        if (citation && c.name != *citation) continue;
        if (jointMatch(c, x, y, false) || jointMatch(c, x, y, true)) {
          if (c.rule) noteRuleUse(*c.rule);
          return true;
        }
      }
    }
    return false;
  }

  void noteRuleUse(const Rule& r) {
    if (r.provenance.kind == Provenance::Kind::Derived) report_.dependencies.insert(r.provenance.reference);
  }

  // --- normalize / ext ------------------------------------------------------

  void check(const NormalizeProof& p, const Judgment& goal, Scope&, const std::string&) {
    requireKind(goal, Judgment::Kind::Equal, "normalize");
    commonNormalForm(goal.lhs, goal.rhs, p.fuel.value_or(working_.config().fuel));
  }

  void commonNormalForm(const Term& s, const Term& t, std::size_t fuel) {
    auto ns = normalize(s, working_, fuel);
    auto nt = normalize(t, working_, fuel);
    for (const auto* trace : {&ns.trace, &nt.trace}) {
      for (const auto& step : *trace) {
        if (const Rule* r = working_.find(step.ruleName)) noteRuleUse(*r);
      }
    }
    if (!(ns.result == nt.result)) {
      fail("no common normal form: " + render(ns.result) + (ns.exhausted ? " (fuel exhausted)" : "") + " vs " +
           render(nt.result) + (nt.exhausted ? " (fuel exhausted)" : ""));
    }
  }

  void check(const ExtProof& p, const Judgment& goal, Scope& scope, const std::string& number) {
    requireKind(goal, Judgment::Kind::Equal, "ext");
    auto avoid = goal.freeVariables();
    auto fixed = allFixed(scope);
    std::vector<Term> vars;
    if (p.variables.empty()) {
      if (p.arity == 0) fail("ext needs at least one argument");
      avoid.insert(fixed.begin(), fixed.end());
      for (std::size_t i = 0; i < p.arity; ++i) {
        std::string v = freshVar(avoid);
        avoid.insert(v);
        vars.push_back(Term::variable(v));
      }
    } else {
      std::set<std::string> seen;
      for (const auto& v : p.variables) {
        if (avoid.count(v) || fixed.count(v) || !seen.insert(v).second) {
          fail("ext variable " + v + " is not fresh");
        }
        vars.push_back(Term::variable(v));
      }
    }
    Judgment inner = Judgment::equal(Term::applyAll(goal.lhs, vars), Term::applyAll(goal.rhs, vars));
    if (!p.inner) {
      commonNormalForm(inner.lhs, inner.rhs, working_.config().fuel);
      return;
    }
    checkJustification(**p.inner, inner, scope, number);
  }

  // --- theorems ---------------------------------------------------------------

  Substitution toSubstitution(const Bindings& b) {
    Substitution s;
    for (const auto& [name, term] : b) {
      if (!s.emplace(name, term).second) fail("variable " + name + " bound twice");
    }
    return s;
  }

  void check(const TheoremProof& p, const Judgment& goal, Scope&, const std::string&) {
    const auto& rec = requireTheorem(p.id);
    Substitution s = toSubstitution(p.bindings);
    std::set<std::string> vars;
    for (const auto& st : rec.statements) vars.merge(st.freeVariables());
    for (const auto& [name, _] : s) {
      if (!vars.count(name)) fail("malformed substitution: theorem " + p.id + " has no variable " + name);
    }
    for (const auto& st : rec.statements) {
      if (st.kind == Judgment::Kind::Falsum) continue;
      if (st.substituted(s).sameUpToSymmetry(goal)) return;
    }
    fail("no statement of theorem " + p.id + " instantiates to " + render(goal));
  }

  void check(const RefuteProof& p, const Judgment& goal, Scope& scope, const std::string&) {
    requireKind(goal, Judgment::Kind::Falsum, "refute");
    const auto& rec = requireTheorem(p.id);
    if (rec.hypotheses.empty()) fail("theorem " + p.id + " is not a nonexistence result");
    Substitution images;
    for (const auto& [name, term] : p.constants) {
      if (!images.emplace(name, term).second) fail("constant " + name + " mapped twice");
    }
    std::set<std::string> constants;
    for (const auto& h : rec.hypotheses) constants.insert(h.constant);
    for (const auto& [name, _] : images) {
      if (!constants.count(name)) fail("theorem " + p.id + " has no hypothesis constant " + name);
    }
    std::set<std::string> imageVars;
    for (const auto& c : constants) {
      auto it = images.find(c);
      if (it == images.end()) fail("hypothesis constant " + c + " of theorem " + p.id + " is not instantiated");
      checkDeclared(Judgment::equal(it->second, it->second));
      imageVars.merge(freeVars(it->second));
    }
    std::vector<const Fact*> facts;
    for (const auto& l : p.facts) facts.push_back(&fact(scope, l));
    for (const auto& h : rec.hypotheses) {
      Term l = substituteDefined(h.lhs, images);
      Term r = substituteDefined(h.rhs, images);
      bool discharged = false;
      for (const Fact* f : facts) {
        if (f->judgment.kind != Judgment::Kind::Equal) continue;
        Substitution s;
        if (!matchInto(l, f->judgment.lhs, s) || !matchInto(r, f->judgment.rhs, s)) continue;
        std::set<std::string> seen;
        bool generic = true;
        for (const auto& [pv, t] : s) {
          generic = generic && t.is(Kind::Variable) && !f->fixed.count(t.name()) && !imageVars.count(t.name()) &&
                    seen.insert(t.name()).second;
        }
        if (generic) {
          discharged = true;
          break;
        }
      }
      if (!discharged) {
        fail("no listed fact establishes " + render(l) + " = " + render(r) + " for arbitrary arguments");
      }
    }
  }

  // --- disequality ------------------------------------------------------------

  void check(const FalsumProof& p, const Judgment& goal, Scope& scope, const std::string&) {
    requireKind(goal, Judgment::Kind::Falsum, "falsum");
    const Fact& e = fact(scope, p.equality);
    const Fact& n = fact(scope, p.disequality);
    if (e.judgment.kind != Judgment::Kind::Equal) fail(p.equality + " is not an equality");
    if (n.judgment.kind != Judgment::Kind::NotEqual) fail(p.disequality + " is not a disequality");
    Judgment flipped = Judgment::notEqual(e.judgment.lhs, e.judgment.rhs);
    if (!flipped.sameUpToSymmetry(n.judgment)) {
      fail("falsum: " + render(e.judgment) + " and " + render(n.judgment) + " do not contradict");
    }
  }

  void check(const KInjectProof& p, const Judgment& goal, Scope& scope, const std::string&) {
    requireKind(goal, Judgment::Kind::Equal, "kinject");
    const Fact& f = fact(scope, p.fact);
    const auto& j = f.judgment;
    if (j.kind != Judgment::Kind::Equal || !j.lhs.is(Kind::KWrap) || !j.rhs.is(Kind::KWrap)) {
      fail("kinject needs an equality k(s) = k(t)");
    }
    if (!(j.lhs.body() == goal.lhs && j.rhs.body() == goal.rhs)) {
      fail("kinject of " + render(j) + " does not give " + render(goal));
    }
  }

  void check(const ApplyProof& p, const Judgment& goal, Scope& scope, const std::string&) {
    requireKind(goal, Judgment::Kind::NotEqual, "apply");
    const auto& l = fact(scope, p.leftFact).judgment;
    const auto& r = fact(scope, p.rightFact).judgment;
    const auto& n = fact(scope, p.disequality).judgment;
    if (l.kind != Judgment::Kind::Equal || r.kind != Judgment::Kind::Equal || n.kind != Judgment::Kind::NotEqual) {
      fail("apply needs two equalities and a disequality");
    }
    if (!(l.lhs == Term::applyAll(goal.lhs, p.arguments))) fail(p.leftFact + " does not start at the applied lhs");
    if (!(r.lhs == Term::applyAll(goal.rhs, p.arguments))) fail(p.rightFact + " does not start at the applied rhs");
    if (!Judgment::notEqual(l.rhs, r.rhs).sameUpToSymmetry(n)) {
      fail(p.disequality + " does not separate " + render(l.rhs) + " and " + render(r.rhs));
    }
  }

  void check(const ContraProof& p, const Judgment& goal, Scope& scope, const std::string& number) {
    requireKind(goal, Judgment::Kind::NotEqual, "contra");
    Scope inner{&scope, {}, goal.freeVariables()};
    inner.facts.push_back({p.label, Judgment::equal(goal.lhs, goal.rhs), allFixed(inner)});
    checkBlock(p.block, Judgment::falsum(), inner, number);
  }

  void check(const CasesProof& p, const Judgment& goal, Scope& scope, const std::string& number) {
    checkDeclared(Judgment::equal(p.left, p.right));
    std::set<std::string> fixed = freeVars(p.left);
    fixed.merge(freeVars(p.right));
    Term eq = Term::apply(Term::constant(Constant::Eq), Term::pair(p.left, p.right));
    {
      if (!p.equalBranch) fail("cases: missing p1 branch");
      Scope inner{&scope, {}, fixed};
      auto f = allFixed(inner);
      inner.facts.push_back({p.relationLabel, Judgment::equal(p.left, p.right), f});
      inner.facts.push_back({p.valueLabel, Judgment::equal(eq, Term::constant(Constant::P1)), f});
      checkBlock(*p.equalBranch, goal, inner, number + ".p1");
    }
    if (!p.distinctBranch) {
      if (p.left == p.right) return;
      currentStep_ = number;
      fail("cases: missing p2 branch");
    }
    Scope inner{&scope, {}, fixed};
    auto f = allFixed(inner);
    inner.facts.push_back({p.relationLabel, Judgment::notEqual(p.left, p.right), f});
    inner.facts.push_back({p.valueLabel, Judgment::equal(eq, Term::constant(Constant::P2)), f});
    checkBlock(*p.distinctBranch, goal, inner, number + ".p2");
  }

  const ProofScript& script_;
  const Registry& registry_;
  RuleSet working_;
  std::vector<Candidate> candidates_;
  std::set<std::string> declared_;
  CheckReport report_;
  std::string currentStep_;
};

}  // namespace

CheckReport checkScript(const ProofScript& script, const Registry& registry, const RuleSet& rules) {
  return Checker(script, registry, rules).run();
}

CheckReport replay(const TheoremRecord& record, const Registry& registry, const RuleSet& rules) {
  if (!record.script) {
    CheckReport r;
    r.id = record.id;
    r.pass = true;
    return r;
  }
  return checkScript(*record.script, registry, rules);
}

}  // namespace trc
