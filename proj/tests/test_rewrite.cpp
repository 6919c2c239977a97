#include <doctest.h>

#include <map>
#include <random>

#include "generators.hpp"
#include "trc/rewrite.hpp"

using namespace trc;

namespace {

class FixedEquations : public CheckedEquations {
 public:
  std::map<std::string, std::vector<std::pair<Term, Term>>> table;
  std::optional<std::vector<std::pair<Term, Term>>> equationsOf(const std::string& id) const override {
    auto it = table.find(id);
    if (it == table.end()) return std::nullopt;
    return it->second;
  }
};

FixedEquations checkedSample() {
  FixedEquations eqs;
  eqs.table["2.2c"] = {{parse("P1 (x y)"), parse("P1 x y")}, {parse("P2 (x y)"), parse("P2 x y")}};
  eqs.table["2.1e"] = {{parse("Abst k(x) k(y)"), parse("k(x y)")}};
  return eqs;
}

Term nf(const std::string& text, const RuleSet& rs = standardRuleSet()) { return normalize(parse(text), rs).result; }

}  // namespace

TEST_CASE("core rule set layout") {
  auto rs = coreRuleSet();
  REQUIRE(rs.rules().size() == 7);
  const char* names[] = {"k-apply", "proj1", "proj2", "surj-pair", "pair-app", "abst", "eq-refl"};
  for (std::size_t i = 0; i < 7; ++i) CHECK(rs.rules()[i].name == names[i]);
  CHECK(rs.find("abst")->rhs == parse("$x k($z) ($y $z)"));
  CHECK(rs.find("pair-app")->rhs == parse("<$x $z, $y $z>"));

  EngineConfig printed;
  printed.correctedAxioms = false;
  auto pr = coreRuleSet(printed);
  CHECK(pr.find("abst")->rhs == parse("$x k($y) ($y $z)"));
  CHECK(pr.find("pair-app")->rhs == parse("<$x $y, $x $z>"));

  EngineConfig noSurj;
  noSurj.surjectivePairing = false;
  CHECK(coreRuleSet(noSurj).find("surj-pair") == nullptr);
  CHECK(coreRuleSet(noSurj).rules().size() == 6);
  EngineConfig noEq;
  noEq.eqReflexivity = false;
  CHECK(coreRuleSet(noEq).find("eq-refl") == nullptr);
}

TEST_CASE("no rule rewrites Eq to P2") {
  for (const auto& r : standardRuleSet().rules()) CHECK(r.rhs != Term::constant(Constant::P2));
  CHECK(nf("Eq <x,y>") == parse("Eq <x,y>"));
  CHECK(nf("Eq <x,x>") == parse("P1"));
}

TEST_CASE("rule construction guards") {
  CHECK_THROWS_AS(Rule::make("bad", parse("k($x)"), parse("$y"), Provenance::axiom()), std::invalid_argument);
  CHECK_THROWS_AS(standardRuleSet().with(*coreRuleSet().find("abst")), std::invalid_argument);
}

TEST_CASE("rewriteStep examples") {
  auto rs = standardRuleSet();
  auto s = rewriteStep(parse("k(x) y"), rs);
  REQUIRE(s);
  CHECK(s->position.empty());
  CHECK(s->ruleName == "k-apply");
  CHECK(s->after == parse("x"));
  auto p = rewriteStep(parse("P1 <x,y>"), rs);
  REQUIRE(p);
  CHECK(p->after == parse("x"));
  CHECK_FALSE(rewriteStep(parse("x"), rs));
}

TEST_CASE("leftmost-outermost order") {
  auto s = rewriteStep(parse("k(k(a) b) (k(c) d)"), standardRuleSet());
  REQUIRE(s);
  CHECK(s->position.empty());
  auto inner = rewriteStep(parse("x (k(a) b) (k(c) d)"), standardRuleSet());
  REQUIRE(inner);
  CHECK(renderPosition(inner->position) == "f.a");
}

TEST_CASE("normalize examples") {
  CHECK(nf("Abst Abst x y z") == parse("y (x y z)"));
  CHECK(nf("Abst k(x) y z") == parse("x (y z)"));
  CHECK(nf("I x") == parse("x"));
  CHECK(nf("I x", definitionalRuleSet()) == parse("x"));
}

TEST_CASE("self-application under the M hypothesis exhausts the fuel") {
  auto rs = standardRuleSet().with(
      Rule::make("hyp:M", parse("M $x"), parse("$x $x"), Provenance::hypothesis("2.6")));
  Term t = parse("Abst k(Eq) <M, k(P2)>");
  auto r = normalize(Term::apply(t, t), rs, 200);
  CHECK(r.exhausted);
  CHECK(r.trace.size() == 200);
}

TEST_CASE("extEqual examples") {
  auto rs = standardRuleSet();
  CHECK(extEqual(parse("Abst I"), parse("k(I)"), rs).equal);
  auto a = extEqual(parse("Abst (Abst (Abst x))"), parse("Abst x"), rs);
  CHECK(a.equal);
  CHECK(a.evidence.freshVariables().size() >= 1);
  CHECK_FALSE(extEqual(parse("P1"), parse("P2"), rs).equal);
  CHECK(extEqual(parse("Abst (Abst k(P1))"), parse("k(P1)"), rs).equal);
}

TEST_CASE("derived rules need a matching checked equation") {
  auto eqs = checkedSample();
  auto rs = registerDerivedRule(standardRuleSet(), "proj1-app", parse("P1 $x $y"), parse("P1 ($x $y)"), "2.2c", eqs);
  CHECK(nf("P1 k(x) z", rs) == parse("P1 x"));
  CHECK(nf("P1 k(x) z") != parse("P1 x"));
  CHECK(rs.find("proj1-app")->provenance.kind == Provenance::Kind::Derived);

  CHECK_NOTHROW(registerDerivedRule(standardRuleSet(), "abst-kk", parse("Abst k($a) k($b)"), parse("k($a $b)"),
                                    "2.1e", eqs));
  CHECK_THROWS_AS(registerDerivedRule(standardRuleSet(), "bogus", parse("k($x) $y"), parse("$y"), "2.1e", eqs),
                  RuleRegistrationError);
  CHECK_THROWS_AS(registerDerivedRule(standardRuleSet(), "ghost", parse("P1 $x $y"), parse("P1 ($x $y)"),
                                      "9.9", eqs),
                  RuleRegistrationError);
}

TEST_CASE("alpha equivalence of rule statements") {
  CHECK(alphaEquivalent(parse("$a $b"), parse("$b"), parse("$x $y"), parse("$y")));
  CHECK_FALSE(alphaEquivalent(parse("$a $b"), parse("$b"), parse("$x $y"), parse("$x")));
  CHECK_FALSE(alphaEquivalent(parse("$a $b"), parse("$a"), parse("$x $x"), parse("$x")));
}

TEST_CASE("traces replay and are deterministic") {
  auto rs = standardRuleSet();
  Term t = parse("Abst Abst (Abst k(P1)) <x, k(y)> (I z)");
  auto a = normalize(t, rs);
  auto b = normalize(t, rs);
  CHECK(formatTrace(a.trace) == formatTrace(b.trace));
  CHECK(replayTrace(t, a.trace, rs));
  if (!a.trace.empty()) {
    auto broken = a.trace;
    broken.front().after = parse("x");
    CHECK_FALSE(replayTrace(t, broken, rs));
  }
}

TEST_CASE("corrected and printed axioms disagree on Abst P1") {
  auto eqs = checkedSample();
  auto withProjections = [&](const EngineConfig& cfg) {
    auto rs = registerDerivedRule(standardRuleSet(cfg), "proj1-app", parse("P1 $x $y"), parse("P1 ($x $y)"), "2.2c",
                                  eqs);
    return registerDerivedRule(rs, "proj2-app", parse("P2 $x $y"), parse("P2 ($x $y)"), "2.2c", eqs);
  };
  CHECK(extEqual(parse("Abst P1"), parse("k(P1)"), withProjections({})).equal);
  CHECK(normalize(parse("Abst P1 x y"), withProjections({})).result == parse("P1 y"));
  EngineConfig printed;
  printed.correctedAxioms = false;
  CHECK(normalize(parse("Abst P1 x y"), withProjections(printed)).result != parse("P1 y"));
  CHECK_FALSE(extEqual(parse("Abst P1"), parse("k(P1)"), withProjections(printed)).equal);
}

TEST_CASE("engine settings file") {
  EngineConfig c;
  c.set("fuel", "12");
  c.set("corrected-axioms", "off");
  CHECK(c.fuel == 12);
  CHECK_FALSE(c.correctedAxioms);
  CHECK_THROWS(c.set("speed", "3"));
}

TEST_CASE("property: rewriting is stable under substitution") {
  std::mt19937 rng(91);
  auto rs = standardRuleSet();
  int fired = 0;
  for (int i = 0; i < 400; ++i) {
    Term t = testing::randomTerm(rng, 5);
    auto step = rewriteStep(t, rs);
    if (!step) continue;
    const Rule* rule = rs.find(step->ruleName);
    REQUIRE(rule);
    Substitution sigma{{"x", testing::randomTerm(rng, 2)}, {"y", testing::randomTerm(rng, 2)}};
    auto moved = applyRuleAt(*rule, substitute(t, sigma), step->position);
    REQUIRE(moved);
    CHECK(*moved == substitute(step->after, sigma));
    ++fired;
  }
  CHECK(fired > 50);
}

TEST_CASE("property: Equal verdicts carry replayable evidence") {
  std::mt19937 rng(3);
  auto rs = standardRuleSet();
  int equal = 0;
  for (int i = 0; i < 200; ++i) {
    Term s = testing::randomTerm(rng, 4);
    Term t = normalize(s, rs).result;
    auto r = extEqual(s, t, rs);
    if (!r.equal) continue;
    ++equal;
    for (const auto& level : r.evidence.levels) {
      CHECK(replayTrace(level.left, level.leftNormal.trace, rs));
      CHECK(replayTrace(level.right, level.rightNormal.trace, rs));
    }
    const auto& last = r.evidence.levels.back();
    CHECK(last.leftNormal.result == last.rightNormal.result);
  }
  CHECK(equal > 100);
}

TEST_CASE("property: the fixed-point refuter shape") {
  std::mt19937 rng(12);
  auto rs = standardRuleSet();
  for (int i = 0; i < 100; ++i) {
    Term t = testing::randomClosed(rng, 4, false);
    Term r = normalize(Term::apply(parse("<Eq, k(P2)>"), t), rs).result;
    REQUIRE(r.is(Kind::Pair));
    CHECK(r.right() == parse("P2"));
    CHECK(r.left().is(Kind::Application));
    CHECK(r.left().function().isConstant(Constant::Eq));
  }
}
