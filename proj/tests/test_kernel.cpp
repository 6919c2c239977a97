#include <doctest.h>

#include "trc/corpus.hpp"
#include "trc/kernel.hpp"

using namespace trc;

namespace {

const std::string kDir = TRC_CORPUS_DIR;

// Registry holding the whole corpus.
const Registry& corpusRegistry() {
  static const Registry registry = [] {
    Registry r;
    auto run = runCorpus(kDir, CorpusIndex::load(kDir), standardRuleSet(), r);
    REQUIRE(run.pass);
    return r;
  }();
  return registry;
}

ProofScript one(const std::string& text) {
  auto scripts = parseScripts(text, "inline");
  REQUIRE(scripts.size() == 1);
  return scripts.front();
}

CheckReport check(const std::string& text, const Registry& registry = corpusRegistry()) {
  return checkScript(one(text), registry, standardRuleSet());
}

CheckReport checkFile(const std::string& name) {
  return checkScript(parseScripts(readFile(kDir + "/" + name), name).front(), corpusRegistry(), standardRuleSet());
}

const char* kMScript = R"(
theorem 2.6 "no M" : false {
  uses 2.1d
  hypothesis M : M $x = $x $x
  let t := Abst k(Eq) <M, k(P2)>
  let s := t t
  have fix : s = Eq <s, P2> by chain [
    s, t t, Abst k(Eq) <M, k(P2)> t, Eq (<M, k(P2)> t), Eq <M t, k(P2) t>,
    Eq <M t, P2>, Eq <t t, P2>, Eq <s, P2>
  ]
  have differ : s != Eq <s, P2> by theorem 2.4a [x := s]
  have distinct : P1 != P2 by theorem VIII
  qed by falsum fix DIFF
})";

std::string mScript(const std::string& diff) {
  std::string s = kMScript;
  s.replace(s.find("DIFF"), 4, diff);
  return s;
}

}  // namespace

TEST_CASE("the self-application refutation checks") {
  auto r = check(mScript("differ"));
  CHECK(r.line() == "THEOREM 2.6 PASS");
  CHECK(r.dependencies.count("2.4a"));
  CHECK(r.dependencies.count("2.1d"));
  CHECK(checkFile("17-2.6.trc").pass);
}

TEST_CASE("a mismatched final contradiction is rejected at falsum") {
  auto r = check(mScript("distinct"));
  CHECK_FALSE(r.pass);
  CHECK(r.failStep == "4");
  CHECK(r.reason.find("falsum") != std::string::npos);
}

TEST_CASE("the Eq <x,P2> lemma checks by cases") {
  auto r = checkFile("13-2.4a.trc");
  CHECK(r.pass);
  CHECK(r.line() == "THEOREM 2.4a PASS");
}

TEST_CASE("the J refutation reduces to T") {
  auto r = checkFile("39-3.J.trc");
  CHECK(r.pass);
  CHECK(r.dependencies.count("3.T"));
}

TEST_CASE("chain links must be single rule instances") {
  auto ok = check(R"(theorem x1 "" : Abst k(x) y z = x (y z) { qed by chain [Abst k(x) y z, k(x) k(z) (y z), x (y z)] })");
  CHECK(ok.pass);
  auto skip = check(R"(theorem x1 "" : Abst k(x) y z = x (y z) { qed by chain [Abst k(x) y z, x (y z)] })");
  CHECK_FALSE(skip.pass);
  CHECK(skip.reason.find("link 1") != std::string::npos);
  auto wrong = check(R"(theorem x1 "" : P1 = P2 { qed by chain [P1, P2] })");
  CHECK_FALSE(wrong.pass);
  auto byNormal = check(R"(theorem x1 "" : P1 = P2 { qed by normalize })");
  CHECK_FALSE(byNormal.pass);
}

TEST_CASE("ext needs fresh variables") {
  auto ok = check(R"(theorem x1 "" : Abst I = k(I) { qed by ext x y by normalize })");
  CHECK(ok.pass);
  auto stale = check(R"(theorem x1 "" : Abst k(x) = k(x) { qed by ext x by normalize })");
  CHECK_FALSE(stale.pass);
  CHECK(stale.reason.find("not fresh") != std::string::npos);
}

TEST_CASE("normalize steps respect their fuel") {
  auto r = check(R"(theorem x1 "" : false {
    hypothesis M : M $x = $x $x
    let t := Abst k(Eq) <M, k(P2)>
    have loop : t t = P1 by normalize fuel 50
    have distinct : P1 != P2 by theorem VIII
    qed by falsum loop distinct
  })");
  CHECK_FALSE(r.pass);
  CHECK(r.failStep == "1");
  CHECK(r.reason.find("fuel exhausted") != std::string::npos);
}

TEST_CASE("cases with identical arguments needs only the p1 branch") {
  auto same = check(R"(theorem x1 "" : Eq <y,y> = P1 {
    qed by cases Eq <y,y> as e, ev { p1 => { qed by chain [Eq <y,y>, P1] } }
  })");
  CHECK(same.pass);
  auto distinct = check(R"(theorem x1 "" : Eq <y,z> = Eq <y,z> {
    qed by cases Eq <y,z> as e, ev { p1 => { qed by normalize } }
  })");
  CHECK_FALSE(distinct.pass);
  CHECK(distinct.reason.find("missing p2") != std::string::npos);
}

TEST_CASE("swapped case branches are rejected") {
  std::string text = readFile(kDir + "/13-2.4a.trc");
  auto p1 = text.find("p1 =>");
  auto p2 = text.find("p2 =>");
  text.replace(p2, 2, "p1");
  text.replace(p1, 2, "p2");
  auto r = checkScript(parseScripts(text).front(), corpusRegistry(), standardRuleSet());
  CHECK_FALSE(r.pass);
}

TEST_CASE("unregistered theorems cannot be cited") {
  Registry empty;
  auto r = check(mScript("differ"), empty);
  CHECK_FALSE(r.pass);
  CHECK(r.reason.find("dependency-missing") != std::string::npos);
}

TEST_CASE("registry guards") {
  Registry registry;
  CHECK(registry.find("VIII"));
  auto lemma = one(R"(theorem L1 "" : Abst k(x) y z = x (y z) { qed by normalize })");
  auto report = checkScript(lemma, registry, standardRuleSet());
  REQUIRE(report.pass);

  CheckReport failing = report;
  failing.pass = false;
  try {
    registry.registerTheorem(recordFor(lemma, failing), failing);
    FAIL("no error");
  } catch (const RegistryError& e) {
    CHECK(e.kind == RegistryError::Kind::NotPassing);
  }

  registry.registerTheorem(recordFor(lemma, report), report);
  CHECK_NOTHROW(registry.registerTheorem(recordFor(lemma, report), report));

  auto other = one(R"(theorem L1 "" : k(x) y = x { qed by normalize })");
  auto otherReport = checkScript(other, registry, standardRuleSet());
  REQUIRE(otherReport.pass);
  try {
    registry.registerTheorem(recordFor(other, otherReport), otherReport);
    FAIL("no error");
  } catch (const RegistryError& e) {
    CHECK(e.kind == RegistryError::Kind::IdConflict);
  }

  auto dependent = one(R"(theorem L2 "" : Abst k(u) v w = u (v w) { qed by theorem L1 [x := u, y := v, z := w] })");
  auto depReport = checkScript(dependent, registry, standardRuleSet());
  REQUIRE(depReport.pass);
  Registry fresh;
  try {
    fresh.registerTheorem(recordFor(dependent, depReport), depReport);
    FAIL("no error");
  } catch (const RegistryError& e) {
    CHECK(e.kind == RegistryError::Kind::DependencyMissing);
  }
}

TEST_CASE("instantiateTheorem") {
  const auto& r = corpusRegistry();
  CHECK(r.instantiateTheorem("2.4c", {{"x", parse("x x")}}) == Judgment::notEqual(parse("<Eq (x x), P2>"), parse("x x")));
  CHECK(r.instantiateTheorem("2.4a", {{"x", parse("s")}}) == Judgment::notEqual(parse("Eq <s,P2>"), parse("s")));
  CHECK(r.instantiateTheorem("VIII", {}) == Judgment::notEqual(parse("P1"), parse("P2")));
  try {
    r.instantiateTheorem("2.4a", {{"q", parse("s")}});
    FAIL("no error");
  } catch (const RegistryError& e) {
    CHECK(e.kind == RegistryError::Kind::MalformedSubstitution);
  }
  try {
    r.instantiateTheorem("9.9", {});
    FAIL("no error");
  } catch (const RegistryError& e) {
    CHECK(e.kind == RegistryError::Kind::UnknownTheorem);
  }
}

TEST_CASE("stored proofs replay against the axiom base") {
  const auto& r = corpusRegistry();
  for (const auto& rec : r.records()) {
    CAPTURE(rec.id);
    CHECK(replay(rec, r, standardRuleSet()).pass);
  }
  EngineConfig printed;
  printed.correctedAxioms = false;
  CHECK_FALSE(replay(*r.find("2.3b"), r, standardRuleSet(printed)).pass);
  CHECK_FALSE(replay(*r.find("2.2a"), r, standardRuleSet(printed)).pass);
}

TEST_CASE("check traces are deterministic") {
  auto a = checkFile("19-2.8a.trc");
  auto b = checkFile("19-2.8a.trc");
  CHECK(a.pass);
  CHECK(a.trace == b.trace);
  CHECK_FALSE(a.trace.empty());
}

TEST_CASE("script syntax errors are located") {
  try {
    parseScripts("theorem a \"\" : P1 = P1 { qed by magic }");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 1);
    CHECK_FALSE(e.expected.empty());
  }
}
