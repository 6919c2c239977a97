#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include <unistd.h>

#include "trc/corpus.hpp"

using namespace trc;
namespace fs = std::filesystem;

namespace {

const std::string kDir = TRC_CORPUS_DIR;

// A scratch copy of the corpus; removed on destruction.
struct CorpusCopy {
  fs::path dir;
  explicit CorpusCopy(const std::string& tag) {
    dir = fs::temp_directory_path() / ("trc-corpus-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::copy(kDir, dir);
  }
  ~CorpusCopy() { fs::remove_all(dir); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }
};

const CheckReport& reportFor(const CorpusRun& run, const CorpusIndex& index, const std::string& id) {
  for (std::size_t i = 0; i < index.entries.size(); ++i) {
    if (index.entries[i].id == id) return run.reports[i];
  }
  FAIL("no entry " << id);
  throw;
}

}  // namespace

TEST_CASE("the index lists exactly the expected entries in order") {
  const std::vector<std::string> expected = {
      "I-identity", "2.1a", "2.1b", "2.1c", "2.1d", "2.1e", "2.2a", "2.2c", "2.2b", "2.3a", "2.3b",
      "2.3c",       "2.4a", "2.4b", "2.4c", "2.5",  "2.6",  "2.7",  "2.8a", "2.8b", "2.9a", "2.9b",
      "3.M",        "3.K1", "3.K",  "3.L",  "3.O",  "3.U",  "3.W",  "3.O2", "3.M2", "3.S",  "3.O1",
      "3.T",        "3.C",  "3.G",  "3.Q1", "3.Q3", "3.J",  "3.B",  "3.D",  "3.R",  "3.V",  "3.Q",
      "3.M1",       "3.H1", "3.W2", "3.H",  "3.F",  "3.W1", "3.L1", "3.W3", "compile-b", "compile-d", "compile-c"};
  auto index = CorpusIndex::load(kDir);
  std::vector<std::string> ids;
  for (const auto& e : index.entries) ids.push_back(e.id);
  CHECK(ids == expected);

  std::set<std::string> refuted;
  for (const auto& e : index.entries) {
    if (e.kind == EntryKind::Refutation && e.spec) refuted.insert(*e.spec);
  }
  auto specs = parseCombinatorSpecs(readFile(kDir + "/specs.trc"));
  for (const auto& s : specs) {
    bool stratified = s.name == "b" || s.name == "c" || s.name == "d";
    CHECK_MESSAGE(refuted.count(s.name) == (stratified ? 0u : 1u), s.name);
  }
}

TEST_CASE("index syntax") {
  auto idx = CorpusIndex::parse("# c\nA equality a.trc\nB refutation b.trc spec=X A\nC compile-success s.trc#c => Abst Abst\n");
  REQUIRE(idx.entries.size() == 3);
  CHECK(idx.entries[1].dependencies == std::vector<std::string>{"A"});
  CHECK(idx.entries[1].spec == std::optional<std::string>("X"));
  CHECK(idx.entries[2].expected == parse("Abst Abst"));
  CHECK_THROWS_AS(CorpusIndex::parse("A equality a.trc B\nB equality b.trc\n"), CorpusError);
  CHECK_THROWS_AS(CorpusIndex::parse("A equality a.trc\nA equality b.trc\n"), CorpusError);
  CHECK_THROWS_AS(CorpusIndex::parse("A lemma a.trc\n"), CorpusError);
}

TEST_CASE("the whole corpus passes, sequentially and in parallel") {
  auto index = CorpusIndex::load(kDir);
  CorpusOptions opts;
  auto seq = runCorpus(kDir, opts);
  CHECK(seq.pass);
  opts.jobs = 4;
  auto par = runCorpus(kDir, opts);
  CHECK(par.pass);
  CHECK(seq.format(index, false) == par.format(index, false));
  for (const auto& r : seq.reports) CHECK_MESSAGE(r.pass, r.line());
}

TEST_CASE("a broken lemma blocks its dependents") {
  CorpusCopy copy("blocked");
  std::string text = readFile(kDir + "/13-2.4a.trc");
  auto p1 = text.find("p1 =>");
  auto p2 = text.find("p2 =>");
  text.replace(p2, 2, "p1");
  text.replace(p1, 2, "p2");
  copy.write("13-2.4a.trc", text);

  auto index = CorpusIndex::load(copy.dir.string());
  auto run = runCorpus(copy.dir.string());
  CHECK_FALSE(run.pass);
  CHECK_FALSE(reportFor(run, index, "2.4a").pass);

  std::set<std::string> down{"2.4a"};
  for (const auto& e : index.entries) {
    for (const auto& d : e.dependencies) {
      if (down.count(d)) down.insert(e.id);
    }
  }
  CHECK(down.count("2.6"));
  CHECK(down.count("2.9b"));
  CHECK(down.count("3.M"));
  CHECK(down.count("3.F"));
  for (std::size_t i = 0; i < index.entries.size(); ++i) {
    const auto& id = index.entries[i].id;
    const auto& r = run.reports[i];
    CAPTURE(id);
    if (id == "2.4a") continue;
    if (down.count(id)) {
      CHECK_FALSE(r.pass);
      CHECK(r.reason.find("blocked") != std::string::npos);
    } else {
      CHECK(r.pass);
    }
  }
  std::string summary = "SUMMARY 55 entries, " + std::to_string(55 - down.size()) + " pass, 1 fail, " +
                        std::to_string(down.size() - 1) + " blocked";
  CHECK(run.format(index, false).find(summary) != std::string::npos);
}

TEST_CASE("index dependencies must match the scripts") {
  CorpusCopy copy("deps");
  std::string index = readFile(kDir + "/index");
  auto at = index.find("2.6         refutation       17-2.6.trc           2.1d 2.4a");
  REQUIRE(at != std::string::npos);
  index.replace(at, std::string("2.6         refutation       17-2.6.trc           2.1d 2.4a").size(),
                "2.6 refutation 17-2.6.trc 2.4a");
  copy.write("index", index);
  auto idx = CorpusIndex::load(copy.dir.string());
  auto run = runCorpus(copy.dir.string());
  CHECK_FALSE(reportFor(run, idx, "2.6").pass);
}

TEST_CASE("printed axioms break the chains that need the corrected forms") {
  auto index = CorpusIndex::load(kDir);
  CorpusOptions opts;
  opts.engine.correctedAxioms = false;
  auto run = runCorpus(kDir, opts);
  CHECK_FALSE(run.pass);
  CHECK_FALSE(reportFor(run, index, "2.2a").pass);
  CHECK_FALSE(reportFor(run, index, "2.3b").pass);
  CHECK_FALSE(reportFor(run, index, "2.3c").pass);
  CHECK(reportFor(run, index, "2.4a").pass);
  REQUIRE(run.notes.size() == 1);
  CHECK(run.notes.front().find("erratum mode") != std::string::npos);
}

TEST_CASE("theorem listing") {
  auto index = CorpusIndex::load(kDir);
  auto run = runCorpus(kDir);
  std::string listing = listTheorems(kDir, index, run);
  CHECK(listing.find("3.R  PASS  K = R k(I) P1 <R,P1> R => false via 2.8a") != std::string::npos);
  CHECK(listing.find("3.O1  PASS  S = Abst k(Abst) (Abst k(O1) I) => false via 3.S") != std::string::npos);
  CHECK(listing.find("2.5  PASS  <Eq,k(P2)> x != x  [deps: 2.4c]") != std::string::npos);
  CHECK(listing.find("compile-b  PASS  b x y z = y (x y z) compiles to Abst Abst") != std::string::npos);
}

TEST_CASE("checked rule set") {
  Registry registry;
  auto index = CorpusIndex::load(kDir);
  REQUIRE(runCorpus(kDir, index, standardRuleSet(), registry).pass);
  auto rs = checkedRuleSet(standardRuleSet(), registry);
  CHECK(rs.find("proj1-app"));
  CHECK(rs.find("abst-k-k"));
  CHECK(extEqual(parse("Abst P1"), parse("k(P1)"), rs).equal);
  CHECK(extEqual(parse("P1 (x y)"), parse("P1 x y"), rs).equal);
  Registry bare;
  CHECK(checkedRuleSet(standardRuleSet(), bare).rules().size() == standardRuleSet().rules().size());
}
