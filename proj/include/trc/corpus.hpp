// The proof corpus: an ordered index of scripts and combinator specs, and the
// harness that checks all of them against one registry.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trc/kernel.hpp"
#include "trc/stratify.hpp"

namespace trc {

enum class EntryKind { Equality, Refutation, CompileSuccess, CompileFailure };

std::string_view entryKindName(EntryKind k);

/// One line of `corpus/index`:
///   ID KIND FILE [spec=NAME] [DEP ...] [=> EXPECTED-TERM]
/// For compile entries FILE is `specs.trc#NAME`. A refutation entry may name
/// the combinator spec it refutes; the harness then also requires that the
/// compiler rejects that spec.
struct CorpusEntry {
  std::string id;
  EntryKind kind = EntryKind::Equality;
  std::string file;
  std::vector<std::string> dependencies;
  std::optional<std::string> spec;
  std::optional<Term> expected;
  int line = 0;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusIndex {
  std::vector<CorpusEntry> entries;

  /// Throws CorpusError on malformed lines, duplicate ids, or a dependency
  /// that does not appear earlier in the file (which also rules out cycles).
  static CorpusIndex parse(std::string_view text);
  static CorpusIndex load(const std::string& dir);

  const CorpusEntry* find(const std::string& id) const;
};

struct CorpusOptions {
  EngineConfig engine;
  bool trace = false;
  unsigned jobs = 1;
};

struct CorpusRun {
  std::vector<CheckReport> reports;  // index order
  bool pass = false;
  std::vector<std::string> notes;

  /// Report lines (with traces if requested), notes, coverage table, summary.
  std::string format(const CorpusIndex& index, bool trace) const;
};

/// Checks every entry in dependency order, registering passing theorems in
/// `registry`. Entries with a failed dependency are reported as blocked.
CorpusRun runCorpus(const std::string& dir, const CorpusIndex& index, const RuleSet& rules, Registry& registry,
                    const CorpusOptions& options = {});

/// Convenience: loads the index, builds the rule set and a fresh registry.
CorpusRun runCorpus(const std::string& dir, const CorpusOptions& options = {});

/// `base` plus the projection-application rules and the optimizer's
/// simplifications, each registered as a derived rule citing a theorem in
/// `registry`; rules whose theorem is absent are skipped.
RuleSet checkedRuleSet(const RuleSet& base, const Registry& registry);

/// One line per entry: id, status, statement, dependencies, title.
std::string listTheorems(const std::string& dir, const CorpusIndex& index, const CorpusRun& run);

/// Reads a whole file; throws CorpusError if it cannot be opened.
std::string readFile(const std::string& path);

}  // namespace trc
