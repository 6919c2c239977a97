// Trusted checker for equational and refutational TRC proofs, plus the
// theorem registry.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "trc/rewrite.hpp"
#include "trc/term.hpp"

namespace trc {

struct Judgment {
  enum class Kind { Equal, NotEqual, Falsum };
  Kind kind = Kind::Falsum;
  Term lhs = Term::constant(Constant::P1);
  Term rhs = Term::constant(Constant::P1);

  static Judgment equal(Term s, Term t) { return {Kind::Equal, std::move(s), std::move(t)}; }
  static Judgment notEqual(Term s, Term t) { return {Kind::NotEqual, std::move(s), std::move(t)}; }
  static Judgment falsum() { return {}; }

  bool operator==(const Judgment& o) const {
    return kind == o.kind && (kind == Kind::Falsum || (lhs == o.lhs && rhs == o.rhs));
  }
  /// Equal up to swapping the sides of = and !=.
  bool sameUpToSymmetry(const Judgment& o) const;
  Judgment substituted(const Substitution& s) const;
  std::set<std::string> freeVariables() const;
};

std::string render(const Judgment& j);

// ---------------------------------------------------------------------------
// Script syntax tree

/// Deep-copying owner, so scripts stay regular values.
template <typename T>
class Box {
 public:
  Box(T value) : p_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& o) : p_(std::make_unique<T>(*o.p_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& o) {
    p_ = std::make_unique<T>(*o.p_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  T& operator*() { return *p_; }
  const T& operator*() const { return *p_; }
  T* operator->() { return p_.get(); }
  const T* operator->() const { return p_.get(); }

 private:
  std::unique_ptr<T> p_;
};

struct Step;
struct Justification;

struct Block {
  std::vector<Step> steps;
};

struct ChainLink {
  Term term;
  std::optional<std::string> citation;
};

using Bindings = std::vector<std::pair<std::string, Term>>;

struct ChainProof {
  std::vector<ChainLink> links;
};
struct NormalizeProof {
  std::optional<std::size_t> fuel;
};
struct ExtProof {
  std::vector<std::string> variables;  // explicit fresh variables
  std::size_t arity = 0;               // used when `variables` is empty
  std::optional<Box<Justification>> inner;
};
struct TheoremProof {
  std::string id;
  Bindings bindings;
};
struct RefuteProof {
  std::string id;
  Bindings constants;
  std::vector<std::string> facts;
};
struct FalsumProof {
  std::string equality;
  std::string disequality;
};
struct KInjectProof {
  std::string fact;
};
struct ApplyProof {
  std::vector<Term> arguments;
  std::string leftFact;
  std::string rightFact;
  std::string disequality;
};
struct ContraProof {
  std::string label;
  Block block;
};
struct CasesProof {
  Term left;
  Term right;
  std::string relationLabel;
  std::string valueLabel;
  std::optional<Block> equalBranch;
  std::optional<Block> distinctBranch;
};

struct Justification {
  std::variant<ChainProof, NormalizeProof, ExtProof, TheoremProof, RefuteProof, FalsumProof, KInjectProof,
               ApplyProof, ContraProof, CasesProof>
      value;
};

struct Step {
  bool qed = false;
  std::string label;             // empty for qed
  std::optional<Judgment> goal;  // absent for qed
  Justification justification;
  int line = 0;
};

struct HypothesisEquation {
  std::string constant;
  Term lhs;  // pattern
  Term rhs;  // pattern
};

struct Definition {
  std::string name;
  Term body;
};

struct ProofScript {
  std::string id;
  std::string title;
  std::vector<Judgment> statements;
  std::vector<std::string> uses;
  std::vector<HypothesisEquation> hypotheses;
  std::vector<Definition> definitions;
  Block body;
  std::string file;

  bool isNonexistence() const { return !hypotheses.empty(); }
};

/// Parses every `theorem ... { ... }` block in `text`.
std::vector<ProofScript> parseScripts(std::string_view text, const std::string& file = "");

// ---------------------------------------------------------------------------
// Checking

struct CheckReport {
  std::string id;
  bool pass = false;
  std::string failStep;  // dotted step index of the first rejected step
  std::string reason;
  std::size_t steps = 0;
  double wallSeconds = 0;
  std::set<std::string> dependencies;
  std::vector<std::string> trace;  // one line per checked step

  /// `THEOREM <id> PASS` or `THEOREM <id> FAIL <step#> <reason>`.
  std::string line() const;
};

struct TheoremRecord {
  std::string id;
  std::string title;
  std::vector<Judgment> statements;
  std::vector<HypothesisEquation> hypotheses;
  std::set<std::string> dependencies;
  std::string file;
  std::optional<ProofScript> script;  // absent only for axioms
};

class RegistryError : public std::runtime_error {
 public:
  enum class Kind { DependencyMissing, IdConflict, NotPassing, UnknownTheorem, MalformedSubstitution };
  RegistryError(Kind kind, const std::string& message) : std::runtime_error(message), kind(kind) {}
  Kind kind;
};

/// Append-only store of checked results. Seeded with axiom VIII (P1 != P2).
class Registry : public CheckedEquations {
 public:
  Registry();

  const TheoremRecord* find(const std::string& id) const;
  const std::vector<TheoremRecord>& records() const { return records_; }

  void registerTheorem(TheoremRecord record, const CheckReport& report);

  /// The theorem's single statement with variables substituted. Throws
  /// RegistryError for unknown ids, Falsum statements, or bindings of
  /// variables the statement does not have.
  Judgment instantiateTheorem(const std::string& id, const Substitution& s, std::size_t statement = 0) const;

  std::optional<std::vector<std::pair<Term, Term>>> equationsOf(const std::string& id) const override;

 private:
  std::vector<TheoremRecord> records_;
  std::map<std::string, std::size_t> index_;
};

TheoremRecord recordFor(const ProofScript& script, const CheckReport& report);

/// `rules` supplies the axioms and any registered derived rules; I is added
/// if missing.
CheckReport checkScript(const ProofScript& script, const Registry& registry, const RuleSet& rules);

/// Re-checks a stored script against the given axiom base.
CheckReport replay(const TheoremRecord& record, const Registry& registry, const RuleSet& rules);

}  // namespace trc
