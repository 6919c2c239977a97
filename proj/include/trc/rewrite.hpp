// Axioms as oriented rules, fuel-bounded leftmost-outermost normalization
// with traces, and equality up to extensionality.
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trc/term.hpp"

namespace trc {

struct Provenance {
  enum class Kind { Axiom, Derived, Hypothesis, Definition };
  Kind kind = Kind::Axiom;
  std::string reference;  // theorem id, script id or defined name

  static Provenance axiom() { return {Kind::Axiom, {}}; }
  static Provenance derived(std::string theorem) { return {Kind::Derived, std::move(theorem)}; }
  static Provenance hypothesis(std::string script) { return {Kind::Hypothesis, std::move(script)}; }
  static Provenance definition(std::string name) { return {Kind::Definition, std::move(name)}; }
};

struct Rule {
  std::string name;
  Term lhs;
  Term rhs;
  Provenance provenance;
  /// Only the Eq rule uses this: the two named pattern variables must be
  /// bound to syntactically identical terms.
  std::optional<std::pair<std::string, std::string>> identicalVars;

  /// Rejects rules whose rhs mentions pattern variables absent from lhs.
  static Rule make(std::string name, Term lhs, Term rhs, Provenance provenance);

  bool sideConditionHolds(const Substitution& s) const;
};

struct EngineConfig {
  bool correctedAxioms = true;
  bool surjectivePairing = true;
  bool eqReflexivity = true;
  std::size_t fuel = 10000;
  std::size_t extDepth = 4;

  /// Reads `key = value` lines (fuel, ext-depth, corrected-axioms,
  /// surjective-pairing, eq-refl); `#` and `--` start comments.
  static EngineConfig fromFile(const std::string& path, EngineConfig base);
  static EngineConfig fromFile(const std::string& path);
  void set(const std::string& key, const std::string& value);
};

class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(EngineConfig config) : config_(config) {}

  const std::vector<Rule>& rules() const { return rules_; }
  const EngineConfig& config() const { return config_; }
  void setConfig(const EngineConfig& c) { config_ = c; }

  /// Appends a rule; throws std::invalid_argument on a duplicate name.
  RuleSet with(Rule rule) const;
  /// Definition rule `NAME -> body` for a Defined name.
  RuleSet withDefinition(const std::string& name, const Term& body) const;

  const Rule* find(const std::string& name) const;

 private:
  std::vector<Rule> rules_;
  EngineConfig config_;
};

RuleSet coreRuleSet(const EngineConfig& config = {});

inline constexpr std::string_view kIdentityTheorem = "I-identity";
inline constexpr std::string_view kIdentityApplyRule = "I-apply";

/// Core rules plus `I $x -> $x`, derived from the identity theorem. I itself
/// is never unfolded, so <P1,P2> a b cannot arise from I a b.
RuleSet standardRuleSet(const EngineConfig& config = {});

/// Core rules plus the definition `I -> <P1,P2>`; the base for proof checking.
RuleSet definitionalRuleSet(const EngineConfig& config = {});

struct TraceStep {
  Position position;
  std::string ruleName;
  Term before;
  Term after;
};

struct NormalizeResult {
  Term result;
  std::vector<TraceStep> trace;
  bool exhausted = false;
};

/// Applies `rule` at `p` if it matches there.
std::optional<Term> applyRuleAt(const Rule& rule, const Term& t, const Position& p);

std::optional<TraceStep> rewriteStep(const Term& t, const RuleSet& rs);
NormalizeResult normalize(const Term& t, const RuleSet& rs);
NormalizeResult normalize(const Term& t, const RuleSet& rs, std::size_t fuel);

/// `<step#> <position> <rule> ⊢ <after>` per line.
std::string formatTrace(const std::vector<TraceStep>& trace);

/// Replays a trace against the rule set; true iff every step is a valid
/// rule instance and the steps chain from `start`.
bool replayTrace(const Term& start, const std::vector<TraceStep>& trace, const RuleSet& rs);

struct ExtLevel {
  Term left;
  Term right;
  NormalizeResult leftNormal;
  NormalizeResult rightNormal;
  std::optional<std::string> freshVariable;  // applied to reach the next level
};

struct ExtEvidence {
  std::vector<ExtLevel> levels;
  std::vector<std::string> freshVariables() const;
};

struct ExtResult {
  bool equal = false;
  ExtEvidence evidence;
};

/// Sound but incomplete: `equal` is a genuine equality; otherwise unknown.
ExtResult extEqual(const Term& s, const Term& t, const RuleSet& rs);

/// Source of kernel-checked equations by theorem id.
class CheckedEquations {
 public:
  virtual ~CheckedEquations() = default;
  /// Equality statements of the theorem, free variables as plain Variables;
  /// nullopt if no such checked theorem exists.
  virtual std::optional<std::vector<std::pair<Term, Term>>> equationsOf(const std::string& id) const = 0;
};

class RuleRegistrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adds `lhs -> rhs` as a derived rule citing `theoremRef`. The equation must
/// be one of the theorem's statements, in either orientation, up to renaming
/// of variables.
RuleSet registerDerivedRule(const RuleSet& rs, const std::string& name, const Term& lhs, const Term& rhs,
                            const std::string& theoremRef, const CheckedEquations& theorems);

/// Equality of (l1,r1) and (l2,r2) up to a bijective renaming of pattern variables.
bool alphaEquivalent(const Term& l1, const Term& r1, const Term& l2, const Term& r2);

}  // namespace trc
