// Stratification (integer type assignment) and bracket abstraction into
// closed TRC terms.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "trc/rewrite.hpp"
#include "trc/term.hpp"

namespace trc {

/// One difference constraint `type(left) = type(right) + offset`.
struct TypeConstraint {
  std::string left;
  std::string right;
  int offset = 0;
};

struct StratifyResult {
  /// Variable types, shifted per connected component so the minimum is 0.
  std::map<std::string, int> assignment;
  /// Present iff unsatisfiable: a cycle of constraints, each oriented so the
  /// cycle closes; the offsets sum to a nonzero value.
  std::optional<std::vector<TypeConstraint>> conflict;
  std::vector<TypeConstraint> constraints;

  bool satisfiable() const { return !conflict.has_value(); }
  int conflictOffset() const;
};

StratifyResult stratify(const Term& t);

/// `z:0 y:1 x:2`, ordered by type then name.
std::string formatAssignment(const std::map<std::string, int>& assignment);

// ---------------------------------------------------------------------------

using LevelMap = std::map<Position, int>;

class NotAbstractable : public std::runtime_error {
 public:
  enum class Reason { VariableAtNonzeroLevel, NegativeLevel };
  NotAbstractable(std::string variable, Position position, Reason reason, int level);

  std::string variable;
  Position position;
  Reason reason;
  int level;
};

std::string_view reasonName(NotAbstractable::Reason r);

/// Levels of every subterm, root 0: +1 into function position, 0 into
/// argument and pair components, -1 into k-bodies. Throws NotAbstractable
/// unless every occurrence of `x` is at level 0 and no subterm containing
/// `x` is negative.
LevelMap abstractionLevels(const std::string& x, const Term& t);

struct AbstractOptions {
  bool etaContract = false;
};

/// A term without `x` such that (result s) = t[s/x] for every s.
Term abstract(const std::string& x, const Term& t, const AbstractOptions& opts = {});

// ---------------------------------------------------------------------------

struct CombinatorSpec {
  std::string name;
  std::vector<std::string> parameters;
  Term body;
};

/// `NAME x1 ... xn = term`; parameters are variables regardless of case.
CombinatorSpec parseCombinatorSpec(std::string_view line);
/// One spec per non-blank, non-comment line.
std::vector<CombinatorSpec> parseCombinatorSpecs(std::string_view text);
std::string renderCombinatorSpec(const CombinatorSpec& spec);

class CompileError : public std::runtime_error {
 public:
  CompileError(std::string combinator, std::string parameter, std::optional<NotAbstractable> cause,
               const std::string& message);
  std::string combinator;
  std::string parameter;
  std::optional<NotAbstractable> cause;
};

struct CompileOptions {
  bool optimize = false;
  AbstractOptions abstraction;
  EngineConfig engine;
};

/// Abstracts parameters last to first and self-tests the result by
/// extensional comparison with the body; never returns an unverified term.
Term compileCombinator(const CombinatorSpec& spec, const CompileOptions& opts = {});

// ---------------------------------------------------------------------------

struct Simplification {
  std::string name;
  std::string theorem;  // id of the corpus theorem that justifies it
  Term lhs;
  Term rhs;
};

/// Size-decreasing simplifications, each an instance of a checked equality.
const std::vector<Simplification>& simplifications();

/// Exhaustive leftmost-outermost application of simplifications().
Term optimize(const Term& t);

}  // namespace trc
