// Term language of TRC: variables, the four constants, defined names,
// application, k-wrapping and pairing. Terms are immutable and shared.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trc {

enum class Kind : std::uint8_t {
  Variable,
  Constant,
  Defined,
  PatternVar,  // `$name`; only meaningful inside rule patterns
  Application,
  KWrap,
  Pair,
};

enum class Constant : std::uint8_t { Abst, Eq, P1, P2 };

std::string_view constantName(Constant c);

class Term {
 public:
  /// The constant P1; exists so aggregates holding terms are default-constructible.
  Term();

  static Term variable(std::string name);
  static Term constant(Constant c);
  static Term defined(std::string name);
  static Term patternVar(std::string name);
  static Term apply(Term function, Term argument);
  static Term kwrap(Term body);
  static Term pair(Term left, Term right);

  /// Left-associated application chain: apply(apply(head, a0), a1)...
  static Term applyAll(Term head, const std::vector<Term>& args);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool isConstant(Constant c) const {
    return node_->kind == Kind::Constant && node_->constant == c;
  }

  Constant constantValue() const { return node_->constant; }
  const std::string& name() const { return node_->name; }

  // Children. function/left share slot 0, argument/right slot 1, k-body slot 0.
  const Term& function() const { return node_->children[0]; }
  const Term& argument() const { return node_->children[1]; }
  const Term& body() const { return node_->children[0]; }
  const Term& left() const { return node_->children[0]; }
  const Term& right() const { return node_->children[1]; }

  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  /// Head of an application spine and its arguments in order.
  Term head() const;
  std::vector<Term> spineArguments() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  /// Total order for use in ordered containers; not semantically meaningful.
  friend bool operator<(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    Constant constant = Constant::Abst;
    std::string name;
    std::vector<Term> children;
    std::size_t size = 1;
    std::size_t hash = 0;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Node node);

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Positions

enum class Selector : std::uint8_t { Function, Argument, KBody, PairLeft, PairRight };

using Position = std::vector<Selector>;

/// Dotted rendering: f, a, k, l, r joined by '.'; the root is "ε".
std::string renderPosition(const Position& p);

class InvalidPosition : public std::runtime_error {
 public:
  InvalidPosition(std::size_t index, Selector selector);
  std::size_t index;
  Selector selector;
};

const Term& navigate(const Term& t, const Position& p);
Term replaceAt(const Term& t, const Position& p, const Term& replacement);
bool validPosition(const Term& t, const Position& p);

/// All positions of t in preorder (leftmost-outermost first).
std::vector<Position> positions(const Term& t);

// ---------------------------------------------------------------------------
// Substitution and matching

/// Keys are bare names. A binding applies to Variable nodes in substitute()
/// and to PatternVar nodes in instantiate().
using Substitution = std::map<std::string, Term>;

Term substitute(const Term& t, const Substitution& s);
Term instantiate(const Term& pattern, const Substitution& s);

/// Replaces Defined names by terms (used to instantiate hypothesis constants).
Term substituteDefined(const Term& t, const Substitution& s);

/// First-order matching of pattern variables. Repeated pattern variables
/// must match syntactically identical subterms.
std::optional<Substitution> matchPattern(const Term& pattern, const Term& t);

/// Matching that extends an existing substitution; leaves `s` unspecified on failure.
bool matchInto(const Term& pattern, const Term& t, Substitution& s);

/// Turns every Variable not in `keep` into a PatternVar of the same name.
Term patternize(const Term& t, const std::set<std::string>& keep = {});

// ---------------------------------------------------------------------------
// Names

std::set<std::string> freeVars(const Term& t);
std::set<std::string> patternVars(const Term& t);
std::set<std::string> definedNames(const Term& t);
bool occurs(const std::string& variable, const Term& t);

/// First name of the scheme v0, v1, v2, ... not in `avoid`.
std::string freshVar(const std::set<std::string>& avoid);

/// The derived identity I, a Defined name bound to <P1,P2>.
inline constexpr std::string_view kIdentityName = "I";
Term identity();
Term identityDefinition();

// ---------------------------------------------------------------------------
// Concrete syntax

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, std::string message, std::vector<std::string> expected);
  int line;
  int column;
  std::string message;
  std::vector<std::string> expected;
};

/// Identifier classification while parsing. Declared defined names and
/// declared variables win; otherwise an identifier starting with an
/// uppercase letter is a Defined name and anything else is a Variable.
struct ParseContext {
  std::set<std::string> defined{std::string(kIdentityName)};
  std::set<std::string> variables;
  bool allowPatternVars = true;

  bool isDefined(const std::string& name) const;
};

Term parse(std::string_view text, const ParseContext& ctx = {});
std::string render(const Term& t);

std::ostream& operator<<(std::ostream& os, const Term& t);

}  // namespace trc

template <>
struct std::hash<trc::Term> {
  std::size_t operator()(const trc::Term& t) const noexcept { return t.hash(); }
};
