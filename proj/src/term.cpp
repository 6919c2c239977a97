#include "trc/term.hpp"

#include <cctype>
#include <functional>
#include <ostream>
#include <sstream>

#include "trc/lexer.hpp"

namespace trc {

std::string_view constantName(Constant c) {
  switch (c) {
    case Constant::Abst: return "Abst";
    case Constant::Eq: return "Eq";
    case Constant::P1: return "P1";
    case Constant::P2: return "P2";
  }
  return "?";
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::make(Node node) {
  std::size_t h = mix(static_cast<std::size_t>(node.kind) * 131 + 7,
                      static_cast<std::size_t>(node.constant));
  h = mix(h, std::hash<std::string>{}(node.name));
  node.size = 1;
  for (const auto& c : node.children) {
    h = mix(h, c.hash());
    node.size += c.size();
  }
  node.hash = h;
  return Term(std::make_shared<const Node>(std::move(node)));
}

Term Term::variable(std::string name) { return make({Kind::Variable, Constant::Abst, std::move(name), {}}); }
Term::Term() {
  static const Term p1 = constant(Constant::P1);
  node_ = p1.node_;
}

Term Term::constant(Constant c) { return make({Kind::Constant, c, {}, {}}); }
Term Term::defined(std::string name) { return make({Kind::Defined, Constant::Abst, std::move(name), {}}); }
Term Term::patternVar(std::string name) {
  return make({Kind::PatternVar, Constant::Abst, std::move(name), {}});
}
Term Term::apply(Term function, Term argument) {
  return make({Kind::Application, Constant::Abst, {}, {std::move(function), std::move(argument)}});
}
Term Term::kwrap(Term body) { return make({Kind::KWrap, Constant::Abst, {}, {std::move(body)}}); }
Term Term::pair(Term left, Term right) {
  return make({Kind::Pair, Constant::Abst, {}, {std::move(left), std::move(right)}});
}

Term Term::applyAll(Term head, const std::vector<Term>& args) {
  for (const auto& a : args) head = apply(std::move(head), a);
  return head;
}

Term Term::head() const {
  const Term* t = this;
  while (t->is(Kind::Application)) t = &t->function();
  return *t;
}

std::vector<Term> Term::spineArguments() const {
  std::vector<Term> args;
  const Term* t = this;
  while (t->is(Kind::Application)) {
    args.push_back(t->argument());
    t = &t->function();
  }
  return {args.rbegin(), args.rend()};
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size || x.constant != y.constant ||
      x.name != y.name) {
    return false;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

bool operator<(const Term& a, const Term& b) {
  if (a.hash() != b.hash()) return a.hash() < b.hash();
  if (a == b) return false;
  return render(a) < render(b);
}

// ---------------------------------------------------------------------------

std::string renderPosition(const Position& p) {
  if (p.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    switch (p[i]) {
      case Selector::Function: out += 'f'; break;
      case Selector::Argument: out += 'a'; break;
      case Selector::KBody: out += 'k'; break;
      case Selector::PairLeft: out += 'l'; break;
      case Selector::PairRight: out += 'r'; break;
    }
  }
  return out;
}

namespace {

const char* selectorName(Selector s) {
  switch (s) {
    case Selector::Function: return "function";
    case Selector::Argument: return "argument";
    case Selector::KBody: return "k-body";
    case Selector::PairLeft: return "pair-left";
    case Selector::PairRight: return "pair-right";
  }
  return "?";
}

const Term* child(const Term& t, Selector s) {
  switch (s) {
    case Selector::Function: return t.is(Kind::Application) ? &t.function() : nullptr;
    case Selector::Argument: return t.is(Kind::Application) ? &t.argument() : nullptr;
    case Selector::KBody: return t.is(Kind::KWrap) ? &t.body() : nullptr;
    case Selector::PairLeft: return t.is(Kind::Pair) ? &t.left() : nullptr;
    case Selector::PairRight: return t.is(Kind::Pair) ? &t.right() : nullptr;
  }
  return nullptr;
}

Term rebuild(const Term& t, Selector s, Term c) {
  switch (s) {
    case Selector::Function: return Term::apply(std::move(c), t.argument());
    case Selector::Argument: return Term::apply(t.function(), std::move(c));
    case Selector::KBody: return Term::kwrap(std::move(c));
    case Selector::PairLeft: return Term::pair(std::move(c), t.right());
    case Selector::PairRight: return Term::pair(t.left(), std::move(c));
  }
  return t;
}

Term replaceFrom(const Term& t, const Position& p, std::size_t i, const Term& replacement) {
  if (i == p.size()) return replacement;
  const Term* c = child(t, p[i]);
  if (!c) throw InvalidPosition(i, p[i]);
  return rebuild(t, p[i], replaceFrom(*c, p, i + 1, replacement));
}

void collectPositions(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  auto visit = [&](Selector s, const Term& c) {
    cur.push_back(s);
    collectPositions(c, cur, out);
    cur.pop_back();
  };
  switch (t.kind()) {
    case Kind::Application:
      visit(Selector::Function, t.function());
      visit(Selector::Argument, t.argument());
      break;
    case Kind::KWrap: visit(Selector::KBody, t.body()); break;
    case Kind::Pair:
      visit(Selector::PairLeft, t.left());
      visit(Selector::PairRight, t.right());
      break;
    default: break;
  }
}

}  // namespace

InvalidPosition::InvalidPosition(std::size_t index, Selector selector)
    : std::runtime_error("invalid position: selector " + std::to_string(index) + " (" +
                         selectorName(selector) + ") selects a missing child"),
      index(index),
      selector(selector) {}

const Term& navigate(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Term* c = child(*cur, p[i]);
    if (!c) throw InvalidPosition(i, p[i]);
    cur = c;
  }
  return *cur;
}

Term replaceAt(const Term& t, const Position& p, const Term& replacement) {
  return replaceFrom(t, p, 0, replacement);
}

bool validPosition(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (Selector s : p) {
    cur = child(*cur, s);
    if (!cur) return false;
  }
  return true;
}

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collectPositions(t, cur, out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Leaf>
Term mapLeaves(const Term& t, const Leaf& leaf) {
  switch (t.kind()) {
    case Kind::Application: {
      Term f = mapLeaves(t.function(), leaf);
      Term a = mapLeaves(t.argument(), leaf);
      if (f == t.function() && a == t.argument()) return t;
      return Term::apply(std::move(f), std::move(a));
    }
    case Kind::KWrap: {
      Term b = mapLeaves(t.body(), leaf);
      if (b == t.body()) return t;
      return Term::kwrap(std::move(b));
    }
    case Kind::Pair: {
      Term l = mapLeaves(t.left(), leaf);
      Term r = mapLeaves(t.right(), leaf);
      if (l == t.left() && r == t.right()) return t;
      return Term::pair(std::move(l), std::move(r));
    }
    default: return leaf(t);
  }
}

template <typename Fn>
void forEachLeaf(const Term& t, const Fn& fn) {
  switch (t.kind()) {
    case Kind::Application:
      forEachLeaf(t.function(), fn);
      forEachLeaf(t.argument(), fn);
      break;
    case Kind::KWrap: forEachLeaf(t.body(), fn); break;
    case Kind::Pair:
      forEachLeaf(t.left(), fn);
      forEachLeaf(t.right(), fn);
      break;
    default: fn(t);
  }
}

}  // namespace

Term substitute(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  return mapLeaves(t, [&](const Term& leaf) {
    if (leaf.is(Kind::Variable)) {
      auto it = s.find(leaf.name());
      if (it != s.end()) return it->second;
    }
    return leaf;
  });
}

Term instantiate(const Term& pattern, const Substitution& s) {
  return mapLeaves(pattern, [&](const Term& leaf) {
    if (leaf.is(Kind::PatternVar)) {
      auto it = s.find(leaf.name());
      if (it != s.end()) return it->second;
    }
    return leaf;
  });
}

Term substituteDefined(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  return mapLeaves(t, [&](const Term& leaf) {
    if (leaf.is(Kind::Defined)) {
      auto it = s.find(leaf.name());
      if (it != s.end()) return it->second;
    }
    return leaf;
  });
}

bool matchInto(const Term& pattern, const Term& t, Substitution& s) {
  switch (pattern.kind()) {
    case Kind::PatternVar: {
      auto [it, inserted] = s.emplace(pattern.name(), t);
      return inserted || it->second == t;
    }
    case Kind::Application:
      return t.is(Kind::Application) && matchInto(pattern.function(), t.function(), s) &&
             matchInto(pattern.argument(), t.argument(), s);
    case Kind::KWrap: return t.is(Kind::KWrap) && matchInto(pattern.body(), t.body(), s);
    case Kind::Pair:
      return t.is(Kind::Pair) && matchInto(pattern.left(), t.left(), s) &&
             matchInto(pattern.right(), t.right(), s);
    default: return pattern == t;
  }
}

std::optional<Substitution> matchPattern(const Term& pattern, const Term& t) {
  Substitution s;
  if (!matchInto(pattern, t, s)) return std::nullopt;
  return s;
}

Term patternize(const Term& t, const std::set<std::string>& keep) {
  return mapLeaves(t, [&](const Term& leaf) {
    if (leaf.is(Kind::Variable) && !keep.count(leaf.name())) return Term::patternVar(leaf.name());
    return leaf;
  });
}

std::set<std::string> freeVars(const Term& t) {
  std::set<std::string> out;
  forEachLeaf(t, [&](const Term& l) {
    if (l.is(Kind::Variable)) out.insert(l.name());
  });
  return out;
}

std::set<std::string> patternVars(const Term& t) {
  std::set<std::string> out;
  forEachLeaf(t, [&](const Term& l) {
    if (l.is(Kind::PatternVar)) out.insert(l.name());
  });
  return out;
}

std::set<std::string> definedNames(const Term& t) {
  std::set<std::string> out;
  forEachLeaf(t, [&](const Term& l) {
    if (l.is(Kind::Defined)) out.insert(l.name());
  });
  return out;
}

bool occurs(const std::string& variable, const Term& t) {
  switch (t.kind()) {
    case Kind::Variable: return t.name() == variable;
    case Kind::Application: return occurs(variable, t.function()) || occurs(variable, t.argument());
    case Kind::KWrap: return occurs(variable, t.body());
    case Kind::Pair: return occurs(variable, t.left()) || occurs(variable, t.right());
    default: return false;
  }
}

std::string freshVar(const std::set<std::string>& avoid) {
  for (std::size_t i = 0;; ++i) {
    std::string name = "v" + std::to_string(i);
    if (!avoid.count(name)) return name;
  }
}

Term identity() { return Term::defined(std::string(kIdentityName)); }

Term identityDefinition() {
  return Term::pair(Term::constant(Constant::P1), Term::constant(Constant::P2));
}

// ---------------------------------------------------------------------------

namespace {

std::string joinExpected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) out += ", ";
    out += expected[i];
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(int line, int column, std::string message, std::vector<std::string> expected)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                         (expected.empty() ? "" : "; expected one of: " + joinExpected(expected))),
      line(line),
      column(column),
      message(std::move(message)),
      expected(std::move(expected)) {}

bool ParseContext::isDefined(const std::string& name) const {
  if (defined.count(name)) return true;
  if (variables.count(name)) return false;
  return std::isupper(static_cast<unsigned char>(name[0]));
}

Term parse(std::string_view text, const ParseContext& ctx) {
  Scanner in(text);
  Term t = parseTerm(in, ctx);
  if (!in.atEnd()) in.fail("trailing input after term", {"end of input"});
  return t;
}

namespace {

void renderInto(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Kind::Variable:
    case Kind::Defined: out += t.name(); break;
    case Kind::PatternVar:
      out += '$';
      out += t.name();
      break;
    case Kind::Constant: out += constantName(t.constantValue()); break;
    case Kind::Application:
      renderInto(t.function(), out);
      out += ' ';
      if (t.argument().is(Kind::Application)) {
        out += '(';
        renderInto(t.argument(), out);
        out += ')';
      } else {
        renderInto(t.argument(), out);
      }
      break;
    case Kind::KWrap:
      out += "k(";
      renderInto(t.body(), out);
      out += ')';
      break;
    case Kind::Pair:
      out += '<';
      renderInto(t.left(), out);
      out += ',';
      renderInto(t.right(), out);
      out += '>';
      break;
  }
}

}  // namespace

std::string render(const Term& t) {
  std::string out;
  renderInto(t, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << render(t); }

}  // namespace trc
