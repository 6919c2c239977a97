#include "trc/stratify.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace trc {

namespace {

// Union-find over integer unknowns with offsets to the parent:
// type(i) = type(parent[i]) + offset[i].
class OffsetUnionFind {
 public:
  int add(std::string label) {
    parent_.push_back(static_cast<int>(parent_.size()));
    offset_.push_back(0);
    labels_.push_back(std::move(label));
    adjacency_.emplace_back();
    return parent_.back();
  }

  std::pair<int, int> find(int i) {
    if (parent_[i] == i) return {i, 0};
    auto [root, off] = find(parent_[i]);
    parent_[i] = root;
    offset_[i] += off;
    return {root, offset_[i]};
  }

  // type(a) = type(b) + c. Returns a conflict cycle if inconsistent.
  std::optional<std::vector<TypeConstraint>> constrain(int a, int b, int c) {
    auto [ra, oa] = find(a);
    auto [rb, ob] = find(b);
    if (ra == rb) {
      if (oa == ob + c) return std::nullopt;
      return cycle(a, b, c);
    }
    parent_[ra] = rb;
    offset_[ra] = ob + c - oa;
    adjacency_[a].push_back({b, c});
    adjacency_[b].push_back({a, -c});
    return std::nullopt;
  }

  const std::string& label(int i) const { return labels_[i]; }

 private:
  // Path b -> a through accepted constraints, closed by the edge a -> b.
  std::vector<TypeConstraint> cycle(int a, int b, int c) {
    std::vector<std::pair<int, int>> prev(parent_.size(), {-1, 0});
    std::deque<int> queue{b};
    prev[b] = {b, 0};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      if (u == a) break;
      for (auto [v, d] : adjacency_[u]) {
        if (prev[v].first == -1) {
          prev[v] = {u, d};
          queue.push_back(v);
        }
      }
    }
    std::vector<TypeConstraint> path;
    for (int v = a; v != b; v = prev[v].first) {
      int u = prev[v].first;
      // edge u -> v recorded with d = type(v) - type(u) seen from v's list,
      // i.e. adjacency_[u] holds {v, type(u) - type(v)}.
      int d = 0;
      for (auto [w, dd] : adjacency_[u]) {
        if (w == v) d = dd;
      }
      path.push_back({labels_[u], labels_[v], d});
    }
    std::reverse(path.begin(), path.end());
    std::vector<TypeConstraint> out{{labels_[a], labels_[b], c}};
    out.insert(out.end(), path.begin(), path.end());
    return out;
  }

  std::vector<int> parent_;
  std::vector<int> offset_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

struct Stratifier {
  OffsetUnionFind uf;
  std::map<std::string, int> vars;
  StratifyResult result;

  void emit(int a, int b, int c) {
    result.constraints.push_back({uf.label(a), uf.label(b), c});
    if (result.conflict) return;
    if (auto cyc = uf.constrain(a, b, c)) result.conflict = std::move(cyc);
  }

  int visit(const Term& t, Position& pos) {
    if (t.is(Kind::Variable)) {
      auto it = vars.find(t.name());
      if (it == vars.end()) it = vars.emplace(t.name(), uf.add(t.name())).first;
      return it->second;
    }
    int node = uf.add(renderPosition(pos) + ":" + render(t));
    auto sub = [&](Selector s, const Term& c) {
      pos.push_back(s);
      int id = visit(c, pos);
      pos.pop_back();
      return id;
    };
    switch (t.kind()) {
      case Kind::Application: {
        int f = sub(Selector::Function, t.function());
        int a = sub(Selector::Argument, t.argument());
        emit(f, a, 1);
        emit(node, a, 0);
        break;
      }
      case Kind::KWrap: emit(node, sub(Selector::KBody, t.body()), 1); break;
      case Kind::Pair: {
        int l = sub(Selector::PairLeft, t.left());
        int r = sub(Selector::PairRight, t.right());
        emit(node, l, 0);
        emit(node, r, 0);
        break;
      }
      default: break;  // constants and defined names are unconstrained
    }
    return node;
  }
};

}  // namespace

int StratifyResult::conflictOffset() const {
  if (!conflict) return 0;
  int sum = 0;
  for (const auto& c : *conflict) sum += c.offset;
  return sum;
}

StratifyResult stratify(const Term& t) {
  Stratifier s;
  Position pos;
  s.visit(t, pos);
  if (s.result.conflict) return std::move(s.result);
  std::map<int, std::vector<std::pair<std::string, int>>> components;
  for (const auto& [name, id] : s.vars) {
    auto [root, off] = s.uf.find(id);
    components[root].push_back({name, off});
  }
  for (const auto& [root, members] : components) {
    int low = members.front().second;
    for (const auto& m : members) low = std::min(low, m.second);
    for (const auto& [name, off] : members) s.result.assignment[name] = off - low;
  }
  return std::move(s.result);
}

std::string formatAssignment(const std::map<std::string, int>& assignment) {
  std::vector<std::pair<int, std::string>> order;
  for (const auto& [name, type] : assignment) order.push_back({type, name});
  std::sort(order.begin(), order.end());
  std::string out;
  for (const auto& [type, name] : order) {
    if (!out.empty()) out += ' ';
    out += name + ":" + std::to_string(type);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string_view reasonName(NotAbstractable::Reason r) {
  return r == NotAbstractable::Reason::VariableAtNonzeroLevel ? "x-at-nonzero-level" : "negative-level";
}

NotAbstractable::NotAbstractable(std::string variable, Position position, Reason reason, int level)
    : std::runtime_error("cannot abstract " + variable + ": " + std::string(reasonName(reason)) + " (level " +
                         std::to_string(level) + ") at " + renderPosition(position)),
      variable(std::move(variable)),
      position(std::move(position)),
      reason(reason),
      level(level) {}

namespace {

void levels(const std::string& x, const Term& t, int level, Position& pos, LevelMap& out) {
  out[pos] = level;
  bool containsX = occurs(x, t);
  if (t.is(Kind::Variable) && t.name() == x && level != 0) {
    throw NotAbstractable(x, pos, NotAbstractable::Reason::VariableAtNonzeroLevel, level);
  }
  if (containsX && level < 0) {
    throw NotAbstractable(x, pos, NotAbstractable::Reason::NegativeLevel, level);
  }
  auto sub = [&](Selector s, const Term& c, int l) {
    pos.push_back(s);
    levels(x, c, l, pos, out);
    pos.pop_back();
  };
  switch (t.kind()) {
    case Kind::Application:
      sub(Selector::Function, t.function(), level + 1);
      sub(Selector::Argument, t.argument(), level);
      break;
    case Kind::KWrap: sub(Selector::KBody, t.body(), level - 1); break;
    case Kind::Pair:
      sub(Selector::PairLeft, t.left(), level);
      sub(Selector::PairRight, t.right(), level);
      break;
    default: break;
  }
}

Term abstractAt(const std::string& x, const Term& t, int level, const AbstractOptions& opts) {
  if (!occurs(x, t)) return Term::kwrap(t);
  const Term abst = Term::constant(Constant::Abst);
  switch (t.kind()) {
    case Kind::Variable:
      if (level != 0) throw std::logic_error("abstraction variable reached at level " + std::to_string(level));
      return identity();
    case Kind::Pair:
      return Term::pair(abstractAt(x, t.left(), level, opts), abstractAt(x, t.right(), level, opts));
    case Kind::KWrap:
      return Term::apply(abst, Term::kwrap(abstractAt(x, t.body(), level - 1, opts)));
    case Kind::Application:
      if (opts.etaContract && level == 0 && t.argument().is(Kind::Variable) && t.argument().name() == x &&
          !occurs(x, t.function())) {
        return t.function();
      }
      return Term::applyAll(abst, {abstractAt(x, t.function(), level + 1, opts),
                                   abstractAt(x, t.argument(), level, opts)});
    default: throw std::logic_error("abstraction reached a leaf containing the variable");
  }
}

}  // namespace

LevelMap abstractionLevels(const std::string& x, const Term& t) {
  LevelMap out;
  Position pos;
  levels(x, t, 0, pos, out);
  return out;
}

Term abstract(const std::string& x, const Term& t, const AbstractOptions& opts) {
  abstractionLevels(x, t);
  return abstractAt(x, t, 0, opts);
}

}  // namespace trc
