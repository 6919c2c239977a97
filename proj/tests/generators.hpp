// Random term generators for property tests. Seeds are fixed by the callers.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "trc/term.hpp"

namespace trc::testing {

struct TermShape {
  std::vector<std::string> variables{"x", "y", "z"};
  bool constants = true;
  bool kwraps = true;
  bool pairs = true;
  bool identity = false;
};

inline Term randomTerm(std::mt19937& rng, int depth, const TermShape& shape = {}) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  std::vector<int> leaves;
  if (!shape.variables.empty()) leaves.push_back(0);
  if (shape.constants) leaves.push_back(1);
  if (shape.identity) leaves.push_back(2);
  if (depth <= 0 || pick(4) == 0) {
    switch (leaves[pick(static_cast<int>(leaves.size()))]) {
      case 0:
        return Term::variable(shape.variables[pick(static_cast<int>(shape.variables.size()))]);
      case 1: {
        const Constant cs[] = {Constant::Abst, Constant::Eq, Constant::P1, Constant::P2};
        return Term::constant(cs[pick(4)]);
      }
      default:
        return identity();
    }
  }
  std::vector<int> nodes{0, 0};
  if (shape.kwraps) nodes.push_back(1);
  if (shape.pairs) nodes.push_back(2);
  switch (nodes[pick(static_cast<int>(nodes.size()))]) {
    case 0: {
      Term f = randomTerm(rng, depth - 1, shape);
      return Term::apply(f, randomTerm(rng, depth - 1, shape));
    }
    case 1:
      return Term::kwrap(randomTerm(rng, depth - 1, shape));
    default: {
      Term l = randomTerm(rng, depth - 1, shape);
      return Term::pair(l, randomTerm(rng, depth - 1, shape));
    }
  }
}

/// Closed terms over the four constants (and optionally I).
inline Term randomClosed(std::mt19937& rng, int depth, bool pairs = true) {
  TermShape shape;
  shape.variables.clear();
  shape.pairs = pairs;
  return randomTerm(rng, depth, shape);
}

}  // namespace trc::testing
