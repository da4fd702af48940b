#pragma once

#include <compare>
#include <functional>
#include <string>

#include "treelab/rational.hpp"

namespace treelab {

// A point (level, tag): level a natural number, tag an exact rational.
// Equality is componentwise; distinct tags at the same level are
// distinct nodes.
struct Node {
  int level = 0;
  Rational tag;

  friend bool operator==(const Node&, const Node&) = default;
  friend std::strong_ordering operator<=>(const Node& a, const Node& b) {
    if (auto c = a.level <=> b.level; c != 0) return c;
    return a.tag <=> b.tag;
  }

  std::string str() const { return "(" + std::to_string(level) + "," + tag.str() + ")"; }
};

}  // namespace treelab

template <>
struct std::hash<treelab::Node> {
  std::size_t operator()(const treelab::Node& n) const {
    return std::hash<int>()(n.level) * 31337u ^ std::hash<treelab::Rational>()(n.tag);
  }
};
