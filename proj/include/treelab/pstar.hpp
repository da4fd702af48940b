#pragma once

#include <vector>

#include "treelab/condition.hpp"
#include "treelab/forcing.hpp"

namespace treelab {

// One coloring entry: a pair of injective same-level tuples of the
// condition, the lower strictly below the upper componentwise.
struct ColorEntry {
  std::vector<Node> lower;  // c
  std::vector<Node> upper;  // a
  unsigned color = 0;

  friend bool operator==(const ColorEntry&, const ColorEntry&) = default;
};

// A tree condition together with a finite specializing coloring: two
// entries over the same lower tuple whose upper tuples are comparable
// componentwise must receive different colors.
struct PStarCondition {
  Condition tree;
  std::vector<ColorEntry> coloring;
};

ValidationReport validate_pstar(const PStarCondition& cond);

// q extends p when the tree end-extends and the coloring contains p's
// coloring as a function.
bool pstar_extends(const PStarCondition& q, const PStarCondition& p);

// Restriction of the coloring to entries whose upper tuple sits below
// the cut level.
std::vector<ColorEntry> coloring_below(const PStarCondition& cond, int cut);

// Cross-amalgamation of two colored conditions: the trees merge through
// the typed step (no sibling insertions), the colorings by union. The
// preconditions guarantee the union still satisfies the coloring
// constraint; a failure of the output validator is reported as an
// internal contradiction.
Outcome<PStarCondition> pstar_amalgamate(const PStarCondition& low, const PStarCondition& high,
                                         const TypedAmalgamationInput& input,
                                         const AmalgamationSpec& spec);

// The partial map a -> color of all entries over the given lower tuple.
// In a valid condition no two componentwise-comparable tuples of its
// domain share a color.
std::vector<std::pair<std::vector<Node>, unsigned>> extract_specializer(
    const PStarCondition& cond, const std::vector<Node>& lower);

}  // namespace treelab
