#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "treelab/leveled_tree.hpp"
#include "treelab/type_vector.hpp"

namespace treelab {

// Tuples drawn from a finite linear order 0 < 1 < ... < order_size-1.
// Each tuple is strictly increasing and no element is shared between
// distinct tuples.
struct LinearTupleSequence {
  int order_size = 0;
  std::vector<std::vector<int>> tuples;

  int arity() const { return tuples.empty() ? 0 : static_cast<int>(tuples.front().size()); }
};

ValidationReport validate_linear_sequence(const LinearTupleSequence& seq);

// Componentwise comparison pattern: entry i of the first tuple sits
// below entry i of the second exactly when bit i is 1.
Outcome<bool> satisfies_linear(const std::vector<int>& t1, const std::vector<int>& t2,
                               const TypeVector& g);

// Least ordered index pair realizing the pattern, scanning (0,1), (0,2),
// ..., (1,0), ... lexicographically.
Outcome<std::optional<std::pair<int, int>>> realize_linear(const LinearTupleSequence& seq,
                                                           const TypeVector& g);

struct SeparatedWitness {
  std::vector<int> separators;  // order elements c_0 .. c_{n-2}
};

// Verifies a supplied witness, or searches for separators interleaving
// every tuple: a_{x,i} < c_i < a_{x,i+1} for all tuples x.
std::optional<SeparatedWitness> check_separated(const LinearTupleSequence& seq,
                                                const std::optional<SeparatedWitness>& given);

// Tuples of tree nodes. `base`, when present, asserts that entry i of
// every tuple lies strictly above base[i].
struct TreeTupleSequence {
  std::vector<std::vector<Node>> tuples;
  std::optional<std::vector<Node>> base;

  int arity() const { return tuples.empty() ? 0 : static_cast<int>(tuples.front().size()); }
};

ValidationReport validate_tree_sequence(const LeveledTree& t, const TreeTupleSequence& seq,
                                        bool require_increasing_height);

// Componentwise tree-order test. The second tuple's nodes must all sit
// strictly higher than the first's; other queries are rejected.
Outcome<bool> satisfies_tree(const LeveledTree& t, const std::vector<Node>& lower,
                             const std::vector<Node>& higher, const TypeVector& g);

// Least pair x < y realizing the pattern over an increasing-height
// sequence.
Outcome<std::optional<std::pair<int, int>>> realize_tree(const LeveledTree& t,
                                                         const TreeTupleSequence& seq,
                                                         const TypeVector& g);

// Maximum within-tuple delta across the sequence; 0 when tuples have a
// single entry.
Outcome<int> delta_bound(const LeveledTree& t, const TreeTupleSequence& seq);

struct ProjectionGroup {
  std::vector<Node> base;        // the common projection tuple
  std::vector<int> members;      // indices of tuples projecting here
  std::vector<int> increasing;   // greedy increasing-height subsequence of members
};

// Projects every tuple to the given level and groups by the projection;
// the projections are injective whenever the level exceeds the delta
// bound. Within a group the members are thinned greedily (by ascending
// minimum node height) to an increasing-height subsequence.
Outcome<std::vector<ProjectionGroup>> project_and_group(const LeveledTree& t,
                                                        const TreeTupleSequence& seq,
                                                        int level);

// Ladder of fork pairs: k pairs (left child, right child) of forks with
// strictly climbing heights, each fork above the previous pair. The
// resulting pair sequence can never realize the pattern 11.
Outcome<TreeTupleSequence> fork_ladder_pairs(const LeveledTree& t, int k);

// Interval-nesting triples: from pairs (a_x, b_x) with the listed
// (outer, inner) index pairs, emits (a_outer, a_inner, b_outer). The
// construction never realizes the pattern 101.
Outcome<LinearTupleSequence> nested_triples(int order_size,
                                            const std::vector<std::pair<int, int>>& pairs,
                                            const std::vector<std::pair<int, int>>& index_pairs);

// Componentwise permutation of every tuple together with the matching
// permutation of the pattern; satisfaction is preserved.
Outcome<std::pair<LinearTupleSequence, TypeVector>> sigma_reduce(const LinearTupleSequence& seq,
                                                                 const std::vector<int>& sigma,
                                                                 const TypeVector& g);
Outcome<std::pair<TreeTupleSequence, TypeVector>> sigma_reduce(const TreeTupleSequence& seq,
                                                               const std::vector<int>& sigma,
                                                               const TypeVector& g);

}  // namespace treelab
