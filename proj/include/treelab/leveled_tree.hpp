#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treelab/condition.hpp"
#include "treelab/node.hpp"
#include "treelab/util.hpp"

namespace treelab {

// A finite-height tree with every level fully populated: level k holds a
// sorted set of rational tags, and every node at level k+1 has exactly
// one parent at level k. Level 0 may hold several tags (a forest of
// roots is permitted).
struct LeveledTree {
  std::vector<std::vector<Rational>> levels;
  std::vector<std::vector<int>> parents;  // parents[k][i] indexes levels[k-1]; parents[0] empty

  int height() const { return static_cast<int>(levels.size()); }
  int node_count() const;
  Node node_at(int level, int idx) const {
    return Node{level, levels[static_cast<std::size_t>(level)][static_cast<std::size_t>(idx)]};
  }
};

ValidationReport validate_tree(const LeveledTree& t);

// Flat-index view with parent/child links resolved once. Global ids
// enumerate nodes level by level, tags ascending inside a level.
class TreeView {
public:
  explicit TreeView(const LeveledTree& t);

  const LeveledTree& tree() const { return *t_; }
  int size() const { return total_; }
  int offset(int level) const { return offsets_[static_cast<std::size_t>(level)]; }
  int level_of(int id) const;
  int index_in_level(int id) const { return id - offset(level_of(id)); }
  Node node_of(int id) const;
  int id_of(const Node& x) const;  // -1 if absent
  int parent_of(int id) const { return parent_[static_cast<std::size_t>(id)]; }
  const std::vector<int>& children_of(int id) const { return children_[static_cast<std::size_t>(id)]; }

  int ancestor_at(int id, int level) const;  // level must be <= level_of(id)
  bool less(int a, int b) const;             // strict tree order
  bool less_eq(int a, int b) const { return a == b || less(a, b); }
  // Level of the maximum common ancestor, or -1 when there is none.
  int meet_level(int a, int b) const;
  int delta(int a, int b) const;

private:
  const LeveledTree* t_;
  int total_ = 0;
  std::vector<int> offsets_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
};

// Order type of the common strict-or-equal lower set of x and y.
Outcome<int> delta(const LeveledTree& t, const Node& x, const Node& y);

// The unique node below-or-equal to x at the given level.
Outcome<Node> projection(const LeveledTree& t, const Node& x, int level);

struct NormalityReport {
  std::vector<Node> splitting_failures;  // non-top nodes with fewer than two children
  std::vector<Node> extension_failures;  // non-top nodes with no child
  bool normal() const { return splitting_failures.empty() && extension_failures.empty(); }
};
NormalityReport check_normal(const LeveledTree& t);

// Maximum-cardinality chain / antichain; ties resolved toward the
// lexicographically least (level, tag) sequence.
std::vector<Node> max_chain(const LeveledTree& t);
std::vector<Node> max_antichain(const LeveledTree& t);

// Least node whose whole cone is dominated by the target set: every b
// above-or-equal to it has a member of the set above-or-equal to b.
std::optional<Node> dense_below(const LeveledTree& t, const std::vector<Node>& target);

// ---- derived trees ----

// A tuple tree: each node is an n-tuple of base-tree nodes of one level,
// recorded in `labels` as global base ids. The LeveledTree shape tags
// tuples 0,1,2,... per level in lexicographic component order.
struct DerivedTree {
  LeveledTree tree;
  std::vector<std::vector<std::vector<int>>> labels;
  int arity = 0;
};

// All n-tuples (repetition allowed) of same-level nodes, componentwise order.
Outcome<DerivedTree> derived_power(const LeveledTree& t, int n);

// Tuples componentwise above an injective same-level base, re-leveled to
// start at the base. Levels where some cone has died are dropped.
Outcome<DerivedTree> derived_at(const LeveledTree& t, const std::vector<Node>& base);

struct SplitEmbeddingReport {
  std::vector<std::string> order_violations;
  std::vector<std::string> density_violations;
  bool ok() const { return order_violations.empty() && density_violations.empty(); }
};

// Checks that splitting tuples at position m embeds the derived tree of
// `base` into the product of the derived trees of the two halves:
// order-preserving in both directions, and every product pair is below
// the image of some tuple (found by lifting the lower half to equal
// height).
Outcome<SplitEmbeddingReport> split_embedding(const LeveledTree& t, const std::vector<Node>& base,
                                              int m);

// ---- builders ----

// Seeded leveled tree with the given level widths, parents assigned so
// that every non-top node has at least two children. Schedules whose
// widths fail to double are rejected.
Outcome<LeveledTree> build_pseudo_generic(int height, const std::vector<int>& widths,
                                          std::uint64_t seed);

// Seeded normal tree that realizes a condition exactly: the condition's
// nodes appear with their own tags, related in the tree order precisely
// as in the condition.
Outcome<LeveledTree> build_completion(const Condition& p, std::uint64_t seed, int min_height = 0);

// A thin tall tree with a two-child split at every level along one
// spine. Off-spine nodes are leaves; used where full normality would
// need exponential width.
LeveledTree build_spine_tree(int height, std::uint64_t seed);

}  // namespace treelab
