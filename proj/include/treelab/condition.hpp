#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "treelab/node.hpp"
#include "treelab/util.hpp"

namespace treelab {

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// A finite level-monotone tree: the strict order is the transitive
// closure of `covers`, which is kept as the transitive reduction so that
// structural equality is canonical. Nodes are sorted by (level, tag) and
// covers index into the nodes array, sorted.
//
// The struct itself accepts arbitrary data; validate_condition decides
// whether the invariants hold and lists every violated clause.
struct Condition {
  std::vector<Node> nodes;
  std::vector<std::pair<int, int>> covers;

  friend bool operator==(const Condition&, const Condition&) = default;
};

ValidationReport validate_condition(const Condition& p);

// Canonical constructor: takes nodes in any order and any set of order
// pairs (covers, the full order, or anything in between), closes it
// transitively, checks the tree conditions, and stores the reduction.
Outcome<Condition> make_condition(std::vector<Node> nodes,
                                  const std::vector<std::pair<Node, Node>>& relation);

int find_node(const Condition& p, const Node& x);  // index or -1

// Precomputed strict-order bitmasks for a condition that passed (or is
// being) validated. Supports at most 64 nodes, plenty at desk scale.
// Fixed-size storage keeps construction allocation-free; the view sits
// in hot enumeration loops.
class OrderView {
public:
  explicit OrderView(const Condition& p);

  int size() const { return n_; }
  bool less(int i, int j) const { return (lower_[static_cast<std::size_t>(j)] >> i) & 1u; }
  bool less_eq(int i, int j) const { return i == j || less(i, j); }
  bool comparable(int i, int j) const { return i == j || less(i, j) || less(j, i); }
  std::uint64_t lower_mask(int j) const { return lower_[static_cast<std::size_t>(j)]; }
  std::uint64_t upper_mask(int i) const { return upper_[static_cast<std::size_t>(i)]; }
  // Index of the unique immediate predecessor, or -1.
  int immediate_pred(int j) const;

  bool closure_had_cycle() const { return cycle_; }

private:
  const Condition* p_;
  int n_;
  bool cycle_ = false;
  std::uint64_t lower_[64], upper_[64];
};

// q end-extends p: p's nodes all appear in q and the order between old
// nodes is unchanged. Both inputs are assumed valid.
bool end_extends(const Condition& q, const Condition& p);

// Subtree of nodes with level < alpha, with the induced order.
Condition restrict_below(const Condition& p, int alpha);
// Subtree of nodes with level >= alpha.
Condition above(const Condition& p, int alpha);

std::string condition_str(const Condition& p);

}  // namespace treelab
