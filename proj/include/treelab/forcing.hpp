#pragma once

#include <optional>
#include <vector>

#include "treelab/condition.hpp"
#include "treelab/type_vector.hpp"

namespace treelab {

// Split the immediate-predecessor pair (pred, succ) by threading `fresh`
// strictly between them.
struct InsertionRequest {
  Node pred, succ, fresh;
};

// Data for merging two conditions that agree below a cut: p supplies the
// part below beta, q the part from beta up, and `matched` lists the
// (b_i, c_i) pairs that the merge relates across the cut.
struct AmalgamationSpec {
  int alpha = 0;
  int beta = 0;
  std::vector<std::pair<Node, Node>> matched;
};

Outcome<Condition> insert_node(const Condition& p, const InsertionRequest& req);

// Sequential fold of insert_node. Pairs must be distinct and the fresh
// nodes distinct; each step keeps every other immediate pair intact.
Outcome<Condition> multi_insert(const Condition& p, const std::vector<InsertionRequest>& reqs);

// Merge of p and q under the spec. The result end-extends both, and a
// node b of p above alpha sits below a node c of q above beta exactly
// when some matched pair (b_i, c_i) has b <= b_i and c_i <= c.
Outcome<Condition> amalgamate(const Condition& p, const Condition& q,
                              const AmalgamationSpec& spec);

// Bounded search for a cut and matching that amalgamate the two
// conditions, in either role order. Cuts are drawn from the node levels
// and their successors. Returns the first common extension found.
std::optional<Condition> compatible(const Condition& p, const Condition& q);

// Cross-amalgamation directed by a comparability pattern. The i-th
// entries of the tuples end up related (low below high) exactly when
// type bit i is 1; for 0 bits, amalgamate_with_type additionally inserts
// a tagged sibling pair under the common immediate predecessor so that
// every lexicographic completion puts the high entry first.
struct TypedAmalgamationInput {
  std::vector<Node> low_tuple;     // entries of the low-side condition above its cut
  std::vector<Node> high_tuple;    // entries of the high-side condition above its cut
  std::vector<Node> high_minimal;  // minimal node of the high part below each high entry
  TypeVector type;
};

Outcome<Condition> amalgamate_with_type(const Condition& p_low, const Condition& p_high,
                                        const TypedAmalgamationInput& input,
                                        const AmalgamationSpec& spec);

// Shared engine: the plain cross-amalgamation step, optionally followed
// by the sibling insertions for 0 bits.
Outcome<Condition> typed_cross_amalgamate(const Condition& p_low, const Condition& p_high,
                                          const TypedAmalgamationInput& input,
                                          const AmalgamationSpec& spec, bool insert_siblings);

}  // namespace treelab
