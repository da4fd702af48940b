#pragma once

#include <cstdint>
#include <vector>

#include "treelab/condition.hpp"
#include "treelab/leveled_tree.hpp"

namespace treelab {

enum class Ordering { less, equal, greater };

const char* ordering_name(Ordering o);

// The lexicographic linear order of a leveled tree: tree order where
// comparable, otherwise decided by the rational tags of the immediate
// successors of the meet along each branch. Trees with several roots
// compare root tags, as if below a virtual common root.
Outcome<Ordering> lex_compare(const LeveledTree& t, const Node& a, const Node& b);

// Same comparison over precomputed structure, for scans.
class LexView {
public:
  explicit LexView(const LeveledTree& t) : tv_(t) {}
  const TreeView& view() const { return tv_; }
  Ordering cmp(int a, int b) const;

private:
  TreeView tv_;
};

struct MeetBoundViolation {
  Node a, b, c, d;
};

// Scans all triples a, b, c with c lower than both a and b and
// a <lex c <lex b, and reports every common lower bound d of a and b
// whose height reaches c's. The scan must come back empty on every
// valid tree; a hit is an implementation bug.
std::vector<MeetBoundViolation> lex_meet_violations(const LeveledTree& t);

// A five-node pattern inside a condition: fork < left < left_top and
// fork < right < right_top, with left and right immediate successors of
// fork by level and tag(left) < tag(right).
struct ForcedLexConfig {
  Node fork, left, right, left_top, right_top;
};

// Builds seeded normal completions of the condition and verifies that
// the lexicographic order puts left_top before right_top in every one.
Outcome<bool> check_forced_lex(const Condition& p, const ForcedLexConfig& cfg, int completions,
                               std::uint64_t seed);

// Finite linear order L of size m doubled to L x 2, ordered first by
// base then by bit. Element e encodes (e / 2, e % 2).
struct DoubledOrder {
  int base_size = 0;
  int size() const { return 2 * base_size; }
};
DoubledOrder double_order(int base_size);

// The pair sequence ((a,0),(a,1)) over all base elements, in doubled
// indices. No pair of entries can satisfy the pattern 10: nothing sits
// strictly between the twins.
std::vector<std::pair<int, int>> doubling_witness(int base_size);

enum class PairRelation { before, nested, after, crossing, touching };
const char* pair_relation_name(PairRelation r);

// Classifies two increasing pairs of a linear order by the relative
// position of their intervals. All four endpoints must be distinct.
Outcome<PairRelation> classify_pair_relation(std::pair<int, int> p1, std::pair<int, int> p2);

}  // namespace treelab
