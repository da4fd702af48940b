#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "treelab/condition.hpp"
#include "treelab/entangle.hpp"
#include "treelab/leveled_tree.hpp"

// Exhaustive generators for the small-instance property checks. Tags are
// canonical (0, 1, ... inside each level); every structure over
// arbitrary rational tags is a relabeling of one of these.

namespace treelab {

// Every condition with at most max_nodes nodes and levels below
// max_level. With up_to_relabel, only the least representative of each
// within-level relabeling class is visited.
void for_each_condition(int max_nodes, int max_level, bool up_to_relabel,
                        const std::function<void(const Condition&)>& fn);

// Every condition extending `base` by 1..extra fresh nodes with levels
// in [lo, hi). The base must live strictly below lo. With up_to_relabel,
// extensions differing only by a within-level relabeling of the fresh
// nodes are visited once.
void for_each_extension(const Condition& base, int extra, int lo, int hi,
                        const std::function<void(const Condition&)>& fn,
                        bool up_to_relabel = false);

// Every leveled tree with node count in [min_nodes, max_nodes]: all
// level-width compositions and all parent assignments, canonical tags.
void for_each_leveled_tree(int min_nodes, int max_nodes,
                           const std::function<void(const LeveledTree&)>& fn);

// One representative per forest-isomorphism class with node count in
// [min_nodes, max_nodes]. Built from canonical level sequences of
// rooted trees combined into nonincreasing multisets.
void for_each_forest_shape(int min_nodes, int max_nodes,
                           const std::function<void(const LeveledTree&)>& fn);

// Same shape, seeded within-level reassignment of the parent links.
LeveledTree reinterleave(const LeveledTree& t, std::uint64_t seed);

// Seeded normal tree of height 2..max_height with a doubling-plus-noise
// width schedule.
LeveledTree sample_pseudo_generic(std::uint64_t seed, int max_height);

// Seeded disjoint increasing tuple family over a small linear order.
LinearTupleSequence sample_linear_sequence(std::uint64_t seed, int max_arity, int max_tuples);

}  // namespace treelab
