#pragma once

#include <nlohmann/json_fwd.hpp>

#include "treelab/entangle.hpp"
#include "treelab/forcing.hpp"
#include "treelab/leveled_tree.hpp"
#include "treelab/pstar.hpp"

// File formats. All writers emit canonical content: sorted nodes, sorted
// keys, exact integer fractions. Reading normalizes covers (closure then
// reduction) so that a file listing the full order validates exactly
// like one listing the covers.

namespace treelab {

using json = nlohmann::json;

json to_json(const Rational& r);
json to_json(const Node& n);
json to_json(const Condition& p);
json to_json(const LeveledTree& t);
json to_json(const PStarCondition& c);
json to_json(const NormalityReport& r);
json to_json(const ValidationReport& r);
json to_json(const LinearTupleSequence& s);
json tree_sequence_to_json(const LeveledTree& t, const TreeTupleSequence& s);

Outcome<Rational> rational_from_json(const json& j);
Outcome<Node> node_from_json(const json& j);
Outcome<Condition> condition_from_json(const json& j);
Outcome<LeveledTree> tree_from_json(const json& j);
Outcome<PStarCondition> pstar_from_json(const json& j);
Outcome<LinearTupleSequence> linear_sequence_from_json(const json& j);
Outcome<TreeTupleSequence> tree_sequence_from_json(const json& j, const LeveledTree& t);
// matched pairs are index pairs into p's and q's node arrays
Outcome<AmalgamationSpec> spec_from_json(const json& j, const Condition& p, const Condition& q);

// Recomputes covers as the reduction of their closure when acyclic.
Condition normalize_covers(Condition p);

}  // namespace treelab
