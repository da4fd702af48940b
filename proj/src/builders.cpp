#include <algorithm>
#include <map>

#include "treelab/leveled_tree.hpp"
#include "treelab/rng.hpp"

namespace treelab {

Outcome<LeveledTree> build_pseudo_generic(int height, const std::vector<int>& widths,
                                          std::uint64_t seed) {
  if (height < 1) return Outcome<LeveledTree>::failure("gen-tree: height must be at least 1");
  if (static_cast<int>(widths.size()) != height)
    return Outcome<LeveledTree>::failure("gen-tree: need one width per level");
  if (widths[0] < 1) return Outcome<LeveledTree>::failure("gen-tree: level 0 must be nonempty");
  for (int k = 0; k + 1 < height; ++k)
    if (widths[static_cast<std::size_t>(k + 1)] < 2 * widths[static_cast<std::size_t>(k)])
      return Outcome<LeveledTree>::failure(
          "gen-tree: infeasible schedule, level " + std::to_string(k + 1) +
          " is too narrow to give every node two children");

  SplitMix64 rng(seed);
  LeveledTree t;
  t.levels.resize(static_cast<std::size_t>(height));
  t.parents.resize(static_cast<std::size_t>(height));
  for (int k = 0; k < height; ++k) {
    int w = widths[static_cast<std::size_t>(k)];
    for (int i = 0; i < w; ++i) t.levels[static_cast<std::size_t>(k)].push_back(Rational(i));
    if (k == 0) continue;
    int p = widths[static_cast<std::size_t>(k - 1)];
    std::vector<int> slots;
    for (int i = 0; i < p; ++i) {
      slots.push_back(i);
      slots.push_back(i);
    }
    while (static_cast<int>(slots.size()) < w) slots.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(p))));
    rng.shuffle(slots);
    slots.resize(static_cast<std::size_t>(w));
    t.parents[static_cast<std::size_t>(k)] = std::move(slots);
  }
  return Outcome<LeveledTree>::success(std::move(t));
}

Outcome<LeveledTree> build_completion(const Condition& p, std::uint64_t seed, int min_height) {
  auto vr = validate_condition(p);
  if (!vr.ok())
    return Outcome<LeveledTree>::failure("completion: input condition invalid: " +
                                         vr.violations.front());
  SplitMix64 rng(seed);
  int height = std::max(min_height, 1);
  for (const auto& nd : p.nodes) height = std::max(height, nd.level + 1);

  OrderView ov(p);
  const int np = static_cast<int>(p.nodes.size());

  // Every condition node hangs off its deepest strict predecessor; the
  // levels in between get a private spine so that no unrelated pair of
  // condition nodes becomes related in the completion.
  struct Pending {
    int node;        // condition node index
    int from_level;  // spine starts here (exclusive of the anchor)
    int anchor;      // condition node index below, or -1 for a fresh root
  };
  std::vector<Pending> spines;
  for (int v = 0; v < np; ++v) {
    int anchor = ov.immediate_pred(v);
    int from = anchor >= 0 ? p.nodes[static_cast<std::size_t>(anchor)].level + 1 : 0;
    spines.push_back({v, from, anchor});
  }

  // per-level tag lists: condition tags first, spine and filler tags fresh
  std::vector<std::vector<Rational>> tags(static_cast<std::size_t>(height));
  for (const auto& nd : p.nodes) tags[static_cast<std::size_t>(nd.level)].push_back(nd.tag);

  auto fresh_tag = [&](int level) {
    const auto& used = tags[static_cast<std::size_t>(level)];
    for (;;) {
      Rational cand(static_cast<long long>(rng.below(1000)), 1 + static_cast<long long>(rng.below(4)));
      bool clash = false;
      for (const auto& u : used)
        if (u == cand) clash = true;
      if (!clash) return cand;
    }
  };

  // realized condition/spine edges as (child level, child tag) -> parent tag
  std::map<std::pair<int, Rational>, Rational> fixed_parent;
  for (const auto& sp : spines) {
    Node child = p.nodes[static_cast<std::size_t>(sp.node)];
    if (child.level == 0) continue;  // roots need no spine
    Rational prev;
    if (sp.anchor >= 0) prev = p.nodes[static_cast<std::size_t>(sp.anchor)].tag;
    // spine nodes at levels [from_level, child.level)
    for (int lv = sp.from_level; lv < child.level; ++lv) {
      Rational t = fresh_tag(lv);
      tags[static_cast<std::size_t>(lv)].push_back(t);
      if (lv > 0) fixed_parent[{lv, t}] = prev;
      prev = t;
    }
    fixed_parent[{child.level, child.tag}] = prev;
  }

  // widths: enough for the fixed nodes and to give every node two children
  std::vector<int> width(static_cast<std::size_t>(height), 0);
  width[0] = std::max<int>(1, static_cast<int>(tags[0].size()));
  LeveledTree t;
  t.levels.resize(static_cast<std::size_t>(height));
  t.parents.resize(static_cast<std::size_t>(height));

  // build level 0
  while (static_cast<int>(tags[0].size()) < width[0]) tags[0].push_back(fresh_tag(0));
  t.levels[0] = tags[0];
  std::sort(t.levels[0].begin(), t.levels[0].end());

  for (int k = 1; k < height; ++k) {
    const auto& below = t.levels[static_cast<std::size_t>(k - 1)];
    const int nparents = static_cast<int>(below.size());
    auto parent_index = [&](const Rational& tg) {
      return static_cast<int>(std::lower_bound(below.begin(), below.end(), tg) - below.begin());
    };
    // fixed children per parent
    std::vector<int> fixed_count(static_cast<std::size_t>(nparents), 0);
    std::vector<std::pair<Rational, int>> fixed_children;  // (child tag, parent index)
    for (const auto& tg : tags[static_cast<std::size_t>(k)]) {
      auto it = fixed_parent.find({k, tg});
      int pi;
      if (it != fixed_parent.end()) {
        pi = parent_index(it->second);
      } else {
        pi = -1;  // free: condition roots' spines and stray fixed tags pick later
      }
      fixed_children.emplace_back(tg, pi);
      if (pi >= 0) ++fixed_count[static_cast<std::size_t>(pi)];
    }
    int topup = 0;
    for (int i = 0; i < nparents; ++i) topup += std::max(0, 2 - fixed_count[static_cast<std::size_t>(i)]);
    int needed = static_cast<int>(fixed_children.size());
    int free_fixed = 0;
    for (auto& fc : fixed_children)
      if (fc.second < 0) ++free_fixed;
    // free fixed nodes can serve as top-up children
    int wk = std::max(needed + std::max(0, topup - free_fixed), 2 * nparents);
    // filler tags
    while (static_cast<int>(tags[static_cast<std::size_t>(k)].size()) < wk)
      tags[static_cast<std::size_t>(k)].push_back(fresh_tag(k));

    // assign: fixed first, then fill deficits, then seeded
    auto sorted_tags = tags[static_cast<std::size_t>(k)];
    std::sort(sorted_tags.begin(), sorted_tags.end());
    std::vector<int> par(sorted_tags.size(), -1);
    std::vector<int> count(static_cast<std::size_t>(nparents), 0);
    auto tag_pos = [&](const Rational& tg) {
      return static_cast<int>(std::lower_bound(sorted_tags.begin(), sorted_tags.end(), tg) -
                              sorted_tags.begin());
    };
    for (const auto& [tg, pi] : fixed_children)
      if (pi >= 0) {
        par[static_cast<std::size_t>(tag_pos(tg))] = pi;
        ++count[static_cast<std::size_t>(pi)];
      }
    std::vector<int> deficit_parents;
    for (int i = 0; i < nparents; ++i)
      for (int d = count[static_cast<std::size_t>(i)]; d < 2; ++d) deficit_parents.push_back(i);
    rng.shuffle(deficit_parents);
    std::size_t dp = 0;
    for (std::size_t i = 0; i < par.size(); ++i) {
      if (par[i] >= 0) continue;
      int pi = dp < deficit_parents.size()
                   ? deficit_parents[dp++]
                   : static_cast<int>(rng.below(static_cast<std::uint64_t>(nparents)));
      par[i] = pi;
      ++count[static_cast<std::size_t>(pi)];
    }
    t.levels[static_cast<std::size_t>(k)] = sorted_tags;
    t.parents[static_cast<std::size_t>(k)] = par;
  }

  auto check = validate_tree(t);
  if (!check.ok())
    return Outcome<LeveledTree>::failure("internal: completion is malformed: " +
                                         check.violations.front());
  return Outcome<LeveledTree>::success(std::move(t));
}

LeveledTree build_spine_tree(int height, std::uint64_t seed) {
  SplitMix64 rng(seed);
  LeveledTree t;
  t.levels.resize(static_cast<std::size_t>(height));
  t.parents.resize(static_cast<std::size_t>(height));
  t.levels[0] = {Rational(0)};
  int spine = 0;  // index of the spine node in its level
  for (int k = 1; k < height; ++k) {
    t.levels[static_cast<std::size_t>(k)] = {Rational(0), Rational(1)};
    t.parents[static_cast<std::size_t>(k)] = {spine, spine};
    spine = static_cast<int>(rng.below(2));
  }
  return t;
}

}  // namespace treelab
