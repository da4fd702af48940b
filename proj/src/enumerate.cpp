#include "treelab/enumerate.hpp"

#include <algorithm>
#include <numeric>

#include "treelab/rng.hpp"

namespace treelab {

namespace {

// Applies a within-level relabeling (perm maps old index -> new index)
// and reports whether the relabeled parent array precedes the original.
bool relabeling_improves(const std::vector<int>& par, const std::vector<int>& perm) {
  const int n = static_cast<int>(par.size());
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int p = par[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
        p < 0 ? -1 : perm[static_cast<std::size_t>(p)];
  }
  return out < par;
}

// Visits all products of per-level permutations; returns false if any
// relabeling is lexicographically smaller.
bool is_least_labeling(const std::vector<int>& par, const std::vector<std::pair<int, int>>& groups) {
  std::vector<int> perm(par.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> group_perms;
  for (auto [start, len] : groups) {
    (void)start;
    std::vector<int> idx(static_cast<std::size_t>(len));
    std::iota(idx.begin(), idx.end(), 0);
    group_perms.push_back(idx);
  }
  // odometer over per-group permutations
  std::function<bool(std::size_t)> walk = [&](std::size_t g) -> bool {
    if (g == groups.size()) return !relabeling_improves(par, perm);
    auto [start, len] = groups[g];
    std::vector<int> idx(static_cast<std::size_t>(len));
    std::iota(idx.begin(), idx.end(), 0);
    do {
      for (int i = 0; i < len; ++i) perm[static_cast<std::size_t>(start + i)] = start + idx[static_cast<std::size_t>(i)];
      if (!walk(g + 1)) return false;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return true;
  };
  return walk(0);
}

struct CondScratch {
  std::vector<Node> nodes;
  std::vector<int> par;
  std::vector<std::pair<int, int>> groups;  // (start, len) per level block
};

void emit_condition(const CondScratch& s, bool up_to_relabel,
                    const std::function<void(const Condition&)>& fn) {
  if (up_to_relabel && !is_least_labeling(s.par, s.groups)) return;
  Condition c;
  c.nodes = s.nodes;
  for (std::size_t i = 0; i < s.par.size(); ++i)
    if (s.par[i] >= 0) c.covers.emplace_back(s.par[i], static_cast<int>(i));
  std::sort(c.covers.begin(), c.covers.end());
  fn(c);
}

void parents_rec(CondScratch& s, std::size_t i, bool up_to_relabel,
                 const std::function<void(const Condition&)>& fn) {
  if (i == s.nodes.size()) {
    emit_condition(s, up_to_relabel, fn);
    return;
  }
  s.par[i] = -1;
  parents_rec(s, i + 1, up_to_relabel, fn);
  for (std::size_t j = 0; j < i; ++j) {
    if (s.nodes[j].level >= s.nodes[i].level) break;  // nodes sorted by level
    s.par[i] = static_cast<int>(j);
    parents_rec(s, i + 1, up_to_relabel, fn);
  }
  s.par[i] = -1;
}

void level_multisets_rec(int max_nodes, int max_level, int next_level, CondScratch& s,
                         bool up_to_relabel, const std::function<void(const Condition&)>& fn) {
  // emit with the current node multiset
  s.par.assign(s.nodes.size(), -1);
  s.groups.clear();
  std::size_t i = 0;
  while (i < s.nodes.size()) {
    std::size_t j = i;
    while (j < s.nodes.size() && s.nodes[j].level == s.nodes[i].level) ++j;
    s.groups.emplace_back(static_cast<int>(i), static_cast<int>(j - i));
    i = j;
  }
  parents_rec(s, 0, up_to_relabel, fn);

  if (static_cast<int>(s.nodes.size()) >= max_nodes) return;
  for (int lv = next_level; lv < max_level; ++lv) {
    int count_here = 0;
    for (const auto& nd : s.nodes)
      if (nd.level == lv) ++count_here;
    s.nodes.push_back(Node{lv, Rational(count_here)});
    level_multisets_rec(max_nodes, max_level, lv, s, up_to_relabel, fn);
    s.nodes.pop_back();
  }
}

}  // namespace

void for_each_condition(int max_nodes, int max_level, bool up_to_relabel,
                        const std::function<void(const Condition&)>& fn) {
  CondScratch s;
  level_multisets_rec(max_nodes, max_level, 0, s, up_to_relabel, fn);
}

namespace {

// Canonicity of the fresh block under within-level permutations: the
// parent array over fresh positions (entries may reference base nodes,
// which stay fixed) must be lexicographically least.
bool fresh_block_canonical(const std::vector<Node>& fresh, const std::vector<int>& par, int nb) {
  std::vector<std::pair<int, int>> groups;
  std::size_t i = 0;
  while (i < fresh.size()) {
    std::size_t j = i;
    while (j < fresh.size() && fresh[j].level == fresh[i].level) ++j;
    if (j - i > 1) groups.emplace_back(static_cast<int>(i), static_cast<int>(j - i));
    i = j;
  }
  if (groups.empty()) return true;
  std::vector<int> perm(fresh.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::function<bool(std::size_t)> walk = [&](std::size_t g) -> bool {
    if (g == groups.size()) {
      std::vector<int> out(par.size());
      for (std::size_t k = 0; k < par.size(); ++k) {
        int p = par[k];
        if (p >= nb) p = nb + perm[static_cast<std::size_t>(p - nb)];
        out[static_cast<std::size_t>(perm[k])] = p;
      }
      return !(out < par);
    }
    auto [start, len] = groups[g];
    std::vector<int> idx(static_cast<std::size_t>(len));
    std::iota(idx.begin(), idx.end(), 0);
    do {
      for (int k = 0; k < len; ++k) perm[static_cast<std::size_t>(start + k)] = start + idx[static_cast<std::size_t>(k)];
      if (!walk(g + 1)) return false;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return true;
  };
  return walk(0);
}

void extension_parents_rec(const Condition& base, std::vector<Node>& fresh, std::vector<int>& par,
                           std::size_t i, bool up_to_relabel,
                           const std::function<void(const Condition&)>& fn) {
  const int nb = static_cast<int>(base.nodes.size());
  if (i == fresh.size()) {
    if (up_to_relabel && !fresh_block_canonical(fresh, par, nb)) return;
    Condition c;
    c.nodes = base.nodes;
    c.nodes.insert(c.nodes.end(), fresh.begin(), fresh.end());
    c.covers = base.covers;
    for (std::size_t k = 0; k < fresh.size(); ++k)
      if (par[k] >= 0) c.covers.emplace_back(par[k], nb + static_cast<int>(k));
    std::sort(c.covers.begin(), c.covers.end());
    fn(c);
    return;
  }
  par[i] = -1;
  extension_parents_rec(base, fresh, par, i + 1, up_to_relabel, fn);
  for (int j = 0; j < nb; ++j) {
    par[i] = j;
    extension_parents_rec(base, fresh, par, i + 1, up_to_relabel, fn);
  }
  for (std::size_t k = 0; k < i; ++k) {
    if (fresh[k].level >= fresh[i].level) break;
    par[i] = nb + static_cast<int>(k);
    extension_parents_rec(base, fresh, par, i + 1, up_to_relabel, fn);
  }
  par[i] = -1;
}

void extension_multisets_rec(const Condition& base, int extra, int lo, int hi,
                             std::vector<Node>& fresh, bool up_to_relabel,
                             const std::function<void(const Condition&)>& fn) {
  if (!fresh.empty()) {
    std::vector<int> par(fresh.size(), -1);
    extension_parents_rec(base, fresh, par, 0, up_to_relabel, fn);
  }
  if (static_cast<int>(fresh.size()) >= extra) return;
  int next = fresh.empty() ? lo : fresh.back().level;
  for (int lv = next; lv < hi; ++lv) {
    int count_here = 0;
    for (const auto& nd : fresh)
      if (nd.level == lv) ++count_here;
    fresh.push_back(Node{lv, Rational(count_here)});
    extension_multisets_rec(base, extra, lo, hi, fresh, up_to_relabel, fn);
    fresh.pop_back();
  }
}

}  // namespace

void for_each_extension(const Condition& base, int extra, int lo, int hi,
                        const std::function<void(const Condition&)>& fn, bool up_to_relabel) {
  std::vector<Node> fresh;
  extension_multisets_rec(base, extra, lo, hi, fresh, up_to_relabel, fn);
}

namespace {

void tree_parent_maps_rec(LeveledTree& t, int level, int slot,
                          const std::function<void(const LeveledTree&)>& fn) {
  if (level == t.height()) {
    fn(t);
    return;
  }
  const int width = static_cast<int>(t.levels[static_cast<std::size_t>(level)].size());
  if (slot == width) {
    tree_parent_maps_rec(t, level + 1, 0, fn);
    return;
  }
  const int parents = static_cast<int>(t.levels[static_cast<std::size_t>(level - 1)].size());
  for (int p = 0; p < parents; ++p) {
    t.parents[static_cast<std::size_t>(level)][static_cast<std::size_t>(slot)] = p;
    tree_parent_maps_rec(t, level, slot + 1, fn);
  }
}

}  // namespace

void for_each_leveled_tree(int min_nodes, int max_nodes,
                           const std::function<void(const LeveledTree&)>& fn) {
  // enumerate compositions by exact total, smallest first
  for (int n = std::max(1, min_nodes); n <= max_nodes; ++n) {
    std::vector<int> widths;
    std::function<void(int)> rec = [&](int remaining) {
      if (remaining == 0) {
        LeveledTree t;
        for (int w : widths) {
          std::vector<Rational> tags;
          for (int i = 0; i < w; ++i) tags.push_back(Rational(i));
          t.levels.push_back(std::move(tags));
        }
        t.parents.resize(t.levels.size());
        for (std::size_t k = 1; k < t.levels.size(); ++k)
          t.parents[k].assign(t.levels[k].size(), 0);
        if (t.height() == 1)
          fn(t);
        else
          tree_parent_maps_rec(t, 1, 0, fn);
        return;
      }
      for (int w = 1; w <= remaining; ++w) {
        widths.push_back(w);
        rec(remaining - w);
        widths.pop_back();
      }
    };
    rec(n);
  }
}

namespace {

// Canonical level sequences of rooted trees with n nodes.
std::vector<std::vector<int>> rooted_tree_level_sequences(int n) {
  std::vector<std::vector<int>> out;
  if (n <= 0) return out;
  std::vector<int> L(static_cast<std::size_t>(n));
  std::iota(L.begin(), L.end(), 1);  // the path
  out.push_back(L);
  if (n <= 2) return out;
  for (;;) {
    int p = -1;
    for (int i = n - 1; i >= 0; --i)
      if (L[static_cast<std::size_t>(i)] > 2) {
        p = i;
        break;
      }
    if (p < 0) break;
    int q = -1;
    for (int i = p - 1; i >= 0; --i)
      if (L[static_cast<std::size_t>(i)] == L[static_cast<std::size_t>(p)] - 1) {
        q = i;
        break;
      }
    for (int i = p; i < n; ++i) L[static_cast<std::size_t>(i)] = L[static_cast<std::size_t>(i - (p - q))];
    out.push_back(L);
  }
  return out;
}

struct ForestBuilder {
  // trees listed by (size, index) with their level sequences
  std::vector<std::vector<std::vector<int>>> by_size;  // by_size[s] = sequences of size s+1

  LeveledTree assemble(const std::vector<std::pair<int, int>>& multiset) const {
    int height = 0;
    for (auto [s, idx] : multiset)
      for (int d : by_size[static_cast<std::size_t>(s)][static_cast<std::size_t>(idx)])
        height = std::max(height, d);
    LeveledTree t;
    t.levels.resize(static_cast<std::size_t>(height));
    t.parents.resize(static_cast<std::size_t>(height));
    for (auto [s, idx] : multiset) {
      const auto& seq = by_size[static_cast<std::size_t>(s)][static_cast<std::size_t>(idx)];
      std::vector<int> stack;  // node position in its level, per depth
      for (int d : seq) {
        int lv = d - 1;
        int pos = static_cast<int>(t.levels[static_cast<std::size_t>(lv)].size());
        t.levels[static_cast<std::size_t>(lv)].push_back(Rational(pos));
        stack.resize(static_cast<std::size_t>(lv));
        if (lv > 0) t.parents[static_cast<std::size_t>(lv)].push_back(stack[static_cast<std::size_t>(lv - 1)]);
        stack.push_back(pos);
      }
    }
    return t;
  }
};

}  // namespace

void for_each_forest_shape(int min_nodes, int max_nodes,
                           const std::function<void(const LeveledTree&)>& fn) {
  ForestBuilder fb;
  fb.by_size.resize(static_cast<std::size_t>(max_nodes));
  for (int n = 1; n <= max_nodes; ++n)
    fb.by_size[static_cast<std::size_t>(n - 1)] = rooted_tree_level_sequences(n);

  std::vector<std::pair<int, int>> multiset;  // (size-1, index), nonincreasing
  std::function<void(int, int, int)> rec = [&](int total, int max_s, int max_idx) {
    if (total >= min_nodes && !multiset.empty()) fn(fb.assemble(multiset));
    for (int s = std::min(max_s, max_nodes - total - 1); s >= 0; --s) {
      int idx_limit = (s == max_s) ? max_idx : static_cast<int>(fb.by_size[static_cast<std::size_t>(s)].size()) - 1;
      for (int idx = idx_limit; idx >= 0; --idx) {
        multiset.emplace_back(s, idx);
        rec(total + s + 1, s, idx);
        multiset.pop_back();
      }
    }
  };
  rec(0, max_nodes - 1, static_cast<int>(fb.by_size[static_cast<std::size_t>(max_nodes - 1)].size()) - 1);
}

LeveledTree reinterleave(const LeveledTree& t, std::uint64_t seed) {
  SplitMix64 rng(seed);
  LeveledTree out = t;
  std::vector<std::vector<int>> perm(t.levels.size());
  for (std::size_t k = 0; k < t.levels.size(); ++k) {
    perm[k].resize(t.levels[k].size());
    std::iota(perm[k].begin(), perm[k].end(), 0);
    rng.shuffle(perm[k]);
  }
  for (std::size_t k = 1; k < t.levels.size(); ++k)
    for (std::size_t i = 0; i < t.parents[k].size(); ++i)
      out.parents[k][static_cast<std::size_t>(perm[k][i])] =
          perm[k - 1][static_cast<std::size_t>(t.parents[k][i])];
  return out;
}

LeveledTree sample_pseudo_generic(std::uint64_t seed, int max_height) {
  SplitMix64 rng(seed);
  int h = rng.range(2, std::max(2, max_height));
  std::vector<int> widths{1 + static_cast<int>(rng.below(2))};
  for (int k = 1; k < h; ++k)
    widths.push_back(2 * widths.back() + static_cast<int>(rng.below(2)));
  auto t = build_pseudo_generic(h, widths, rng.next());
  return *t;  // the schedule doubles by construction
}

LinearTupleSequence sample_linear_sequence(std::uint64_t seed, int max_arity, int max_tuples) {
  SplitMix64 rng(seed);
  int n = rng.range(1, std::max(1, max_arity));
  int count = rng.range(2, std::max(2, max_tuples));
  int order = n * count + rng.range(0, 5);
  std::vector<int> elems(static_cast<std::size_t>(order));
  std::iota(elems.begin(), elems.end(), 0);
  rng.shuffle(elems);
  LinearTupleSequence s;
  s.order_size = order;
  for (int x = 0; x < count; ++x) {
    std::vector<int> t(elems.begin() + static_cast<long>(x) * n,
                       elems.begin() + static_cast<long>(x + 1) * n);
    std::sort(t.begin(), t.end());
    s.tuples.push_back(std::move(t));
  }
  return s;
}

}  // namespace treelab
