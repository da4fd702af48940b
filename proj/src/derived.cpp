#include <algorithm>
#include <string>

#include "treelab/leveled_tree.hpp"

namespace treelab {

namespace {

constexpr long long kMaxDerivedNodes = 200000;

std::string tuple_str(const TreeView& tv, const std::vector<int>& ids) {
  std::string s = "(";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ",";
    s += tv.node_of(ids[i]).str();
  }
  return s + ")";
}

// Sorted list of level-`lv` descendants-or-self of `from`.
std::vector<int> cone_at_level(const TreeView& tv, int from, int lv) {
  std::vector<int> cur{from};
  int flv = tv.level_of(from);
  while (flv < lv) {
    std::vector<int> next;
    for (int id : cur)
      for (int c : tv.children_of(id)) next.push_back(c);
    cur = std::move(next);
    ++flv;
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

}  // namespace

Outcome<DerivedTree> derived_power(const LeveledTree& t, int n) {
  if (n < 1) return Outcome<DerivedTree>::failure("derived power: arity must be positive");
  TreeView tv(t);
  DerivedTree out;
  out.arity = n;
  long long total = 0;
  for (std::size_t k = 0; k < t.levels.size(); ++k) {
    long long w = static_cast<long long>(t.levels[k].size());
    long long count = 1;
    for (int i = 0; i < n; ++i) {
      count *= w;
      if (count > kMaxDerivedNodes) return Outcome<DerivedTree>::failure("derived power: too large");
    }
    total += count;
    if (total > kMaxDerivedNodes) return Outcome<DerivedTree>::failure("derived power: too large");

    std::vector<Rational> tags;
    std::vector<int> par;
    std::vector<std::vector<int>> labels;
    tags.reserve(static_cast<std::size_t>(count));
    labels.reserve(static_cast<std::size_t>(count));
    // tuples in lexicographic component order; ranks are mixed-radix
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (long long r = 0; r < count; ++r) {
      tags.push_back(Rational(r));
      std::vector<int> ids(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = tv.offset(static_cast<int>(k)) + idx[static_cast<std::size_t>(i)];
      labels.push_back(ids);
      if (k > 0) {
        long long prank = 0;
        long long pw = static_cast<long long>(t.levels[k - 1].size());
        for (int i = 0; i < n; ++i)
          prank = prank * pw + t.parents[k][static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        par.push_back(static_cast<int>(prank));
      }
      for (int i = n - 1; i >= 0; --i) {
        if (++idx[static_cast<std::size_t>(i)] < static_cast<int>(w)) break;
        idx[static_cast<std::size_t>(i)] = 0;
      }
    }
    out.tree.levels.push_back(std::move(tags));
    out.tree.parents.push_back(std::move(par));
    out.labels.push_back(std::move(labels));
  }
  return Outcome<DerivedTree>::success(std::move(out));
}

Outcome<DerivedTree> derived_at(const LeveledTree& t, const std::vector<Node>& base) {
  const int n = static_cast<int>(base.size());
  if (n < 1) return Outcome<DerivedTree>::failure("derived tree: empty base tuple");
  TreeView tv(t);
  std::vector<int> bids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int id = tv.id_of(base[static_cast<std::size_t>(i)]);
    if (id < 0)
      return Outcome<DerivedTree>::failure("derived tree: base node " +
                                           base[static_cast<std::size_t>(i)].str() +
                                           " is not in the tree");
    bids[static_cast<std::size_t>(i)] = id;
    if (base[static_cast<std::size_t>(i)].level != base[0].level)
      return Outcome<DerivedTree>::failure("derived tree: base nodes are not on one level");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (bids[static_cast<std::size_t>(i)] == bids[static_cast<std::size_t>(j)])
        return Outcome<DerivedTree>::failure("derived tree: base tuple is not injective");

  const int base_level = base[0].level;
  DerivedTree out;
  out.arity = n;

  // previous level's tuples, sorted, for parent rank lookup
  std::vector<std::vector<int>> prev;
  for (int lv = base_level; lv < t.height(); ++lv) {
    std::vector<std::vector<int>> cones(static_cast<std::size_t>(n));
    bool dead = false;
    long long count = 1;
    for (int i = 0; i < n; ++i) {
      cones[static_cast<std::size_t>(i)] = cone_at_level(tv, bids[static_cast<std::size_t>(i)], lv);
      count *= static_cast<long long>(cones[static_cast<std::size_t>(i)].size());
      if (cones[static_cast<std::size_t>(i)].empty()) dead = true;
      if (count > kMaxDerivedNodes) return Outcome<DerivedTree>::failure("derived tree: too large");
    }
    if (dead) break;  // a cone died; the derived tree ends below this level

    std::vector<std::vector<int>> tuples;
    tuples.reserve(static_cast<std::size_t>(count));
    std::vector<int> pick(static_cast<std::size_t>(n), 0);
    for (long long r = 0; r < count; ++r) {
      std::vector<int> ids(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        ids[static_cast<std::size_t>(i)] =
            cones[static_cast<std::size_t>(i)][static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
      tuples.push_back(std::move(ids));
      for (int i = n - 1; i >= 0; --i) {
        if (++pick[static_cast<std::size_t>(i)] < static_cast<int>(cones[static_cast<std::size_t>(i)].size())) break;
        pick[static_cast<std::size_t>(i)] = 0;
      }
    }
    // lexicographic by component ids matches the enumeration order
    std::vector<Rational> tags;
    std::vector<int> par;
    for (long long r = 0; r < count; ++r) {
      tags.push_back(Rational(r));
      if (lv > base_level) {
        std::vector<int> pids(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          pids[static_cast<std::size_t>(i)] = tv.parent_of(tuples[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)]);
        auto it = std::lower_bound(prev.begin(), prev.end(), pids);
        par.push_back(static_cast<int>(it - prev.begin()));
      }
    }
    out.tree.levels.push_back(std::move(tags));
    out.tree.parents.push_back(std::move(par));
    out.labels.push_back(tuples);
    prev = std::move(tuples);
  }
  return Outcome<DerivedTree>::success(std::move(out));
}

Outcome<SplitEmbeddingReport> split_embedding(const LeveledTree& t, const std::vector<Node>& base,
                                              int m) {
  const int n = static_cast<int>(base.size());
  if (n < 2) return Outcome<SplitEmbeddingReport>::failure("split: base arity must be at least 2");
  if (!(0 <= m && m < n - 1))
    return Outcome<SplitEmbeddingReport>::failure("split: position must satisfy 0 <= m < n-1");

  auto whole = derived_at(t, base);
  if (!whole) return Outcome<SplitEmbeddingReport>::failure(whole.errors());
  std::vector<Node> left_base(base.begin(), base.begin() + m + 1);
  std::vector<Node> right_base(base.begin() + m + 1, base.end());
  auto left = derived_at(t, left_base);
  if (!left) return Outcome<SplitEmbeddingReport>::failure(left.errors());
  auto right = derived_at(t, right_base);
  if (!right) return Outcome<SplitEmbeddingReport>::failure(right.errors());

  TreeView tv(t);
  TreeView dv(whole->tree);

  // rank of a component-id tuple inside a derived level
  auto rank_in = [](const DerivedTree& d, int lv, const std::vector<int>& ids) -> int {
    if (lv < 0 || lv >= d.tree.height()) return -1;
    const auto& tuples = d.labels[static_cast<std::size_t>(lv)];
    auto it = std::lower_bound(tuples.begin(), tuples.end(), ids);
    if (it == tuples.end() || *it != ids) return -1;
    return static_cast<int>(it - tuples.begin());
  };

  SplitEmbeddingReport rep;

  // order preservation, both directions, all pairs
  TreeView lv_view(left->tree), rv_view(right->tree);
  std::vector<std::pair<int, int>> halves(static_cast<std::size_t>(dv.size()));
  for (int id = 0; id < dv.size(); ++id) {
    int lv = dv.level_of(id);
    const auto& ids = whole->labels[static_cast<std::size_t>(lv)][static_cast<std::size_t>(dv.index_in_level(id))];
    std::vector<int> a(ids.begin(), ids.begin() + m + 1), b(ids.begin() + m + 1, ids.end());
    halves[static_cast<std::size_t>(id)] = {lv_view.offset(lv) + rank_in(*left, lv, a),
                                            rv_view.offset(lv) + rank_in(*right, lv, b)};
  }
  for (int u = 0; u < dv.size(); ++u) {
    auto [ul, ur] = halves[static_cast<std::size_t>(u)];
    for (int v = 0; v < dv.size(); ++v) {
      auto [vl, vr] = halves[static_cast<std::size_t>(v)];
      bool in_whole = dv.less_eq(u, v);
      bool in_product = lv_view.less_eq(ul, vl) && rv_view.less_eq(ur, vr);
      if (in_whole != in_product)
        rep.order_violations.push_back(
            "pair " + tuple_str(tv, whole->labels[static_cast<std::size_t>(dv.level_of(u))]
                                       [static_cast<std::size_t>(dv.index_in_level(u))]) +
            " , " + tuple_str(tv, whole->labels[static_cast<std::size_t>(dv.level_of(v))]
                                      [static_cast<std::size_t>(dv.index_in_level(v))]) +
            (in_whole ? " related in the tuple tree but not in the product"
                      : " related in the product but not in the tuple tree"));
    }
  }

  // density: every product pair is dominated by the image of some tuple,
  // obtained by lifting the lower half to the higher half's level
  for (int lq = 0; lq < left->tree.height(); ++lq) {
    for (std::size_t iq = 0; iq < left->labels[static_cast<std::size_t>(lq)].size(); ++iq) {
      for (int lr = 0; lr < right->tree.height(); ++lr) {
        for (std::size_t ir = 0; ir < right->labels[static_cast<std::size_t>(lr)].size(); ++ir) {
          const auto& qt = left->labels[static_cast<std::size_t>(lq)][iq];
          const auto& rt = right->labels[static_cast<std::size_t>(lr)][ir];
          int target = std::max(lq, lr);
          // lift each component to `target` (levels are relative to the base)
          std::vector<int> ids;
          bool found = true;
          for (int c : qt) {
            auto cone = cone_at_level(tv, c, base[0].level + target);
            if (cone.empty()) {
              found = false;
              break;
            }
            ids.push_back(cone.front());
          }
          for (int c : rt) {
            if (!found) break;
            auto cone = cone_at_level(tv, c, base[0].level + target);
            if (cone.empty()) {
              found = false;
              break;
            }
            ids.push_back(cone.front());
          }
          if (found && rank_in(*whole, target, ids) < 0) found = false;
          if (!found)
            rep.density_violations.push_back("product pair " + tuple_str(tv, qt) + " , " +
                                             tuple_str(tv, rt) +
                                             " has no image above it (a cone dies early)");
        }
      }
    }
  }
  return Outcome<SplitEmbeddingReport>::success(std::move(rep));
}

}  // namespace treelab
