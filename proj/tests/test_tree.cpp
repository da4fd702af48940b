#include <algorithm>

#include "doctest.h"
#include "support/oracles.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/json_io.hpp"
#include "treelab/leveled_tree.hpp"
#include "treelab/rng.hpp"

#include <nlohmann/json.hpp>

using namespace treelab;

namespace {
Node nd(int level, long long num, long long den = 1) { return Node{level, Rational(num, den)}; }

// full binary tree of the given height over one root
LeveledTree binary(int height) {
  std::vector<int> widths;
  for (int k = 0; k < height; ++k) widths.push_back(1 << k);
  LeveledTree t;
  t.levels.resize(static_cast<std::size_t>(height));
  t.parents.resize(static_cast<std::size_t>(height));
  for (int k = 0; k < height; ++k) {
    for (int i = 0; i < widths[static_cast<std::size_t>(k)]; ++i)
      t.levels[static_cast<std::size_t>(k)].push_back(Rational(i));
    if (k > 0)
      for (int i = 0; i < widths[static_cast<std::size_t>(k)]; ++i)
        t.parents[static_cast<std::size_t>(k)].push_back(i / 2);
  }
  return t;
}

LeveledTree path(int height) {
  LeveledTree t;
  t.levels.resize(static_cast<std::size_t>(height));
  t.parents.resize(static_cast<std::size_t>(height));
  for (int k = 0; k < height; ++k) {
    t.levels[static_cast<std::size_t>(k)] = {Rational(0)};
    if (k > 0) t.parents[static_cast<std::size_t>(k)] = {0};
  }
  return t;
}
}  // namespace

TEST_CASE("delta counts the common lower set") {
  auto t = binary(3);
  CHECK(*delta(t, nd(0, 0), nd(1, 0)) == 1);  // comparable: ht(root)+1
  CHECK(*delta(t, nd(0, 0), nd(0, 0)) == 1);
  CHECK(*delta(t, nd(1, 0), nd(1, 1)) == 1);  // siblings share just the root
  CHECK(*delta(t, nd(2, 0), nd(2, 1)) == 2);
  CHECK(*delta(t, nd(2, 0), nd(2, 3)) == 1);
  CHECK(!delta(t, nd(0, 0), nd(7, 7)).ok());
}

TEST_CASE("delta is symmetric and matches the naive count") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto t = sample_pseudo_generic(seed, 4);
    auto nodes = oracle::all_nodes(t);
    for (const auto& x : nodes)
      for (const auto& y : nodes) {
        int d = *delta(t, x, y);
        CHECK(d == *delta(t, y, x));
        CHECK(d == oracle::naive_delta(t, x, y));
        // the identity for the comparable case
        if (oracle::naive_tree_le(t, x, y)) CHECK(d == x.level + 1);
        if (d > 0) {
          // max common lower bound sits at delta - 1
          CHECK(*delta(t, x, y) - 1 >= 0);
        }
      }
  }
}

TEST_CASE("projection follows parent links") {
  LeveledTree t;
  t.levels = {{Rational(0)}, {Rational(3)}, {Rational(7)}};
  t.parents = {{}, {0}, {0}};
  CHECK(*projection(t, nd(2, 7), 1) == nd(1, 3));
  CHECK(*projection(t, nd(2, 7), 2) == nd(2, 7));
  CHECK(*projection(t, nd(2, 7), 0) == nd(0, 0));
  CHECK(!projection(t, nd(1, 3), 2).ok());
}

TEST_CASE("normality reports splitting and extension failures") {
  CHECK(check_normal(binary(3)).normal());
  auto p = check_normal(path(3));
  CHECK(p.splitting_failures.size() == 2);  // both non-top nodes
  CHECK(p.extension_failures.empty());
  CHECK(check_normal(path(1)).normal());
}

TEST_CASE("maximum chain and antichain on standard shapes") {
  auto t = binary(3);
  CHECK(max_chain(t).size() == 3);
  auto anti = max_antichain(t);
  CHECK(anti.size() == 4);
  for (const auto& x : anti) CHECK(x.level == 2);
  CHECK(max_antichain(path(4)).size() == 1);
  CHECK(max_chain(path(4)).size() == 4);
}

TEST_CASE("chain and antichain match the exponential search with ties") {
  int checked = 0;
  for_each_leveled_tree(1, 7, [&](const LeveledTree& t) {
    ++checked;
    CHECK(max_chain(t) == oracle::naive_extremal_set(t, true));
    CHECK(max_antichain(t) == oracle::naive_extremal_set(t, false));
  });
  CHECK(checked > 100);
}

TEST_CASE("derived power squares the level sizes and keeps the order") {
  auto t = binary(3);
  auto d1 = derived_power(t, 1);
  REQUIRE(d1.ok());
  for (int k = 0; k < t.height(); ++k)
    CHECK(d1->tree.levels[static_cast<std::size_t>(k)].size() == t.levels[static_cast<std::size_t>(k)].size());

  auto d2 = derived_power(t, 2);
  REQUIRE(d2.ok());
  for (int k = 0; k < t.height(); ++k)
    CHECK(d2->tree.levels[static_cast<std::size_t>(k)].size() ==
          t.levels[static_cast<std::size_t>(k)].size() * t.levels[static_cast<std::size_t>(k)].size());
  CHECK(validate_tree(d2->tree).ok());

  // the derived order is exactly the componentwise order
  TreeView dv(d2->tree), tv(t);
  for (int u = 0; u < dv.size(); ++u)
    for (int v = 0; v < dv.size(); ++v) {
      const auto& lu = d2->labels[static_cast<std::size_t>(dv.level_of(u))]
                                 [static_cast<std::size_t>(dv.index_in_level(u))];
      const auto& lv = d2->labels[static_cast<std::size_t>(dv.level_of(v))]
                                 [static_cast<std::size_t>(dv.index_in_level(v))];
      bool comp = tv.less(lu[0], lv[0]) && tv.less(lu[1], lv[1]);
      CHECK(dv.less(u, v) == comp);
    }
}

TEST_CASE("derived tree above a base tuple multiplies cone widths") {
  auto t = binary(3);
  auto d = derived_at(t, {nd(1, 0), nd(1, 1)});
  REQUIRE(d.ok());
  REQUIRE(d->tree.height() == 2);
  CHECK(d->tree.levels[0].size() == 1);
  CHECK(d->tree.levels[1].size() == 4);  // 2 children each side
  CHECK(validate_tree(d->tree).ok());

  CHECK(!derived_at(t, {nd(1, 0), nd(1, 0)}).ok());  // not injective
}

TEST_CASE("split embedding is order preserving and dense on normal trees") {
  auto t = binary(3);
  auto rep = split_embedding(t, {nd(2, 0), nd(2, 2)}, 0);
  REQUIRE(rep.ok());
  CHECK(rep->order_violations.empty());
  CHECK(rep->density_violations.empty());

  auto deep = split_embedding(t, {nd(1, 0), nd(1, 1)}, 0);
  REQUIRE(deep.ok());
  CHECK(deep->ok());
}

TEST_CASE("split embedding on two parallel chains") {
  LeveledTree t;  // two roots, each a chain of height 3
  t.levels = {{Rational(0), Rational(1)}, {Rational(0), Rational(1)}, {Rational(0), Rational(1)}};
  t.parents = {{}, {0, 1}, {0, 1}};
  auto rep = split_embedding(t, {nd(0, 0), nd(0, 1)}, 0);
  REQUIRE(rep.ok());
  CHECK(rep->order_violations.empty());
  CHECK(rep->density_violations.empty());
}

TEST_CASE("split embedding reports a dying cone") {
  LeveledTree t;  // root 1 has no extension to level 1
  t.levels = {{Rational(0), Rational(1)}, {Rational(0), Rational(1)}};
  t.parents = {{}, {0, 0}};
  auto rep = split_embedding(t, {nd(0, 0), nd(0, 1)}, 0);
  REQUIRE(rep.ok());
  CHECK(rep->order_violations.empty());
  CHECK(!rep->density_violations.empty());
}

TEST_CASE("dense below finds the least dominating node") {
  auto t = binary(3);
  // all terminal nodes dominate everything
  std::vector<Node> leaves;
  for (int i = 0; i < 4; ++i) leaves.push_back(nd(2, i));
  auto a = dense_below(t, leaves);
  REQUIRE(a.has_value());
  CHECK(*a == nd(0, 0));

  // only the left subtree's leaves
  auto b = dense_below(t, {nd(2, 0), nd(2, 1)});
  REQUIRE(b.has_value());
  CHECK(*b == nd(1, 0));

  CHECK(!dense_below(t, {}).has_value());
}

TEST_CASE("dense below agrees with the brute force check") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto t = sample_pseudo_generic(seed, 4);
    auto nodes = oracle::all_nodes(t);
    SplitMix64 rng(seed * 77);
    std::vector<Node> target;
    for (const auto& x : nodes)
      if (rng.below(3) == 0) target.push_back(x);
    auto got = dense_below(t, target);
    auto want = oracle::naive_dense_below(t, target);
    CHECK(got == want);
  }
}

TEST_CASE("the seeded generator is deterministic and normal") {
  auto a = build_pseudo_generic(3, {1, 2, 4}, 11);
  auto b = build_pseudo_generic(3, {1, 2, 4}, 11);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(to_json(*a).dump() == to_json(*b).dump());
  CHECK(check_normal(*a).normal());
  CHECK(a->levels[2].size() == 4);

  auto h1 = build_pseudo_generic(1, {3}, 5);
  REQUIRE(h1.ok());
  CHECK(h1->height() == 1);

  CHECK(!build_pseudo_generic(3, {2, 3, 8}, 1).ok());  // 3 < 2*2
  CHECK(!build_pseudo_generic(2, {1}, 1).ok());
}

TEST_CASE("completions realize the condition exactly and are normal") {
  auto p = make_condition({nd(0, 0), nd(2, 0), nd(2, 1), nd(4, 0)},
                          {{nd(0, 0), nd(2, 0)}, {nd(2, 0), nd(4, 0)}});
  REQUIRE(p.ok());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto t = build_completion(*p, seed);
    REQUIRE(t.ok());
    CHECK(validate_tree(*t).ok());
    CHECK(check_normal(*t).normal());
    OrderView ov(*p);
    for (std::size_t i = 0; i < p->nodes.size(); ++i)
      for (std::size_t j = 0; j < p->nodes.size(); ++j) {
        bool in_p = ov.less(static_cast<int>(i), static_cast<int>(j));
        bool in_t = !(p->nodes[i] == p->nodes[j]) && oracle::naive_tree_le(*t, p->nodes[i], p->nodes[j]);
        CHECK(in_p == in_t);
      }
  }
  auto t1 = build_completion(*p, 3);
  auto t2 = build_completion(*p, 3);
  CHECK(to_json(*t1).dump() == to_json(*t2).dump());
}

TEST_CASE("spine trees fork at every spine level") {
  auto t = build_spine_tree(30, 9);
  CHECK(validate_tree(t).ok());
  TreeView tv(t);
  int forks = 0;
  for (int id = 0; id < tv.size(); ++id)
    if (tv.children_of(id).size() >= 2) ++forks;
  CHECK(forks == 29);
}

TEST_CASE("forest shapes and full enumeration coincide in count up to relabeling") {
  // rooted-tree counts per size feed the shape enumerator: 1, 1, 2, 4, 9
  int count5 = 0;
  for_each_forest_shape(5, 5, [&](const LeveledTree& t) {
    CHECK(validate_tree(t).ok());
    CHECK(t.node_count() == 5);
    ++count5;
  });
  // forests on 5 nodes: partitions into rooted trees = 20
  CHECK(count5 == 20);
}

TEST_CASE("delta minus one is the level of the maximum common lower node") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto t = sample_pseudo_generic(seed, 5);
    TreeView tv(t);
    for (int a = 0; a < tv.size(); ++a)
      for (int b = 0; b < tv.size(); ++b) {
        int d = tv.delta(a, b);
        CHECK(d - 1 == tv.meet_level(a, b));
        if (tv.less_eq(a, b)) CHECK(d == tv.level_of(a) + 1);
      }
  }
}

TEST_CASE("derived powers carry exactly the componentwise order on small trees") {
  int seen = 0;
  for_each_leveled_tree(1, 5, [&](const LeveledTree& t) {
    if (t.height() > 3) return;
    if (++seen % 7 != 0) return;  // representative slice, the corpus is dense
    TreeView tv(t);
    for (int n = 1; n <= 3; ++n) {
      auto d = derived_power(t, n);
      REQUIRE(d.ok());
      CHECK(validate_tree(d->tree).ok());
      TreeView dv(d->tree);
      for (int u = 0; u < dv.size(); ++u)
        for (int v = 0; v < dv.size(); ++v) {
          const auto& lu = d->labels[static_cast<std::size_t>(dv.level_of(u))]
                                     [static_cast<std::size_t>(dv.index_in_level(u))];
          const auto& lv2 = d->labels[static_cast<std::size_t>(dv.level_of(v))]
                                      [static_cast<std::size_t>(dv.index_in_level(v))];
          bool cw = true;
          for (int i = 0; i < n; ++i)
            if (!tv.less(lu[static_cast<std::size_t>(i)], lv2[static_cast<std::size_t>(i)])) cw = false;
          CHECK(dv.less(u, v) == cw);
        }
    }
  });
  CHECK(seen > 50);
}
