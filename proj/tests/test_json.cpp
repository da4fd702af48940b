#include "doctest.h"
#include "treelab/enumerate.hpp"
#include "treelab/json_io.hpp"

#include <nlohmann/json.hpp>

using namespace treelab;

namespace {
Node nd(int level, long long num, long long den = 1) { return Node{level, Rational(num, den)}; }
}  // namespace

TEST_CASE("condition round trip is canonical") {
  int count = 0;
  for_each_condition(4, 4, true, [&](const Condition& p) {
    if (++count > 500) return;
    auto j = to_json(p);
    auto back = condition_from_json(j);
    REQUIRE(back.ok());
    CHECK(*back == p);
    CHECK(to_json(*back).dump() == j.dump());
  });
}

TEST_CASE("covers and the full order parse to the same condition") {
  json full = {{"nodes", json::array({json::array({0, json::array({0, 1})}),
                                      json::array({1, json::array({0, 1})}),
                                      json::array({3, json::array({0, 1})})})},
               {"covers", json::array({json::array({0, 1}), json::array({1, 2}),
                                       json::array({0, 2})})}};
  json covers_only = full;
  covers_only["covers"] = json::array({json::array({0, 1}), json::array({1, 2})});
  auto a = condition_from_json(full);
  auto b = condition_from_json(covers_only);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(*a == *b);
  CHECK(validate_condition(*a).ok() == validate_condition(*b).ok());
}

TEST_CASE("unsorted node files parse with remapped covers") {
  json j = {{"nodes", json::array({json::array({2, json::array({0, 1})}),
                                   json::array({0, json::array({0, 1})})})},
            {"covers", json::array({json::array({1, 0})})}};  // (0,0) -> (2,0)
  auto p = condition_from_json(j);
  REQUIRE(p.ok());
  CHECK(validate_condition(*p).ok());
  CHECK(p->nodes.front() == nd(0, 0));
  CHECK(p->covers == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("tree round trip") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto t = sample_pseudo_generic(seed, 4);
    auto j = to_json(t);
    auto back = tree_from_json(j);
    REQUIRE(back.ok());
    CHECK(to_json(*back).dump() == j.dump());
  }
  CHECK(!tree_from_json(json{{"levels", json::array()}, {"parent", json::array()},
                             {"height", 3}})
             .ok());
}

TEST_CASE("colored condition round trip") {
  PStarCondition c;
  auto base = make_condition({nd(0, 0), nd(0, 1), nd(2, 0), nd(2, 1)},
                             {{nd(0, 0), nd(2, 0)}, {nd(0, 1), nd(2, 1)}});
  REQUIRE(base.ok());
  c.tree = *base;
  c.coloring.push_back({{nd(0, 0), nd(0, 1)}, {nd(2, 0), nd(2, 1)}, 5});
  auto j = to_json(c);
  auto back = pstar_from_json(j);
  REQUIRE(back.ok());
  CHECK(back->tree == c.tree);
  REQUIRE(back->coloring.size() == 1);
  CHECK(back->coloring[0] == c.coloring[0]);
  CHECK(to_json(*back).dump() == j.dump());
}

TEST_CASE("sequence round trips") {
  auto s = sample_linear_sequence(7, 3, 5);
  auto back = linear_sequence_from_json(to_json(s));
  REQUIRE(back.ok());
  CHECK(back->order_size == s.order_size);
  CHECK(back->tuples == s.tuples);

  auto t = sample_pseudo_generic(3, 4);
  TreeTupleSequence q;
  q.tuples = {{nd(0, 0)}, {nd(1, 0)}};
  auto j = tree_sequence_to_json(t, q);
  auto qb = tree_sequence_from_json(j, t);
  REQUIRE(qb.ok());
  CHECK(qb->tuples == q.tuples);
}
