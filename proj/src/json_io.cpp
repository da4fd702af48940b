#include "treelab/json_io.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

namespace treelab {

json to_json(const Rational& r) { return json::array({r.num, r.den}); }

json to_json(const Node& n) { return json::array({n.level, to_json(n.tag)}); }

json to_json(const Condition& p) {
  json nodes = json::array();
  for (const auto& nd : p.nodes) nodes.push_back(to_json(nd));
  json covers = json::array();
  for (auto [i, j] : p.covers) covers.push_back(json::array({i, j}));
  return json{{"nodes", nodes}, {"covers", covers}};
}

json to_json(const LeveledTree& t) {
  json levels = json::array();
  for (const auto& lv : t.levels) {
    json row = json::array();
    for (const auto& tg : lv) row.push_back(to_json(tg));
    levels.push_back(row);
  }
  json parent = json::array();
  int offset = 0;
  for (std::size_t k = 0; k < t.levels.size(); ++k) {
    if (k > 0) {
      int prev_offset = offset - static_cast<int>(t.levels[k - 1].size());
      for (std::size_t i = 0; i < t.parents[k].size(); ++i)
        parent.push_back(json::array({offset + static_cast<int>(i), prev_offset + t.parents[k][i]}));
    }
    offset += static_cast<int>(t.levels[k].size());
  }
  return json{{"height", t.height()}, {"levels", levels}, {"parent", parent}};
}

json to_json(const PStarCondition& c) {
  json out = to_json(c.tree);
  json coloring = json::array();
  auto entries = c.coloring;
  std::sort(entries.begin(), entries.end(), [](const ColorEntry& a, const ColorEntry& b) {
    return std::tie(a.lower, a.upper, a.color) < std::tie(b.lower, b.upper, b.color);
  });
  for (const auto& e : entries) {
    json cvec = json::array(), avec = json::array();
    for (const auto& nd : e.lower) cvec.push_back(find_node(c.tree, nd));
    for (const auto& nd : e.upper) avec.push_back(find_node(c.tree, nd));
    coloring.push_back(json{{"c", cvec}, {"a", avec}, {"color", e.color}});
  }
  out["coloring"] = coloring;
  return out;
}

json to_json(const NormalityReport& r) {
  json split = json::array(), ext = json::array();
  for (const auto& nd : r.splitting_failures) split.push_back(to_json(nd));
  for (const auto& nd : r.extension_failures) ext.push_back(to_json(nd));
  return json{{"splitting_failures", split}, {"extension_failures", ext}};
}

json to_json(const ValidationReport& r) {
  return json{{"ok", r.ok()}, {"violations", r.violations}};
}

json to_json(const LinearTupleSequence& s) {
  json tuples = json::array();
  for (const auto& t : s.tuples) tuples.push_back(t);
  return json{{"n", s.arity()}, {"order_size", s.order_size}, {"tuples", tuples}};
}

json tree_sequence_to_json(const LeveledTree& t, const TreeTupleSequence& s) {
  TreeView tv(t);
  json tuples = json::array();
  for (const auto& tup : s.tuples) {
    json row = json::array();
    for (const auto& nd : tup) row.push_back(tv.id_of(nd));
    tuples.push_back(row);
  }
  json out{{"n", s.arity()}, {"tuples", tuples}};
  if (s.base) {
    json row = json::array();
    for (const auto& nd : *s.base) row.push_back(tv.id_of(nd));
    out["base"] = row;
  }
  return out;
}

namespace {
template <class T>
Outcome<T> parse_error(const std::string& what) {
  return Outcome<T>::failure("parse: " + what);
}
}  // namespace

Outcome<Rational> rational_from_json(const json& j) {
  if (j.is_number_integer()) return Outcome<Rational>::success(Rational(j.get<long long>()));
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    return parse_error<Rational>("a rational is [num, den]");
  long long den = j[1].get<long long>();
  if (den <= 0) return parse_error<Rational>("denominator must be positive");
  return Outcome<Rational>::success(Rational(j[0].get<long long>(), den));
}

Outcome<Node> node_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer())
    return parse_error<Node>("a node is [level, [num, den]]");
  auto r = rational_from_json(j[1]);
  if (!r) return Outcome<Node>::failure(r.errors());
  int lv = j[0].get<int>();
  if (lv < 0) return parse_error<Node>("levels are natural numbers");
  return Outcome<Node>::success(Node{lv, *r});
}

Condition normalize_covers(Condition p) {
  OrderView ov(p);
  if (ov.closure_had_cycle()) return p;
  std::vector<std::pair<Node, Node>> rel;
  const int n = static_cast<int>(p.nodes.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (ov.less(i, j)) rel.emplace_back(p.nodes[static_cast<std::size_t>(i)], p.nodes[static_cast<std::size_t>(j)]);
  auto rebuilt = make_condition(p.nodes, rel);
  if (!rebuilt) return p;
  return *rebuilt;
}

Outcome<Condition> condition_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("covers"))
    return parse_error<Condition>("a condition is {nodes, covers}");
  std::vector<Node> listed;
  for (const auto& nj : j["nodes"]) {
    auto n = node_from_json(nj);
    if (!n) return Outcome<Condition>::failure(n.errors());
    listed.push_back(*n);
  }
  // sort, remembering where each listed node went
  std::vector<int> order(listed.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return listed[static_cast<std::size_t>(a)] < listed[static_cast<std::size_t>(b)]; });
  std::vector<int> pos(listed.size());
  Condition out;
  for (std::size_t r = 0; r < order.size(); ++r) {
    pos[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
    out.nodes.push_back(listed[static_cast<std::size_t>(order[r])]);
  }
  for (const auto& cj : j["covers"]) {
    if (!cj.is_array() || cj.size() != 2 || !cj[0].is_number_integer() || !cj[1].is_number_integer())
      return parse_error<Condition>("covers are index pairs [i, j]");
    long long a = cj[0].get<long long>(), b = cj[1].get<long long>();
    if (a < 0 || b < 0 || a >= static_cast<long long>(listed.size()) ||
        b >= static_cast<long long>(listed.size()))
      return parse_error<Condition>("cover index out of range");
    out.covers.emplace_back(pos[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(b)]);
  }
  std::sort(out.covers.begin(), out.covers.end());
  out.covers.erase(std::unique(out.covers.begin(), out.covers.end()), out.covers.end());
  return Outcome<Condition>::success(normalize_covers(std::move(out)));
}

Outcome<LeveledTree> tree_from_json(const json& j) {
  if (!j.is_object() || !j.contains("levels") || !j.contains("parent"))
    return parse_error<LeveledTree>("a tree is {height, levels, parent}");
  LeveledTree t;
  for (const auto& row : j["levels"]) {
    std::vector<Rational> tags;
    for (const auto& tj : row) {
      auto r = rational_from_json(tj);
      if (!r) return Outcome<LeveledTree>::failure(r.errors());
      tags.push_back(*r);
    }
    std::sort(tags.begin(), tags.end());
    t.levels.push_back(std::move(tags));
  }
  if (j.contains("height") && j["height"].get<int>() != t.height())
    return parse_error<LeveledTree>("height does not match the level count");
  std::vector<int> offsets{0};
  for (const auto& lv : t.levels) offsets.push_back(offsets.back() + static_cast<int>(lv.size()));
  t.parents.resize(t.levels.size());
  for (std::size_t k = 1; k < t.levels.size(); ++k)
    t.parents[k].assign(t.levels[k].size(), -1);
  for (const auto& pj : j["parent"]) {
    if (!pj.is_array() || pj.size() != 2)
      return parse_error<LeveledTree>("parent entries are [child, parent] ids");
    int c = pj[0].get<int>(), p = pj[1].get<int>();
    if (c < 0 || c >= offsets.back() || p < 0 || p >= offsets.back())
      return parse_error<LeveledTree>("parent id out of range");
    auto level_of = [&](int id) {
      int lv = 0;
      while (offsets[static_cast<std::size_t>(lv + 1)] <= id) ++lv;
      return lv;
    };
    int lc = level_of(c), lp = level_of(p);
    if (lc != lp + 1) return parse_error<LeveledTree>("parent must sit one level below its child");
    t.parents[static_cast<std::size_t>(lc)][static_cast<std::size_t>(c - offsets[static_cast<std::size_t>(lc)])] =
        p - offsets[static_cast<std::size_t>(lp)];
  }
  for (std::size_t k = 1; k < t.parents.size(); ++k)
    for (std::size_t i = 0; i < t.parents[k].size(); ++i)
      if (t.parents[k][i] < 0)
        return parse_error<LeveledTree>("node at level " + std::to_string(k) + " has no parent");
  auto rep = validate_tree(t);
  if (!rep.ok()) return Outcome<LeveledTree>::failure(rep.violations);
  return Outcome<LeveledTree>::success(std::move(t));
}

Outcome<PStarCondition> pstar_from_json(const json& j) {
  auto base = condition_from_json(j);
  if (!base) return Outcome<PStarCondition>::failure(base.errors());
  PStarCondition out;
  out.tree = *base;
  if (j.contains("coloring")) {
    for (const auto& ej : j["coloring"]) {
      if (!ej.is_object() || !ej.contains("c") || !ej.contains("a") || !ej.contains("color"))
        return parse_error<PStarCondition>("coloring entries are {c, a, color}");
      ColorEntry e;
      for (const auto& ij : ej["c"]) {
        int idx = ij.get<int>();
        if (idx < 0 || idx >= static_cast<int>(out.tree.nodes.size()))
          return parse_error<PStarCondition>("coloring index out of range");
        e.lower.push_back(out.tree.nodes[static_cast<std::size_t>(idx)]);
      }
      for (const auto& ij : ej["a"]) {
        int idx = ij.get<int>();
        if (idx < 0 || idx >= static_cast<int>(out.tree.nodes.size()))
          return parse_error<PStarCondition>("coloring index out of range");
        e.upper.push_back(out.tree.nodes[static_cast<std::size_t>(idx)]);
      }
      e.color = ej["color"].get<unsigned>();
      out.coloring.push_back(std::move(e));
    }
  }
  return Outcome<PStarCondition>::success(std::move(out));
}

Outcome<LinearTupleSequence> linear_sequence_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tuples"))
    return parse_error<LinearTupleSequence>("a sequence is {n, order_size, tuples}");
  LinearTupleSequence s;
  int max_elem = -1;
  for (const auto& tj : j["tuples"]) {
    std::vector<int> t;
    for (const auto& ej : tj) {
      t.push_back(ej.get<int>());
      max_elem = std::max(max_elem, t.back());
    }
    s.tuples.push_back(std::move(t));
  }
  s.order_size = j.contains("order_size") ? j["order_size"].get<int>() : max_elem + 1;
  return Outcome<LinearTupleSequence>::success(std::move(s));
}

Outcome<TreeTupleSequence> tree_sequence_from_json(const json& j, const LeveledTree& t) {
  if (!j.is_object() || !j.contains("tuples"))
    return parse_error<TreeTupleSequence>("a sequence is {n, tuples[, base]}");
  TreeView tv(t);
  auto read_tuple = [&](const json& tj) -> Outcome<std::vector<Node>> {
    std::vector<Node> out;
    for (const auto& ej : tj) {
      int id = ej.get<int>();
      if (id < 0 || id >= tv.size())
        return Outcome<std::vector<Node>>::failure("parse: node id out of range");
      out.push_back(tv.node_of(id));
    }
    return Outcome<std::vector<Node>>::success(std::move(out));
  };
  TreeTupleSequence s;
  for (const auto& tj : j["tuples"]) {
    auto t2 = read_tuple(tj);
    if (!t2) return Outcome<TreeTupleSequence>::failure(t2.errors());
    s.tuples.push_back(*t2);
  }
  if (j.contains("base")) {
    auto b = read_tuple(j["base"]);
    if (!b) return Outcome<TreeTupleSequence>::failure(b.errors());
    s.base = *b;
  }
  return Outcome<TreeTupleSequence>::success(std::move(s));
}

Outcome<AmalgamationSpec> spec_from_json(const json& j, const Condition& p, const Condition& q) {
  if (!j.is_object() || !j.contains("alpha") || !j.contains("beta"))
    return parse_error<AmalgamationSpec>("a spec is {alpha, beta, matched}");
  AmalgamationSpec s;
  s.alpha = j["alpha"].get<int>();
  s.beta = j["beta"].get<int>();
  if (j.contains("matched")) {
    for (const auto& mj : j["matched"]) {
      if (!mj.is_array() || mj.size() != 2)
        return parse_error<AmalgamationSpec>("matched entries are [i, j] node indices");
      int bi = mj[0].get<int>(), ci = mj[1].get<int>();
      if (bi < 0 || bi >= static_cast<int>(p.nodes.size()) || ci < 0 ||
          ci >= static_cast<int>(q.nodes.size()))
        return parse_error<AmalgamationSpec>("matched index out of range");
      s.matched.emplace_back(p.nodes[static_cast<std::size_t>(bi)], q.nodes[static_cast<std::size_t>(ci)]);
    }
  }
  return Outcome<AmalgamationSpec>::success(std::move(s));
}

}  // namespace treelab
