#include "treelab/lex.hpp"

#include <algorithm>

namespace treelab {

const char* ordering_name(Ordering o) {
  switch (o) {
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    case Ordering::greater: return "greater";
  }
  return "?";
}

Ordering LexView::cmp(int a, int b) const {
  if (a == b) return Ordering::equal;
  int la = tv_.level_of(a), lb = tv_.level_of(b);
  int m = std::min(la, lb);
  int x = tv_.ancestor_at(a, m), y = tv_.ancestor_at(b, m);
  if (x == y) {
    // comparable: the lower node comes first
    return la < lb ? Ordering::less : Ordering::greater;
  }
  // descend together to just above the meet (or to the roots)
  while (m > 0) {
    int px = tv_.parent_of(x), py = tv_.parent_of(y);
    if (px == py) break;
    x = px;
    y = py;
    --m;
  }
  // x and y are the successors of the meet along each branch; with
  // different roots they are the roots themselves (virtual common root)
  const Node nx = tv_.node_of(x), ny = tv_.node_of(y);
  return nx.tag < ny.tag ? Ordering::less : Ordering::greater;
}

Outcome<Ordering> lex_compare(const LeveledTree& t, const Node& a, const Node& b) {
  TreeView tv(t);
  int ia = tv.id_of(a), ib = tv.id_of(b);
  if (ia < 0) return Outcome<Ordering>::failure("lex: node " + a.str() + " is not in the tree");
  if (ib < 0) return Outcome<Ordering>::failure("lex: node " + b.str() + " is not in the tree");
  LexView lv(t);
  return Outcome<Ordering>::success(lv.cmp(ia, ib));
}

std::vector<MeetBoundViolation> lex_meet_violations(const LeveledTree& t) {
  std::vector<MeetBoundViolation> out;
  LexView lx(t);
  const TreeView& tv = lx.view();
  const int n = tv.size();
  std::vector<int> level(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) level[static_cast<std::size_t>(i)] = tv.level_of(i);
  std::vector<signed char> below(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  std::vector<int> meets(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      below[static_cast<std::size_t>(i * n + j)] = lx.cmp(i, j) == Ordering::less ? 1 : 0;
      meets[static_cast<std::size_t>(i * n + j)] = tv.meet_level(i, j);
    }

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || !below[static_cast<std::size_t>(a * n + b)]) continue;
      int meet = meets[static_cast<std::size_t>(a * n + b)];
      if (meet < 0) continue;  // no common lower bound, nothing to violate
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (level[static_cast<std::size_t>(c)] >= level[static_cast<std::size_t>(a)] ||
            level[static_cast<std::size_t>(c)] >= level[static_cast<std::size_t>(b)])
          continue;
        if (!below[static_cast<std::size_t>(a * n + c)] || !below[static_cast<std::size_t>(c * n + b)])
          continue;
        // every common lower bound of a and b must sit strictly below c
        for (int dl = level[static_cast<std::size_t>(c)]; dl <= meet; ++dl) {
          int d = tv.ancestor_at(a, dl);
          out.push_back({tv.node_of(a), tv.node_of(b), tv.node_of(c), tv.node_of(d)});
        }
      }
    }
  }
  return out;
}

Outcome<bool> check_forced_lex(const Condition& p, const ForcedLexConfig& cfg, int completions,
                               std::uint64_t seed) {
  std::vector<std::string> errs;
  auto vr = validate_condition(p);
  if (!vr.ok()) {
    for (auto& v : vr.violations) errs.push_back("input: " + v);
    return Outcome<bool>::failure(std::move(errs));
  }
  const Node& x = cfg.fork;
  const Node& y = cfg.left;
  const Node& z = cfg.right;
  const Node& a = cfg.left_top;
  const Node& b = cfg.right_top;
  const Node* all[5] = {&x, &y, &z, &a, &b};
  for (int i = 0; i < 5; ++i) {
    if (find_node(p, *all[i]) < 0)
      errs.push_back("config: node " + all[i]->str() + " is not in the condition");
    for (int j = i + 1; j < 5; ++j)
      if (*all[i] == *all[j]) errs.push_back("config: the five nodes are not distinct");
  }
  if (!errs.empty()) return Outcome<bool>::failure(std::move(errs));
  OrderView ov(p);
  auto idx = [&](const Node& nd) { return find_node(p, nd); };
  if (!(ov.less(idx(x), idx(y)) && ov.less(idx(y), idx(a))))
    errs.push_back("config: the chain fork < left < left_top does not hold");
  if (!(ov.less(idx(x), idx(z)) && ov.less(idx(z), idx(b))))
    errs.push_back("config: the chain fork < right < right_top does not hold");
  if (!(y.level == x.level + 1 && z.level == x.level + 1))
    errs.push_back("config: left and right must sit one level above the fork");
  if (!(y.tag < z.tag)) errs.push_back("config: tag(left) must be below tag(right)");
  if (!errs.empty()) return Outcome<bool>::failure(std::move(errs));

  for (int k = 0; k < completions; ++k) {
    auto t = build_completion(p, seed + static_cast<std::uint64_t>(k) * 0x9e3779b9ULL);
    if (!t) return Outcome<bool>::failure(t.errors());
    auto cmp = lex_compare(*t, a, b);
    if (!cmp) return Outcome<bool>::failure(cmp.errors());
    if (*cmp != Ordering::less) return Outcome<bool>::success(false);
  }
  return Outcome<bool>::success(true);
}

DoubledOrder double_order(int base_size) { return DoubledOrder{base_size}; }

std::vector<std::pair<int, int>> doubling_witness(int base_size) {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(base_size));
  for (int a = 0; a < base_size; ++a) out.emplace_back(2 * a, 2 * a + 1);
  return out;
}

const char* pair_relation_name(PairRelation r) {
  switch (r) {
    case PairRelation::before: return "before";
    case PairRelation::nested: return "nested";
    case PairRelation::after: return "after";
    case PairRelation::crossing: return "crossing";
    case PairRelation::touching: return "touching";
  }
  return "?";
}

Outcome<PairRelation> classify_pair_relation(std::pair<int, int> p1, std::pair<int, int> p2) {
  auto [a, b] = p1;
  auto [c, d] = p2;
  if (!(a < b) || !(c < d))
    return Outcome<PairRelation>::failure("classify: each pair must be increasing");
  if (a == c || a == d || b == c || b == d)
    return Outcome<PairRelation>::failure("classify: the four endpoints must be distinct");
  if (b < c) return Outcome<PairRelation>::success(PairRelation::before);
  if (d < a) return Outcome<PairRelation>::success(PairRelation::after);
  if ((a < c && d < b) || (c < a && b < d))
    return Outcome<PairRelation>::success(PairRelation::nested);
  return Outcome<PairRelation>::success(PairRelation::crossing);
}

}  // namespace treelab
