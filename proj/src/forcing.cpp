#include "treelab/forcing.hpp"

#include <algorithm>
#include <functional>

namespace treelab {

namespace {

std::vector<std::pair<int, int>> reduce_masks(int n, const std::vector<std::uint64_t>& lower) {
  std::uint64_t upper[64] = {};
  for (int j = 0; j < n; ++j) {
    std::uint64_t m = lower[static_cast<std::size_t>(j)];
    while (m) {
      int i = __builtin_ctzll(m);
      m &= m - 1;
      upper[i] |= 1ULL << j;
    }
  }
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i) {
    std::uint64_t m = upper[i];
    while (m) {
      int j = __builtin_ctzll(m);
      m &= m - 1;
      if (upper[i] & lower[static_cast<std::size_t>(j)]) continue;  // something in between
      covers.emplace_back(i, j);
    }
  }
  return covers;
}

// Strict lower set of node j that lies below the level cut.
std::vector<Node> lower_set_below(const Condition& p, const OrderView& ov, int j, int cut) {
  std::vector<Node> out;
  std::uint64_t m = ov.lower_mask(j);
  while (m) {
    int i = __builtin_ctzll(m);
    m &= m - 1;
    if (p.nodes[static_cast<std::size_t>(i)].level < cut) out.push_back(p.nodes[static_cast<std::size_t>(i)]);
  }
  return out;  // already in (level, tag) order because nodes are sorted
}

// p restricted below `pcut` equals q restricted below `qcut`, compared
// in place: the restricted nodes are prefixes of the sorted node arrays
// and a level cut keeps exactly the covers inside the prefix.
bool common_parts_equal(const Condition& p, int pcut, const Condition& q, int qcut) {
  std::size_t np = 0, nq = 0;
  while (np < p.nodes.size() && p.nodes[np].level < pcut) ++np;
  while (nq < q.nodes.size() && q.nodes[nq].level < qcut) ++nq;
  if (np != nq) return false;
  for (std::size_t i = 0; i < np; ++i)
    if (!(p.nodes[i] == q.nodes[i])) return false;
  auto next_inside = [np](const std::vector<std::pair<int, int>>& covers, std::size_t& k) -> const std::pair<int, int>* {
    while (k < covers.size()) {
      const auto& c = covers[k];
      if (c.first < static_cast<int>(np) && c.second < static_cast<int>(np)) return &covers[k];
      ++k;
    }
    return nullptr;
  };
  std::size_t i = 0, j = 0;
  for (;;) {
    const auto* a = next_inside(p.covers, i);
    const auto* b = next_inside(q.covers, j);
    if (!a && !b) return true;
    if (!a || !b || !(*a == *b)) return false;
    ++i;
    ++j;
  }
}

// Minimal element of {z : z <= of and level(z) >= cut}, or -1.
int minimal_above_cut_below(const Condition& p, const OrderView& ov, int of, int cut) {
  if (p.nodes[static_cast<std::size_t>(of)].level < cut) return -1;
  int best = of;
  std::uint64_t m = ov.lower_mask(of);
  while (m) {
    int i = __builtin_ctzll(m);
    m &= m - 1;
    if (p.nodes[static_cast<std::size_t>(i)].level >= cut && ov.less(i, best)) best = i;
  }
  return best;
}

}  // namespace

Outcome<Condition> insert_node(const Condition& p, const InsertionRequest& req) {
  std::vector<std::string> errs;
  auto vr = validate_condition(p);
  if (!vr.ok()) {
    for (auto& v : vr.violations) errs.push_back("input: " + v);
    return Outcome<Condition>::failure(std::move(errs));
  }
  int ai = find_node(p, req.pred), bi = find_node(p, req.succ);
  if (ai < 0) errs.push_back("insert: predecessor " + req.pred.str() + " is not in the condition");
  if (bi < 0) errs.push_back("insert: successor " + req.succ.str() + " is not in the condition");
  if (find_node(p, req.fresh) >= 0)
    errs.push_back("insert: node " + req.fresh.str() + " is already present");
  if (!errs.empty()) return Outcome<Condition>::failure(std::move(errs));

  if (!std::binary_search(p.covers.begin(), p.covers.end(), std::make_pair(ai, bi)))
    errs.push_back("insert: " + req.pred.str() + " is not the immediate predecessor of " +
                   req.succ.str());
  if (!(req.pred.level < req.fresh.level && req.fresh.level < req.succ.level))
    errs.push_back("insert: level of " + req.fresh.str() + " is not strictly between " +
                   req.pred.str() + " and " + req.succ.str());
  if (!errs.empty()) return Outcome<Condition>::failure(std::move(errs));

  OrderView ov(p);
  std::vector<Node> nodes = p.nodes;
  nodes.push_back(req.fresh);
  std::sort(nodes.begin(), nodes.end());
  const int n = static_cast<int>(nodes.size());
  int xi = find_node(Condition{nodes, {}}, req.fresh);

  // old index -> new index (everything at or after the insertion point shifts)
  auto remap = [&](int old) { return old >= xi ? old + 1 : old; };

  // c < d iff c <_p d, or c <=_p pred and d = fresh, or c = fresh and succ <=_p d
  std::vector<std::uint64_t> lower(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < ov.size(); ++j) {
    std::uint64_t m = ov.lower_mask(j);
    std::uint64_t out = 0;
    while (m) {
      int i = __builtin_ctzll(m);
      m &= m - 1;
      out |= 1ULL << remap(i);
    }
    lower[static_cast<std::size_t>(remap(j))] = out;
  }
  std::uint64_t below_x = 0;
  for (int i = 0; i < ov.size(); ++i)
    if (ov.less_eq(i, ai)) below_x |= 1ULL << remap(i);
  lower[static_cast<std::size_t>(xi)] = below_x;
  for (int j = 0; j < ov.size(); ++j)
    if (ov.less_eq(bi, j)) lower[static_cast<std::size_t>(remap(j))] |= 1ULL << xi;

  Condition out;
  out.nodes = std::move(nodes);
  out.covers = reduce_masks(n, lower);
  auto check = validate_condition(out);
  if (!check.ok())
    return Outcome<Condition>::failure("internal: insertion produced an invalid condition: " +
                                       check.violations.front());
  return Outcome<Condition>::success(std::move(out));
}

Outcome<Condition> multi_insert(const Condition& p, const std::vector<InsertionRequest>& reqs) {
  for (std::size_t i = 0; i < reqs.size(); ++i)
    for (std::size_t j = i + 1; j < reqs.size(); ++j) {
      if (reqs[i].pred == reqs[j].pred && reqs[i].succ == reqs[j].succ)
        return Outcome<Condition>::failure("multi-insert: duplicate pair (" + reqs[i].pred.str() +
                                           "," + reqs[i].succ.str() + ")");
      if (reqs[i].fresh == reqs[j].fresh)
        return Outcome<Condition>::failure("multi-insert: duplicate new node " +
                                           reqs[i].fresh.str());
    }
  Condition cur = p;
  for (const auto& r : reqs) {
    auto next = insert_node(cur, r);
    if (!next) return next;
    cur = std::move(*next);
  }
  return Outcome<Condition>::success(std::move(cur));
}

Outcome<Condition> amalgamate(const Condition& p, const Condition& q,
                              const AmalgamationSpec& spec) {
  std::vector<std::string> errs;
  auto vp = validate_condition(p);
  auto vq = validate_condition(q);
  for (auto& v : vp.violations) errs.push_back("p: " + v);
  for (auto& v : vq.violations) errs.push_back("q: " + v);
  if (!errs.empty()) return Outcome<Condition>::failure(std::move(errs));

  const int alpha = spec.alpha, beta = spec.beta;
  if (!(alpha < beta)) errs.push_back("spec: alpha must be less than beta");
  if (!common_parts_equal(p, alpha, q, beta))
    errs.push_back("hypothesis 1: p below alpha differs from q below beta");
  OrderView ovp(p), ovq(q);
  for (const auto& x : p.nodes)
    if (x.level >= alpha && x.level >= beta)
      errs.push_back("hypothesis 2: node " + x.str() + " of p at or above beta");
  if (!errs.empty()) return Outcome<Condition>::failure(std::move(errs));

  const int nmatch = static_cast<int>(spec.matched.size());
  std::vector<int> bs(static_cast<std::size_t>(nmatch)), cs(static_cast<std::size_t>(nmatch));
  for (int i = 0; i < nmatch; ++i) {
    const auto& [b, c] = spec.matched[static_cast<std::size_t>(i)];
    int bi = find_node(p, b), ci = find_node(q, c);
    if (bi < 0 || b.level < alpha)
      errs.push_back("hypothesis 3: matched node " + b.str() + " is not in p above alpha");
    if (ci < 0 || c.level < beta)
      errs.push_back("hypothesis 3: matched node " + c.str() + " is not in q above beta");
    bs[static_cast<std::size_t>(i)] = bi;
    cs[static_cast<std::size_t>(i)] = ci;
  }
  if (!errs.empty()) return Outcome<Condition>::failure(std::move(errs));

  for (int i = 0; i < nmatch; ++i) {
    for (int j = i + 1; j < nmatch; ++j) {
      if (bs[static_cast<std::size_t>(i)] == bs[static_cast<std::size_t>(j)] ||
          ovp.comparable(bs[static_cast<std::size_t>(i)], bs[static_cast<std::size_t>(j)]))
        errs.push_back("hypothesis 3: matched nodes " + spec.matched[static_cast<std::size_t>(i)].first.str() +
                       " and " + spec.matched[static_cast<std::size_t>(j)].first.str() +
                       " are comparable in p");
      if (cs[static_cast<std::size_t>(i)] == cs[static_cast<std::size_t>(j)])
        errs.push_back("hypothesis 3: matched node " + spec.matched[static_cast<std::size_t>(i)].second.str() +
                       " reused on the q side");
    }
    // c_i minimal in q above beta
    std::uint64_t m = ovq.lower_mask(cs[static_cast<std::size_t>(i)]);
    while (m) {
      int v = __builtin_ctzll(m);
      m &= m - 1;
      if (q.nodes[static_cast<std::size_t>(v)].level >= beta) {
        errs.push_back("hypothesis 3: " + spec.matched[static_cast<std::size_t>(i)].second.str() +
                       " is not minimal in q above beta");
        break;
      }
    }
    if (lower_set_below(p, ovp, bs[static_cast<std::size_t>(i)], alpha) !=
        lower_set_below(q, ovq, cs[static_cast<std::size_t>(i)], beta))
      errs.push_back("hypothesis 4: common-part lower sets of " +
                     spec.matched[static_cast<std::size_t>(i)].first.str() + " and " +
                     spec.matched[static_cast<std::size_t>(i)].second.str() + " differ");
  }
  if (!errs.empty()) return Outcome<Condition>::failure(std::move(errs));

  // Underlying set p union q; three relation clauses.
  std::vector<Node> nodes = p.nodes;
  for (const auto& x : q.nodes)
    if (find_node(p, x) < 0) nodes.push_back(x);
  std::sort(nodes.begin(), nodes.end());
  const int n = static_cast<int>(nodes.size());
  if (n > 64) return Outcome<Condition>::failure("merge exceeds 64 nodes");
  Condition shell{nodes, {}};

  std::vector<int> ploc(p.nodes.size()), qloc(q.nodes.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) ploc[i] = find_node(shell, p.nodes[i]);
  for (std::size_t i = 0; i < q.nodes.size(); ++i) qloc[i] = find_node(shell, q.nodes[i]);

  std::vector<std::uint64_t> lower(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < ovp.size(); ++j) {
    std::uint64_t m = ovp.lower_mask(j);
    while (m) {
      int i = __builtin_ctzll(m);
      m &= m - 1;
      lower[static_cast<std::size_t>(ploc[static_cast<std::size_t>(j)])] |= 1ULL << ploc[static_cast<std::size_t>(i)];
    }
  }
  for (int j = 0; j < ovq.size(); ++j) {
    std::uint64_t m = ovq.lower_mask(j);
    while (m) {
      int i = __builtin_ctzll(m);
      m &= m - 1;
      lower[static_cast<std::size_t>(qloc[static_cast<std::size_t>(j)])] |= 1ULL << qloc[static_cast<std::size_t>(i)];
    }
  }
  for (int k = 0; k < nmatch; ++k) {
    std::uint64_t below = 0;  // b <=_p b_k, in merged indices
    for (int i = 0; i < ovp.size(); ++i)
      if (p.nodes[static_cast<std::size_t>(i)].level >= alpha && ovp.less_eq(i, bs[static_cast<std::size_t>(k)]))
        below |= 1ULL << ploc[static_cast<std::size_t>(i)];
    for (int j = 0; j < ovq.size(); ++j)
      if (q.nodes[static_cast<std::size_t>(j)].level >= beta && ovq.less_eq(cs[static_cast<std::size_t>(k)], j))
        lower[static_cast<std::size_t>(qloc[static_cast<std::size_t>(j)])] |= below;
  }

  // The three clauses are already transitively closed when the
  // hypotheses hold; verify rather than close again.
  for (int j = 0; j < n; ++j) {
    std::uint64_t m = lower[static_cast<std::size_t>(j)];
    while (m) {
      int i = __builtin_ctzll(m);
      m &= m - 1;
      if ((lower[static_cast<std::size_t>(i)] & ~lower[static_cast<std::size_t>(j)]) != 0)
        return Outcome<Condition>::failure(
            "internal: amalgamation clauses were not transitively closed");
    }
  }

  Condition out;
  out.nodes = std::move(nodes);
  out.covers = reduce_masks(n, lower);
  auto check = validate_condition(out);
  if (!check.ok())
    return Outcome<Condition>::failure("internal: amalgamation produced an invalid condition: " +
                                       check.violations.front());
  return Outcome<Condition>::success(std::move(out));
}

namespace {

// All injective matchings of a subset of cs into bs, smallest first.
void enumerate_matchings(const std::vector<Node>& bs, const std::vector<Node>& cs,
                         int target_size, std::size_t cpos, std::uint64_t used_b,
                         std::vector<std::pair<Node, Node>>& cur,
                         const std::function<bool(const std::vector<std::pair<Node, Node>>&)>& fn,
                         bool& stop) {
  if (stop) return;
  if (static_cast<int>(cur.size()) == target_size) {
    if (fn(cur)) stop = true;
    return;
  }
  if (cpos >= cs.size()) return;
  int remaining = target_size - static_cast<int>(cur.size());
  if (static_cast<int>(cs.size() - cpos) < remaining) return;
  // skip cs[cpos]
  enumerate_matchings(bs, cs, target_size, cpos + 1, used_b, cur, fn, stop);
  if (stop) return;
  // use cs[cpos] with any unused b
  for (std::size_t b = 0; b < bs.size(); ++b) {
    if (used_b & (1ULL << b)) continue;
    cur.emplace_back(bs[b], cs[cpos]);
    enumerate_matchings(bs, cs, target_size, cpos + 1, used_b | (1ULL << b), cur, fn, stop);
    cur.pop_back();
    if (stop) return;
  }
}

std::optional<Condition> compatible_directed(const Condition& p, const Condition& q) {
  std::vector<int> cuts{0, 1};
  for (const auto& x : p.nodes) {
    cuts.push_back(x.level);
    cuts.push_back(x.level + 1);
    cuts.push_back(x.level + 2);
  }
  for (const auto& x : q.nodes) {
    cuts.push_back(x.level);
    cuts.push_back(x.level + 1);
    cuts.push_back(x.level + 2);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (int alpha : cuts) {
    for (int beta : cuts) {
      if (!(alpha < beta)) continue;
      if (!common_parts_equal(p, alpha, q, beta)) continue;
      bool levels_ok = true;
      for (const auto& x : p.nodes)
        if (x.level >= alpha && x.level >= beta) levels_ok = false;
      if (!levels_ok) continue;

      std::vector<Node> bs, cs;
      for (const auto& x : p.nodes)
        if (x.level >= alpha) bs.push_back(x);
      OrderView ovq(q);
      for (std::size_t j = 0; j < q.nodes.size(); ++j) {
        if (q.nodes[j].level < beta) continue;
        bool minimal = true;
        std::uint64_t m = ovq.lower_mask(static_cast<int>(j));
        while (m) {
          int v = __builtin_ctzll(m);
          m &= m - 1;
          if (q.nodes[static_cast<std::size_t>(v)].level >= beta) minimal = false;
        }
        if (minimal) cs.push_back(q.nodes[j]);
      }

      std::optional<Condition> found;
      for (int size = 0; size <= static_cast<int>(std::min(bs.size(), cs.size())); ++size) {
        bool stop = false;
        std::vector<std::pair<Node, Node>> cur;
        enumerate_matchings(bs, cs, size, 0, 0, cur,
                            [&](const std::vector<std::pair<Node, Node>>& matched) {
                              AmalgamationSpec spec{alpha, beta, matched};
                              auto r = amalgamate(p, q, spec);
                              if (r) {
                                found = *r;
                                return true;
                              }
                              return false;
                            },
                            stop);
        if (found) return found;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Condition> compatible(const Condition& p, const Condition& q) {
  if (auto r = compatible_directed(p, q)) return r;
  return compatible_directed(q, p);
}

Outcome<Condition> typed_cross_amalgamate(const Condition& p_low, const Condition& p_high,
                                          const TypedAmalgamationInput& input,
                                          const AmalgamationSpec& spec, bool insert_siblings) {
  std::vector<std::string> errs;
  const int n = input.type.arity();
  if (static_cast<int>(input.low_tuple.size()) != n ||
      static_cast<int>(input.high_tuple.size()) != n ||
      static_cast<int>(input.high_minimal.size()) != n)
    return Outcome<Condition>::failure("typed merge: tuple arities do not match the type");
  {
    auto vl = validate_condition(p_low);
    auto vh = validate_condition(p_high);
    for (auto& v : vl.violations) errs.push_back("low: " + v);
    for (auto& v : vh.violations) errs.push_back("high: " + v);
    if (!errs.empty()) return Outcome<Condition>::failure(std::move(errs));
  }

  const int cut_low = spec.alpha, cut_high = spec.beta;
  OrderView ovl(p_low), ovh(p_high);

  std::vector<int> low_idx(static_cast<std::size_t>(n)), high_idx(static_cast<std::size_t>(n));
  std::vector<int> low_min(static_cast<std::size_t>(n)), high_min(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    low_idx[static_cast<std::size_t>(i)] = find_node(p_low, input.low_tuple[static_cast<std::size_t>(i)]);
    high_idx[static_cast<std::size_t>(i)] = find_node(p_high, input.high_tuple[static_cast<std::size_t>(i)]);
    if (low_idx[static_cast<std::size_t>(i)] < 0 ||
        input.low_tuple[static_cast<std::size_t>(i)].level < cut_low)
      errs.push_back("typed merge: low entry " + input.low_tuple[static_cast<std::size_t>(i)].str() +
                     " is not in the low condition above its cut");
    if (high_idx[static_cast<std::size_t>(i)] < 0 ||
        input.high_tuple[static_cast<std::size_t>(i)].level < cut_high)
      errs.push_back("typed merge: high entry " + input.high_tuple[static_cast<std::size_t>(i)].str() +
                     " is not in the high condition above its cut");
  }
  if (!errs.empty()) return Outcome<Condition>::failure(std::move(errs));

  for (int i = 0; i < n; ++i) {
    high_min[static_cast<std::size_t>(i)] =
        minimal_above_cut_below(p_high, ovh, high_idx[static_cast<std::size_t>(i)], cut_high);
    int given = find_node(p_high, input.high_minimal[static_cast<std::size_t>(i)]);
    if (given < 0 || given != high_min[static_cast<std::size_t>(i)])
      errs.push_back("typed merge: " + input.high_minimal[static_cast<std::size_t>(i)].str() +
                     " is not the minimal node of the high part below " +
                     input.high_tuple[static_cast<std::size_t>(i)].str());
    low_min[static_cast<std::size_t>(i)] =
        minimal_above_cut_below(p_low, ovl, low_idx[static_cast<std::size_t>(i)], cut_low);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (high_min[static_cast<std::size_t>(i)] == high_min[static_cast<std::size_t>(j)])
        errs.push_back("typed merge: high-side minimal nodes for entries " + std::to_string(i) +
                       " and " + std::to_string(j) + " coincide");
      if (low_min[static_cast<std::size_t>(i)] == low_min[static_cast<std::size_t>(j)])
        errs.push_back("typed merge: low-side minimal nodes for entries " + std::to_string(i) +
                       " and " + std::to_string(j) + " coincide");
    }
  if (!errs.empty()) return Outcome<Condition>::failure(std::move(errs));

  for (int i = 0; i < n; ++i) {
    if (lower_set_below(p_low, ovl, low_idx[static_cast<std::size_t>(i)], cut_low) !=
        lower_set_below(p_high, ovh, high_idx[static_cast<std::size_t>(i)], cut_high))
      errs.push_back("typed merge: common-part lower sets of entry " + std::to_string(i) +
                     " differ between the two sides");
  }
  if (!errs.empty()) return Outcome<Condition>::failure(std::move(errs));

  // The given matching must list exactly the 1-bit pairs (low entry, high minimal).
  {
    std::vector<std::pair<Node, Node>> expected;
    for (int i = 0; i < n; ++i)
      if (input.type.at(i))
        expected.emplace_back(input.low_tuple[static_cast<std::size_t>(i)],
                              input.high_minimal[static_cast<std::size_t>(i)]);
    auto got = spec.matched;
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    if (expected != got)
      return Outcome<Condition>::failure(
          "typed merge: spec matching does not list exactly the type-1 pairs");
  }

  auto merged = amalgamate(p_low, p_high, spec);
  if (!merged) return merged;
  if (!insert_siblings) return merged;

  // For each 0 bit, thread a fresh sibling pair under the shared
  // immediate predecessor, the high-side twin getting the smaller tag.
  Condition q = *merged;
  std::vector<Rational> avoid;
  for (const auto& nd : q.nodes) avoid.push_back(nd.tag);
  std::vector<InsertionRequest> reqs;
  OrderView ovq(q);
  for (int i = 0; i < n; ++i) {
    if (input.type.at(i)) continue;
    Node low_star = p_low.nodes[static_cast<std::size_t>(low_min[static_cast<std::size_t>(i)])];
    Node high_star = input.high_minimal[static_cast<std::size_t>(i)];
    int ls = find_node(q, low_star), hs = find_node(q, high_star);
    int dl = ovq.immediate_pred(ls), dh = ovq.immediate_pred(hs);
    if (dl < 0 || dh < 0 || dl != dh)
      return Outcome<Condition>::failure(
          "typed merge: entry " + std::to_string(i) +
          " has no shared immediate predecessor below the cuts");
    Node d = q.nodes[static_cast<std::size_t>(dl)];
    if (!(d.level + 1 < low_star.level && d.level + 1 < high_star.level))
      return Outcome<Condition>::failure("typed merge: no room for a sibling pair above " +
                                         d.str());
    Rational t1 = fresh_rational(avoid);
    avoid.push_back(t1);
    Rational t2 = fresh_rational(avoid);
    avoid.push_back(t2);
    Rational small = std::min(t1, t2), large = std::max(t1, t2);
    reqs.push_back({d, high_star, Node{d.level + 1, small}});
    reqs.push_back({d, low_star, Node{d.level + 1, large}});
  }
  return multi_insert(q, reqs);
}

Outcome<Condition> amalgamate_with_type(const Condition& p_low, const Condition& p_high,
                                        const TypedAmalgamationInput& input,
                                        const AmalgamationSpec& spec) {
  return typed_cross_amalgamate(p_low, p_high, input, spec, true);
}

}  // namespace treelab
