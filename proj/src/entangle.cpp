#include "treelab/entangle.hpp"

#include <algorithm>

namespace treelab {

ValidationReport validate_linear_sequence(const LinearTupleSequence& seq) {
  ValidationReport rep;
  const int n = seq.arity();
  if (!seq.tuples.empty() && n == 0) rep.violations.push_back("sequence: empty tuples");
  std::vector<char> used(static_cast<std::size_t>(std::max(seq.order_size, 0)), 0);
  for (std::size_t x = 0; x < seq.tuples.size(); ++x) {
    const auto& t = seq.tuples[x];
    if (static_cast<int>(t.size()) != n)
      rep.violations.push_back("sequence: tuple " + std::to_string(x) + " has the wrong arity");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] < 0 || t[i] >= seq.order_size) {
        rep.violations.push_back("sequence: element out of range in tuple " + std::to_string(x));
        continue;
      }
      if (i + 1 < t.size() && !(t[i] < t[i + 1]))
        rep.violations.push_back("sequence: tuple " + std::to_string(x) + " is not increasing");
      if (used[static_cast<std::size_t>(t[i])])
        rep.violations.push_back("sequence: element " + std::to_string(t[i]) +
                                 " appears in two tuples");
      used[static_cast<std::size_t>(t[i])] = 1;
    }
  }
  return rep;
}

Outcome<bool> satisfies_linear(const std::vector<int>& t1, const std::vector<int>& t2,
                               const TypeVector& g) {
  if (static_cast<int>(t1.size()) != g.arity() || static_cast<int>(t2.size()) != g.arity())
    return Outcome<bool>::failure("satisfies: tuple arity does not match the type");
  for (int i = 0; i < g.arity(); ++i) {
    bool lt = t1[static_cast<std::size_t>(i)] < t2[static_cast<std::size_t>(i)];
    if (lt != g.at(i)) return Outcome<bool>::success(false);
  }
  return Outcome<bool>::success(true);
}

Outcome<std::optional<std::pair<int, int>>> realize_linear(const LinearTupleSequence& seq,
                                                           const TypeVector& g) {
  if (seq.arity() != 0 && seq.arity() != g.arity())
    return Outcome<std::optional<std::pair<int, int>>>::failure(
        "realize: type arity does not match the sequence");
  const int m = static_cast<int>(seq.tuples.size());
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (x == y) continue;
      auto s = satisfies_linear(seq.tuples[static_cast<std::size_t>(x)],
                                seq.tuples[static_cast<std::size_t>(y)], g);
      if (!s) return Outcome<std::optional<std::pair<int, int>>>::failure(s.errors());
      if (*s)
        return Outcome<std::optional<std::pair<int, int>>>::success(std::make_pair(x, y));
    }
  return Outcome<std::optional<std::pair<int, int>>>::success(std::nullopt);
}

std::optional<SeparatedWitness> check_separated(const LinearTupleSequence& seq,
                                                const std::optional<SeparatedWitness>& given) {
  const int n = seq.arity();
  auto valid = [&](const std::vector<int>& seps) {
    if (static_cast<int>(seps.size()) != std::max(0, n - 1)) return false;
    for (const auto& t : seq.tuples)
      for (int i = 0; i + 1 < n; ++i)
        if (!(t[static_cast<std::size_t>(i)] < seps[static_cast<std::size_t>(i)] &&
              seps[static_cast<std::size_t>(i)] < t[static_cast<std::size_t>(i + 1)]))
          return false;
    return true;
  };
  if (given) {
    if (valid(given->separators)) return given;
    return std::nullopt;
  }
  // slots are independent: pick the least order element fitting slot i
  std::vector<int> seps;
  for (int i = 0; i + 1 < n; ++i) {
    int found = -1;
    for (int c = 0; c < seq.order_size && found < 0; ++c) {
      bool ok = true;
      for (const auto& t : seq.tuples)
        if (!(t[static_cast<std::size_t>(i)] < c && c < t[static_cast<std::size_t>(i + 1)])) {
          ok = false;
          break;
        }
      if (ok) found = c;
    }
    if (found < 0) return std::nullopt;
    seps.push_back(found);
  }
  return SeparatedWitness{seps};
}

ValidationReport validate_tree_sequence(const LeveledTree& t, const TreeTupleSequence& seq,
                                        bool require_increasing_height) {
  ValidationReport rep;
  TreeView tv(t);
  const int n = seq.arity();
  for (std::size_t x = 0; x < seq.tuples.size(); ++x) {
    const auto& tup = seq.tuples[x];
    if (static_cast<int>(tup.size()) != n)
      rep.violations.push_back("sequence: tuple " + std::to_string(x) + " has the wrong arity");
    for (std::size_t i = 0; i < tup.size(); ++i) {
      if (tv.id_of(tup[i]) < 0)
        rep.violations.push_back("sequence: node " + tup[i].str() + " is not in the tree");
      for (std::size_t j = i + 1; j < tup.size(); ++j)
        if (tup[i] == tup[j])
          rep.violations.push_back("sequence: tuple " + std::to_string(x) + " is not injective");
    }
  }
  if (!rep.ok()) return rep;
  if (require_increasing_height) {
    for (std::size_t x = 0; x + 1 < seq.tuples.size(); ++x) {
      int hi = 0, lo = t.height();
      for (const auto& nd : seq.tuples[x]) hi = std::max(hi, nd.level);
      for (const auto& nd : seq.tuples[x + 1]) lo = std::min(lo, nd.level);
      if (!(hi < lo))
        rep.violations.push_back("sequence: tuples " + std::to_string(x) + " and " +
                                 std::to_string(x + 1) + " do not have increasing height");
    }
  }
  if (seq.base) {
    if (static_cast<int>(seq.base->size()) != n)
      rep.violations.push_back("sequence: base arity mismatch");
    else {
      for (std::size_t x = 0; x < seq.tuples.size(); ++x)
        for (int i = 0; i < n; ++i) {
          int bi = tv.id_of((*seq.base)[static_cast<std::size_t>(i)]);
          int ai = tv.id_of(seq.tuples[x][static_cast<std::size_t>(i)]);
          if (bi < 0 || ai < 0 || !tv.less(bi, ai))
            rep.violations.push_back("sequence: tuple " + std::to_string(x) + " entry " +
                                     std::to_string(i) + " is not above the base");
        }
    }
  }
  return rep;
}

Outcome<bool> satisfies_tree(const LeveledTree& t, const std::vector<Node>& lower,
                             const std::vector<Node>& higher, const TypeVector& g) {
  if (static_cast<int>(lower.size()) != g.arity() || static_cast<int>(higher.size()) != g.arity())
    return Outcome<bool>::failure("satisfies: tuple arity does not match the type");
  TreeView tv(t);
  int max_lo = -1, min_hi = t.height();
  for (const auto& nd : lower) max_lo = std::max(max_lo, nd.level);
  for (const auto& nd : higher) min_hi = std::min(min_hi, nd.level);
  if (!(max_lo < min_hi))
    return Outcome<bool>::failure("satisfies: the second tuple must sit strictly higher");
  for (int i = 0; i < g.arity(); ++i) {
    int a = tv.id_of(lower[static_cast<std::size_t>(i)]);
    int b = tv.id_of(higher[static_cast<std::size_t>(i)]);
    if (a < 0 || b < 0) return Outcome<bool>::failure("satisfies: node outside the tree");
    if (tv.less(a, b) != g.at(i)) return Outcome<bool>::success(false);
  }
  return Outcome<bool>::success(true);
}

Outcome<std::optional<std::pair<int, int>>> realize_tree(const LeveledTree& t,
                                                         const TreeTupleSequence& seq,
                                                         const TypeVector& g) {
  auto rep = validate_tree_sequence(t, seq, true);
  if (!rep.ok()) return Outcome<std::optional<std::pair<int, int>>>::failure(rep.violations);
  if (seq.arity() != 0 && seq.arity() != g.arity())
    return Outcome<std::optional<std::pair<int, int>>>::failure(
        "realize: type arity does not match the sequence");
  const int m = static_cast<int>(seq.tuples.size());
  for (int x = 0; x < m; ++x)
    for (int y = x + 1; y < m; ++y) {
      auto s = satisfies_tree(t, seq.tuples[static_cast<std::size_t>(x)],
                              seq.tuples[static_cast<std::size_t>(y)], g);
      if (!s) return Outcome<std::optional<std::pair<int, int>>>::failure(s.errors());
      if (*s)
        return Outcome<std::optional<std::pair<int, int>>>::success(std::make_pair(x, y));
    }
  return Outcome<std::optional<std::pair<int, int>>>::success(std::nullopt);
}

Outcome<int> delta_bound(const LeveledTree& t, const TreeTupleSequence& seq) {
  auto rep = validate_tree_sequence(t, seq, false);
  if (!rep.ok()) return Outcome<int>::failure(rep.violations);
  TreeView tv(t);
  int bound = 0;
  for (const auto& tup : seq.tuples)
    for (std::size_t i = 0; i < tup.size(); ++i)
      for (std::size_t j = i + 1; j < tup.size(); ++j)
        bound = std::max(bound, tv.delta(tv.id_of(tup[i]), tv.id_of(tup[j])));
  return Outcome<int>::success(bound);
}

Outcome<std::vector<ProjectionGroup>> project_and_group(const LeveledTree& t,
                                                        const TreeTupleSequence& seq,
                                                        int level) {
  auto rep = validate_tree_sequence(t, seq, false);
  if (!rep.ok()) return Outcome<std::vector<ProjectionGroup>>::failure(rep.violations);
  auto db = delta_bound(t, seq);
  if (!db) return Outcome<std::vector<ProjectionGroup>>::failure(db.errors());
  if (*db >= level)
    return Outcome<std::vector<ProjectionGroup>>::failure(
        "project: within-tuple deltas reach the projection level");
  TreeView tv(t);
  for (const auto& tup : seq.tuples)
    for (const auto& nd : tup)
      if (nd.level < level)
        return Outcome<std::vector<ProjectionGroup>>::failure(
            "project: node " + nd.str() + " sits below the projection level");

  std::vector<ProjectionGroup> groups;
  for (std::size_t x = 0; x < seq.tuples.size(); ++x) {
    std::vector<Node> proj;
    for (const auto& nd : seq.tuples[x])
      proj.push_back(tv.node_of(tv.ancestor_at(tv.id_of(nd), level)));
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const ProjectionGroup& gr) { return gr.base == proj; });
    if (it == groups.end()) {
      groups.push_back({proj, {static_cast<int>(x)}, {}});
    } else {
      it->members.push_back(static_cast<int>(x));
    }
  }
  // greedy increasing-height thinning, members taken by ascending minimum height
  for (auto& gr : groups) {
    std::vector<std::pair<int, int>> by_min;  // (min height, member)
    for (int x : gr.members) {
      int mn = t.height();
      for (const auto& nd : seq.tuples[static_cast<std::size_t>(x)]) mn = std::min(mn, nd.level);
      by_min.emplace_back(mn, x);
    }
    std::stable_sort(by_min.begin(), by_min.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    int floor = -1;
    for (auto [mn, x] : by_min) {
      int mx = 0;
      for (const auto& nd : seq.tuples[static_cast<std::size_t>(x)]) mx = std::max(mx, nd.level);
      if (mn > floor) {
        gr.increasing.push_back(x);
        floor = mx;
      }
    }
    std::sort(gr.increasing.begin(), gr.increasing.end());
  }
  return Outcome<std::vector<ProjectionGroup>>::success(std::move(groups));
}

Outcome<TreeTupleSequence> fork_ladder_pairs(const LeveledTree& t, int k) {
  if (k < 1) return Outcome<TreeTupleSequence>::failure("ladder: need at least one pair");
  TreeView tv(t);
  TreeTupleSequence out;
  int floor = 0;
  for (int step = 0; step < k; ++step) {
    int fork = -1;
    for (int id = 0; id < tv.size() && fork < 0; ++id) {
      if (tv.level_of(id) < floor) continue;
      if (tv.children_of(id).size() >= 2) fork = id;
    }
    if (fork < 0)
      return Outcome<TreeTupleSequence>::failure(
          "ladder: the tree has no fork at or above level " + std::to_string(floor) +
          " (insufficient height or splitting)");
    const auto& ch = tv.children_of(fork);
    out.tuples.push_back({tv.node_of(ch[0]), tv.node_of(ch[1])});
    floor = tv.level_of(fork) + 2;
  }
  return Outcome<TreeTupleSequence>::success(std::move(out));
}

Outcome<LinearTupleSequence> nested_triples(int order_size,
                                            const std::vector<std::pair<int, int>>& pairs,
                                            const std::vector<std::pair<int, int>>& index_pairs) {
  std::vector<std::string> errs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = pairs[i];
    if (!(0 <= a && a < b && b < order_size))
      errs.push_back("pairs: entry " + std::to_string(i) + " is not increasing in range");
  }
  if (!errs.empty()) return Outcome<LinearTupleSequence>::failure(std::move(errs));
  // sequence property: later intervals never contain an earlier endpoint
  for (std::size_t u = 0; u < pairs.size(); ++u)
    for (std::size_t v = u + 1; v < pairs.size(); ++v) {
      auto [au, bu] = pairs[u];
      auto [av, bv] = pairs[v];
      if ((av <= au && au <= bv) || (av <= bu && bu <= bv))
        errs.push_back("pairs: endpoint of pair " + std::to_string(u) +
                       " lies in the closed interval of later pair " + std::to_string(v));
    }
  const int m = static_cast<int>(pairs.size());
  for (std::size_t i = 0; i < index_pairs.size(); ++i) {
    auto [outer, inner] = index_pairs[i];
    if (!(0 <= outer && outer < inner && inner < m)) {
      errs.push_back("index pairs: entry " + std::to_string(i) + " is not an increasing pair");
      continue;
    }
    auto [ao, bo] = pairs[static_cast<std::size_t>(outer)];
    auto [ai, bi] = pairs[static_cast<std::size_t>(inner)];
    if (!(ao < ai && ai < bi && bi < bo))
      errs.push_back("index pairs: entry " + std::to_string(i) +
                     " does not nest: need a_outer < a_inner < b_inner < b_outer");
    if (i + 1 < index_pairs.size() && !(inner < index_pairs[i + 1].first))
      errs.push_back("index pairs: entry " + std::to_string(i) +
                     " must close before the next one opens");
  }
  if (!errs.empty()) return Outcome<LinearTupleSequence>::failure(std::move(errs));

  LinearTupleSequence out;
  out.order_size = order_size;
  for (auto [outer, inner] : index_pairs) {
    out.tuples.push_back({pairs[static_cast<std::size_t>(outer)].first,
                          pairs[static_cast<std::size_t>(inner)].first,
                          pairs[static_cast<std::size_t>(outer)].second});
  }
  return Outcome<LinearTupleSequence>::success(std::move(out));
}

namespace {
Outcome<std::vector<int>> check_permutation(const std::vector<int>& sigma, int n) {
  if (static_cast<int>(sigma.size()) != n)
    return Outcome<std::vector<int>>::failure("sigma: wrong arity");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      return Outcome<std::vector<int>>::failure("sigma: not a bijection");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return Outcome<std::vector<int>>::success(sigma);
}

TypeVector permute_type(const TypeVector& g, const std::vector<int>& sigma) {
  TypeVector out;
  out.bits.resize(g.bits.size());
  for (std::size_t i = 0; i < sigma.size(); ++i)
    out.bits[i] = g.bits[static_cast<std::size_t>(sigma[i])];
  return out;
}
}  // namespace

Outcome<std::pair<LinearTupleSequence, TypeVector>> sigma_reduce(const LinearTupleSequence& seq,
                                                                 const std::vector<int>& sigma,
                                                                 const TypeVector& g) {
  auto ck = check_permutation(sigma, g.arity());
  if (!ck) return Outcome<std::pair<LinearTupleSequence, TypeVector>>::failure(ck.errors());
  LinearTupleSequence out;
  out.order_size = seq.order_size;
  for (const auto& t : seq.tuples) {
    std::vector<int> perm(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) perm[i] = t[static_cast<std::size_t>(sigma[i])];
    out.tuples.push_back(std::move(perm));
  }
  return Outcome<std::pair<LinearTupleSequence, TypeVector>>::success(
      {std::move(out), permute_type(g, sigma)});
}

Outcome<std::pair<TreeTupleSequence, TypeVector>> sigma_reduce(const TreeTupleSequence& seq,
                                                               const std::vector<int>& sigma,
                                                               const TypeVector& g) {
  auto ck = check_permutation(sigma, g.arity());
  if (!ck) return Outcome<std::pair<TreeTupleSequence, TypeVector>>::failure(ck.errors());
  TreeTupleSequence out;
  for (const auto& t : seq.tuples) {
    std::vector<Node> perm(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) perm[i] = t[static_cast<std::size_t>(sigma[i])];
    out.tuples.push_back(std::move(perm));
  }
  if (seq.base) {
    std::vector<Node> pb(seq.base->size());
    for (std::size_t i = 0; i < pb.size(); ++i) pb[i] = (*seq.base)[static_cast<std::size_t>(sigma[i])];
    out.base = std::move(pb);
  }
  return Outcome<std::pair<TreeTupleSequence, TypeVector>>::success(
      {std::move(out), permute_type(g, sigma)});
}

}  // namespace treelab
