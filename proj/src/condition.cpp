#include "treelab/condition.hpp"

#include <algorithm>

namespace treelab {

namespace {

constexpr int kMaxNodes = 64;

// Closure of an arbitrary pair set as lower-set masks. Sets *cycle if a
// node ends up below itself.
std::vector<std::uint64_t> close(int n, const std::vector<std::pair<int, int>>& pairs,
                                 bool* cycle) {
  std::vector<std::uint64_t> lower(static_cast<std::size_t>(n), 0);
  for (auto [i, j] : pairs) lower[static_cast<std::size_t>(j)] |= 1ULL << i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < n; ++j) {
      std::uint64_t acc = lower[static_cast<std::size_t>(j)];
      std::uint64_t m = acc;
      while (m) {
        int i = __builtin_ctzll(m);
        m &= m - 1;
        acc |= lower[static_cast<std::size_t>(i)];
      }
      if (acc != lower[static_cast<std::size_t>(j)]) {
        lower[static_cast<std::size_t>(j)] = acc;
        changed = true;
      }
    }
  }
  *cycle = false;
  for (int j = 0; j < n; ++j)
    if ((lower[static_cast<std::size_t>(j)] >> j) & 1u) *cycle = true;
  return lower;
}

// Transitive reduction of a closed acyclic relation: (i,j) is a cover
// iff i < j and no k has i < k < j.
std::vector<std::pair<int, int>> reduce(int n, const std::vector<std::uint64_t>& lower) {
  std::vector<std::pair<int, int>> covers;
  for (int j = 0; j < n; ++j) {
    std::uint64_t m = lower[static_cast<std::size_t>(j)];
    while (m) {
      int i = __builtin_ctzll(m);
      m &= m - 1;
      // i < j; redundant iff some k strictly between
      std::uint64_t between = lower[static_cast<std::size_t>(j)] & ~lower[static_cast<std::size_t>(i)];
      between &= ~(1ULL << i);
      bool redundant = false;
      std::uint64_t b = between;
      while (b) {
        int k = __builtin_ctzll(b);
        b &= b - 1;
        if ((lower[static_cast<std::size_t>(k)] >> i) & 1u) {
          redundant = true;
          break;
        }
      }
      if (!redundant) covers.emplace_back(i, j);
    }
  }
  std::sort(covers.begin(), covers.end());
  return covers;
}

}  // namespace

OrderView::OrderView(const Condition& p) : p_(&p), n_(static_cast<int>(p.nodes.size())) {
  if (n_ > 64) n_ = 64;
  for (int i = 0; i < n_; ++i) lower_[static_cast<std::size_t>(i)] = upper_[static_cast<std::size_t>(i)] = 0;
  for (auto [i, j] : p.covers)
    if (i >= 0 && i < n_ && j >= 0 && j < n_) lower_[static_cast<std::size_t>(j)] |= 1ULL << i;
  // close to a fixpoint
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < n_; ++j) {
      std::uint64_t acc = lower_[static_cast<std::size_t>(j)];
      std::uint64_t m = acc;
      while (m) {
        int i = __builtin_ctzll(m);
        m &= m - 1;
        acc |= lower_[static_cast<std::size_t>(i)];
      }
      if (acc != lower_[static_cast<std::size_t>(j)]) {
        lower_[static_cast<std::size_t>(j)] = acc;
        changed = true;
      }
    }
  }
  cycle_ = false;
  for (int j = 0; j < n_; ++j) {
    if ((lower_[static_cast<std::size_t>(j)] >> j) & 1u) cycle_ = true;
    std::uint64_t m = lower_[static_cast<std::size_t>(j)];
    while (m) {
      int i = __builtin_ctzll(m);
      m &= m - 1;
      upper_[static_cast<std::size_t>(i)] |= 1ULL << j;
    }
  }
}

int OrderView::immediate_pred(int j) const {
  int best = -1;
  std::uint64_t m = lower_[static_cast<std::size_t>(j)];
  while (m) {
    int i = __builtin_ctzll(m);
    m &= m - 1;
    if (best == -1 || less(best, i)) best = i;
  }
  return best;
}

ValidationReport validate_condition(const Condition& p) {
  ValidationReport rep;
  const int n = static_cast<int>(p.nodes.size());
  if (n > kMaxNodes) {
    rep.violations.push_back("structure: more than 64 nodes is unsupported");
    return rep;
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (!(p.nodes[static_cast<std::size_t>(i)] < p.nodes[static_cast<std::size_t>(i + 1)])) {
      rep.violations.push_back("structure: nodes are not sorted and distinct at positions " +
                               std::to_string(i) + "," + std::to_string(i + 1));
    }
  }
  for (const auto& nd : p.nodes) {
    if (nd.level < 0) rep.violations.push_back("structure: negative level in node " + nd.str());
  }
  bool index_ok = true;
  for (auto [i, j] : p.covers) {
    if (i < 0 || i >= n || j < 0 || j >= n) {
      rep.violations.push_back("structure: cover index (" + std::to_string(i) + "," +
                               std::to_string(j) + ") out of range");
      index_ok = false;
    }
  }
  if (!index_ok) return rep;
  const bool covers_sorted = std::is_sorted(p.covers.begin(), p.covers.end());
  if (covers_sorted) {
    if (std::adjacent_find(p.covers.begin(), p.covers.end()) != p.covers.end())
      rep.violations.push_back("structure: duplicate cover pair");
  } else {
    auto sorted = p.covers;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      rep.violations.push_back("structure: duplicate cover pair");
  }

  for (auto [i, j] : p.covers) {
    const Node& a = p.nodes[static_cast<std::size_t>(i)];
    const Node& b = p.nodes[static_cast<std::size_t>(j)];
    if (a.level >= b.level)
      rep.violations.push_back("level-monotone: cover " + a.str() + " -> " + b.str() +
                               " does not increase level");
  }

  OrderView ov(p);
  if (ov.closure_had_cycle()) {
    rep.violations.push_back("order: the closure of covers is not irreflexive (cycle)");
    return rep;
  }

  // downward linearity: the strict lower set of every node is a chain
  for (int j = 0; j < n; ++j) {
    std::uint64_t m = ov.lower_mask(j);
    for (std::uint64_t m1 = m; m1; m1 &= m1 - 1) {
      int a = __builtin_ctzll(m1);
      // anything below j but unrelated to a breaks the chain
      std::uint64_t rest = m & ~(ov.lower_mask(a) | ov.upper_mask(a)) & ~(1ULL << a);
      for (std::uint64_t m2 = rest & (m1 - 1); m2; m2 &= m2 - 1) {
        int b = __builtin_ctzll(m2);
        rep.violations.push_back("downward-linear: " + p.nodes[static_cast<std::size_t>(a)].str() +
                                 " and " + p.nodes[static_cast<std::size_t>(b)].str() +
                                 " are incomparable below " +
                                 p.nodes[static_cast<std::size_t>(j)].str());
      }
    }
  }

  // covers must be exactly the transitive reduction of the closure:
  // (i, j) is a cover of the closure iff nothing sits strictly between,
  // that is upper(i) & lower(j) is empty; walk them in sorted order
  auto matches_reduction = [&](const std::vector<std::pair<int, int>>& covers) {
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
      std::uint64_t m = ov.upper_mask(i);
      while (m) {
        int j = __builtin_ctzll(m);
        m &= m - 1;
        if (ov.upper_mask(i) & ov.lower_mask(j)) continue;  // redundant edge
        if (k >= covers.size() || !(covers[k] == std::make_pair(i, j))) return false;
        ++k;
      }
    }
    return k == covers.size();
  };
  bool reduced;
  if (covers_sorted) {
    reduced = matches_reduction(p.covers);
  } else {
    std::vector<std::pair<int, int>> given = p.covers;
    std::sort(given.begin(), given.end());
    given.erase(std::unique(given.begin(), given.end()), given.end());
    reduced = matches_reduction(given);
  }
  if (!reduced) rep.violations.push_back("covers: not the transitive reduction of the order");

  return rep;
}

Outcome<Condition> make_condition(std::vector<Node> nodes,
                                  const std::vector<std::pair<Node, Node>>& relation) {
  std::sort(nodes.begin(), nodes.end());
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (nodes[i] == nodes[i + 1])
      return Outcome<Condition>::failure("duplicate node " + nodes[i].str());
  if (nodes.size() > kMaxNodes)
    return Outcome<Condition>::failure("more than 64 nodes is unsupported");

  auto index_of = [&](const Node& x) -> int {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    if (it == nodes.end() || !(*it == x)) return -1;
    return static_cast<int>(it - nodes.begin());
  };

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(relation.size());
  for (const auto& [a, b] : relation) {
    int i = index_of(a), j = index_of(b);
    if (i < 0) return Outcome<Condition>::failure("relation mentions unknown node " + a.str());
    if (j < 0) return Outcome<Condition>::failure("relation mentions unknown node " + b.str());
    pairs.emplace_back(i, j);
  }

  bool cycle = false;
  auto lower = close(static_cast<int>(nodes.size()), pairs, &cycle);
  Condition out;
  out.nodes = std::move(nodes);
  out.covers = reduce(static_cast<int>(out.nodes.size()), lower);
  auto rep = validate_condition(out);
  if (!rep.ok()) return Outcome<Condition>::failure(rep.violations);
  return Outcome<Condition>::success(std::move(out));
}

int find_node(const Condition& p, const Node& x) {
  auto it = std::lower_bound(p.nodes.begin(), p.nodes.end(), x);
  if (it == p.nodes.end() || !(*it == x)) return -1;
  return static_cast<int>(it - p.nodes.begin());
}

bool end_extends(const Condition& q, const Condition& p) {
  OrderView ovp(p), ovq(q);
  std::vector<int> loc(p.nodes.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    int j = find_node(q, p.nodes[i]);
    if (j < 0) return false;
    loc[i] = j;
  }
  const int n = static_cast<int>(p.nodes.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (ovp.less(i, j) != ovq.less(loc[static_cast<std::size_t>(i)], loc[static_cast<std::size_t>(j)]))
        return false;
  return true;
}

namespace {
Condition filter_by_level(const Condition& p, bool keep_below, int alpha) {
  Condition out;
  std::vector<int> remap(p.nodes.size(), -1);
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    bool keep = keep_below ? p.nodes[i].level < alpha : p.nodes[i].level >= alpha;
    if (keep) {
      remap[i] = static_cast<int>(out.nodes.size());
      out.nodes.push_back(p.nodes[i]);
    }
  }
  // A level cut never drops a node strictly between two kept nodes, so
  // the induced covers are just the covers with both endpoints kept.
  for (auto [i, j] : p.covers) {
    int a = remap[static_cast<std::size_t>(i)], b = remap[static_cast<std::size_t>(j)];
    if (a >= 0 && b >= 0) out.covers.emplace_back(a, b);
  }
  std::sort(out.covers.begin(), out.covers.end());
  return out;
}
}  // namespace

Condition restrict_below(const Condition& p, int alpha) { return filter_by_level(p, true, alpha); }

Condition above(const Condition& p, int alpha) { return filter_by_level(p, false, alpha); }

std::string condition_str(const Condition& p) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (i) s += ",";
    s += p.nodes[i].str();
  }
  s += "; ";
  for (std::size_t k = 0; k < p.covers.size(); ++k) {
    if (k) s += ",";
    s += p.nodes[static_cast<std::size_t>(p.covers[k].first)].str() + "<" +
         p.nodes[static_cast<std::size_t>(p.covers[k].second)].str();
  }
  s += "}";
  return s;
}

}  // namespace treelab
