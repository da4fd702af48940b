#include "treelab/pstar.hpp"

#include <algorithm>

namespace treelab {

namespace {

std::string tuple_text(const std::vector<Node>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += t[i].str();
  }
  return s + ")";
}

// componentwise strict order between same-arity tuples
bool tuple_below(const OrderView& ov, const Condition& p, const std::vector<Node>& a,
                 const std::vector<Node>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    int x = find_node(p, a[i]), y = find_node(p, b[i]);
    if (x < 0 || y < 0 || !ov.less(x, y)) return false;
  }
  return true;
}

int tuple_level(const std::vector<Node>& t) { return t.empty() ? -1 : t.front().level; }

}  // namespace

ValidationReport validate_pstar(const PStarCondition& cond) {
  ValidationReport rep = validate_condition(cond.tree);
  if (!rep.ok()) return rep;
  OrderView ov(cond.tree);

  std::size_t arity = cond.coloring.empty() ? 0 : cond.coloring.front().lower.size();
  for (std::size_t e = 0; e < cond.coloring.size(); ++e) {
    const auto& entry = cond.coloring[e];
    auto check_tuple = [&](const std::vector<Node>& t, const char* which) {
      if (t.size() != arity || t.empty())
        rep.violations.push_back("coloring: entry " + std::to_string(e) + " has a " + which +
                                 " tuple of inconsistent arity");
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (find_node(cond.tree, t[i]) < 0)
          rep.violations.push_back("coloring: entry " + std::to_string(e) + " mentions " +
                                   t[i].str() + " outside the tree");
        if (t[i].level != tuple_level(t))
          rep.violations.push_back("coloring: entry " + std::to_string(e) + " has a " + which +
                                   " tuple spanning levels");
        for (std::size_t j = i + 1; j < t.size(); ++j)
          if (t[i] == t[j])
            rep.violations.push_back("coloring: entry " + std::to_string(e) + " has a " + which +
                                     " tuple that is not injective");
      }
    };
    check_tuple(entry.lower, "lower");
    check_tuple(entry.upper, "upper");
  }
  if (!rep.ok()) return rep;

  for (std::size_t e = 0; e < cond.coloring.size(); ++e) {
    const auto& entry = cond.coloring[e];
    if (!tuple_below(ov, cond.tree, entry.lower, entry.upper))
      rep.violations.push_back("coloring: entry " + std::to_string(e) + " lower tuple " +
                               tuple_text(entry.lower) + " is not componentwise below " +
                               tuple_text(entry.upper));
  }
  for (std::size_t e = 0; e < cond.coloring.size(); ++e)
    for (std::size_t f = e + 1; f < cond.coloring.size(); ++f) {
      const auto& E = cond.coloring[e];
      const auto& F = cond.coloring[f];
      if (E.lower != F.lower) continue;
      if (E.upper == F.upper) {
        rep.violations.push_back("coloring: entries " + std::to_string(e) + " and " +
                                 std::to_string(f) + " repeat a domain pair");
        continue;
      }
      bool comparable = tuple_below(ov, cond.tree, E.upper, F.upper) ||
                        tuple_below(ov, cond.tree, F.upper, E.upper);
      if (comparable && E.color == F.color)
        rep.violations.push_back("coloring: comparable tuples " + tuple_text(E.upper) + " and " +
                                 tuple_text(F.upper) + " over " + tuple_text(E.lower) +
                                 " share color " + std::to_string(E.color));
    }
  return rep;
}

bool pstar_extends(const PStarCondition& q, const PStarCondition& p) {
  if (!end_extends(q.tree, p.tree)) return false;
  for (const auto& e : p.coloring) {
    bool found = false;
    for (const auto& f : q.coloring)
      if (f.lower == e.lower && f.upper == e.upper) {
        if (f.color != e.color) return false;
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

std::vector<ColorEntry> coloring_below(const PStarCondition& cond, int cut) {
  std::vector<ColorEntry> out;
  for (const auto& e : cond.coloring)
    if (tuple_level(e.upper) < cut) out.push_back(e);
  return out;
}

Outcome<PStarCondition> pstar_amalgamate(const PStarCondition& low, const PStarCondition& high,
                                         const TypedAmalgamationInput& input,
                                         const AmalgamationSpec& spec) {
  std::vector<std::string> errs;
  auto vl = validate_pstar(low);
  auto vh = validate_pstar(high);
  for (auto& v : vl.violations) errs.push_back("low: " + v);
  for (auto& v : vh.violations) errs.push_back("high: " + v);
  if (!errs.empty()) return Outcome<PStarCondition>::failure(std::move(errs));

  if (!low.coloring.empty() && !high.coloring.empty() &&
      low.coloring.front().lower.size() != high.coloring.front().lower.size())
    return Outcome<PStarCondition>::failure("colorings have different tuple arities");

  // restrictions below the cuts must agree as functions
  auto rl = coloring_below(low, spec.alpha);
  auto rh = coloring_below(high, spec.beta);
  auto key = [](const ColorEntry& e) { return std::make_pair(e.lower, e.upper); };
  auto by_key = [&](const ColorEntry& a, const ColorEntry& b) { return key(a) < key(b); };
  std::sort(rl.begin(), rl.end(), by_key);
  std::sort(rh.begin(), rh.end(), by_key);
  if (!(rl == rh))
    return Outcome<PStarCondition>::failure(
        "colorings disagree below the cuts (restrictions differ)");

  auto merged = typed_cross_amalgamate(low.tree, high.tree, input, spec, false);
  if (!merged) return Outcome<PStarCondition>::failure(merged.errors());

  PStarCondition out;
  out.tree = *merged;
  out.coloring = low.coloring;
  for (const auto& e : high.coloring) {
    bool dup = false;
    for (const auto& f : out.coloring)
      if (f.lower == e.lower && f.upper == e.upper) {
        dup = true;
        break;
      }
    if (!dup) out.coloring.push_back(e);
  }
  auto check = validate_pstar(out);
  if (!check.ok())
    return Outcome<PStarCondition>::failure(
        "internal: merged coloring violates the constraint, which the preconditions exclude: " +
        check.violations.front());
  return Outcome<PStarCondition>::success(std::move(out));
}

std::vector<std::pair<std::vector<Node>, unsigned>> extract_specializer(
    const PStarCondition& cond, const std::vector<Node>& lower) {
  std::vector<std::pair<std::vector<Node>, unsigned>> out;
  for (const auto& e : cond.coloring)
    if (e.lower == lower) out.emplace_back(e.upper, e.color);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace treelab
