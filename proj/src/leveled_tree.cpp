#include "treelab/leveled_tree.hpp"

#include <algorithm>

namespace treelab {

int LeveledTree::node_count() const {
  int n = 0;
  for (const auto& lv : levels) n += static_cast<int>(lv.size());
  return n;
}

ValidationReport validate_tree(const LeveledTree& t) {
  ValidationReport rep;
  if (t.parents.size() != t.levels.size()) {
    rep.violations.push_back("structure: parents and levels have different heights");
    return rep;
  }
  for (std::size_t k = 0; k < t.levels.size(); ++k) {
    const auto& lv = t.levels[k];
    if (lv.empty()) rep.violations.push_back("structure: level " + std::to_string(k) + " is empty");
    for (std::size_t i = 0; i + 1 < lv.size(); ++i)
      if (!(lv[i] < lv[i + 1]))
        rep.violations.push_back("structure: tags at level " + std::to_string(k) +
                                 " are not sorted and distinct");
    if (k == 0) {
      if (!t.parents[0].empty())
        rep.violations.push_back("structure: level 0 must not have parent links");
      continue;
    }
    if (t.parents[k].size() != lv.size()) {
      rep.violations.push_back("structure: level " + std::to_string(k) +
                               " has a parent count mismatch");
      continue;
    }
    for (std::size_t i = 0; i < lv.size(); ++i) {
      int pidx = t.parents[k][i];
      if (pidx < 0 || pidx >= static_cast<int>(t.levels[k - 1].size()))
        rep.violations.push_back("structure: parent index out of range at level " +
                                 std::to_string(k) + " position " + std::to_string(i));
    }
  }
  return rep;
}

TreeView::TreeView(const LeveledTree& t) : t_(&t) {
  offsets_.resize(t.levels.size() + 1);
  offsets_[0] = 0;
  for (std::size_t k = 0; k < t.levels.size(); ++k)
    offsets_[k + 1] = offsets_[k] + static_cast<int>(t.levels[k].size());
  total_ = offsets_.back();
  parent_.assign(static_cast<std::size_t>(total_), -1);
  children_.assign(static_cast<std::size_t>(total_), {});
  for (std::size_t k = 1; k < t.levels.size(); ++k) {
    for (std::size_t i = 0; i < t.levels[k].size(); ++i) {
      int id = offsets_[k] + static_cast<int>(i);
      int pid = offsets_[k - 1] + t.parents[k][i];
      parent_[static_cast<std::size_t>(id)] = pid;
      children_[static_cast<std::size_t>(pid)].push_back(id);
    }
  }
}

int TreeView::level_of(int id) const {
  int lo = 0, hi = static_cast<int>(t_->levels.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (offsets_[static_cast<std::size_t>(mid)] <= id)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

Node TreeView::node_of(int id) const {
  int lv = level_of(id);
  return t_->node_at(lv, id - offset(lv));
}

int TreeView::id_of(const Node& x) const {
  if (x.level < 0 || x.level >= t_->height()) return -1;
  const auto& lv = t_->levels[static_cast<std::size_t>(x.level)];
  auto it = std::lower_bound(lv.begin(), lv.end(), x.tag);
  if (it == lv.end() || !(*it == x.tag)) return -1;
  return offset(x.level) + static_cast<int>(it - lv.begin());
}

int TreeView::ancestor_at(int id, int level) const {
  int cur = id;
  int lv = level_of(id);
  while (lv > level) {
    cur = parent_[static_cast<std::size_t>(cur)];
    --lv;
  }
  return cur;
}

bool TreeView::less(int a, int b) const {
  int la = level_of(a), lb = level_of(b);
  if (la >= lb) return false;
  return ancestor_at(b, la) == a;
}

int TreeView::meet_level(int a, int b) const {
  int la = level_of(a), lb = level_of(b);
  int m = std::min(la, lb);
  int x = ancestor_at(a, m), y = ancestor_at(b, m);
  int lv = m;
  while (x != y) {
    if (lv == 0) return -1;
    x = parent_[static_cast<std::size_t>(x)];
    y = parent_[static_cast<std::size_t>(y)];
    --lv;
  }
  return lv;
}

int TreeView::delta(int a, int b) const {
  // The common lower set is a chain; its size is the meet level + 1.
  return meet_level(a, b) + 1;
}

Outcome<int> delta(const LeveledTree& t, const Node& x, const Node& y) {
  TreeView tv(t);
  int a = tv.id_of(x), b = tv.id_of(y);
  if (a < 0) return Outcome<int>::failure("delta: node " + x.str() + " is not in the tree");
  if (b < 0) return Outcome<int>::failure("delta: node " + y.str() + " is not in the tree");
  return Outcome<int>::success(tv.delta(a, b));
}

Outcome<Node> projection(const LeveledTree& t, const Node& x, int level) {
  TreeView tv(t);
  int a = tv.id_of(x);
  if (a < 0) return Outcome<Node>::failure("projection: node " + x.str() + " is not in the tree");
  if (level < 0 || level > x.level)
    return Outcome<Node>::failure("projection: level " + std::to_string(level) +
                                  " exceeds the height of " + x.str());
  return Outcome<Node>::success(tv.node_of(tv.ancestor_at(a, level)));
}

NormalityReport check_normal(const LeveledTree& t) {
  NormalityReport rep;
  TreeView tv(t);
  int top = t.height() - 1;
  for (int id = 0; id < tv.size(); ++id) {
    if (tv.level_of(id) >= top) continue;
    std::size_t c = tv.children_of(id).size();
    if (c < 2) rep.splitting_failures.push_back(tv.node_of(id));
    if (c == 0) rep.extension_failures.push_back(tv.node_of(id));
  }
  return rep;
}

std::vector<Node> max_chain(const LeveledTree& t) {
  TreeView tv(t);
  if (tv.size() == 0) return {};
  // len[id] = longest chain upward from id; ties prefer the smaller tag.
  std::vector<int> len(static_cast<std::size_t>(tv.size()), 1);
  std::vector<int> next(static_cast<std::size_t>(tv.size()), -1);
  for (int id = tv.size() - 1; id >= 0; --id) {
    for (int c : tv.children_of(id)) {
      if (len[static_cast<std::size_t>(c)] + 1 > len[static_cast<std::size_t>(id)]) {
        len[static_cast<std::size_t>(id)] = len[static_cast<std::size_t>(c)] + 1;
        next[static_cast<std::size_t>(id)] = c;
      }
      // children are visited in ascending tag order, so the first best stays
    }
  }
  int best = 0;
  const int nroots = static_cast<int>(t.levels[0].size());
  for (int id = 1; id < nroots; ++id)
    if (len[static_cast<std::size_t>(id)] > len[static_cast<std::size_t>(best)]) best = id;
  // chains extend downward for free, so a maximum chain starts at a root
  std::vector<Node> out;
  for (int cur = best; cur >= 0; cur = next[static_cast<std::size_t>(cur)]) out.push_back(tv.node_of(cur));
  return out;
}

std::vector<Node> max_antichain(const LeveledTree& t) {
  TreeView tv(t);
  if (tv.size() == 0) return {};
  std::vector<int> weight(static_cast<std::size_t>(tv.size()), 1);
  std::vector<char> take_children(static_cast<std::size_t>(tv.size()), 0);
  for (int id = tv.size() - 1; id >= 0; --id) {
    int sum = 0;
    for (int c : tv.children_of(id)) sum += weight[static_cast<std::size_t>(c)];
    // sum <= 1 keeps the node itself, which is lexicographically earlier
    if (sum > 1) {
      weight[static_cast<std::size_t>(id)] = sum;
      take_children[static_cast<std::size_t>(id)] = 1;
    }
  }
  std::vector<Node> out;
  std::vector<int> stack;
  for (int r = static_cast<int>(t.levels[0].size()) - 1; r >= 0; --r) stack.push_back(r);
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (!take_children[static_cast<std::size_t>(id)]) {
      out.push_back(tv.node_of(id));
      continue;
    }
    const auto& ch = tv.children_of(id);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Node> dense_below(const LeveledTree& t, const std::vector<Node>& target) {
  TreeView tv(t);
  std::vector<char> covered(static_cast<std::size_t>(tv.size()), 0);
  for (const auto& c : target) {
    int id = tv.id_of(c);
    if (id < 0) continue;  // nodes outside the tree dominate nothing
    int lv = tv.level_of(id);
    for (int cur = id;; cur = tv.parent_of(cur), --lv) {
      covered[static_cast<std::size_t>(cur)] = 1;
      if (lv == 0) break;
    }
  }
  std::vector<int> stack;
  for (int a = 0; a < tv.size(); ++a) {
    // whole cone of a must be covered
    bool good = true;
    stack.assign(1, a);
    while (!stack.empty() && good) {
      int id = stack.back();
      stack.pop_back();
      if (!covered[static_cast<std::size_t>(id)]) {
        good = false;
        break;
      }
      for (int c : tv.children_of(id)) stack.push_back(c);
    }
    if (good) return tv.node_of(a);
  }
  return std::nullopt;
}

}  // namespace treelab
