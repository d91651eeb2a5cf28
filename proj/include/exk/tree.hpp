#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exk/errors.hpp"
#include "exk/excursion.hpp"

namespace exk {

// Rooted tree whose children lists are totally ordered. Node 0 is the root.
class OrderedTree {
 public:
  static constexpr int no_parent = -1;

  OrderedTree() : parent_{no_parent}, children_(1) {}

  // Builds from per-node ordered children lists; node 0 must be the root.
  explicit OrderedTree(std::vector<std::vector<int>> children) : children_(std::move(children)) {
    const auto n = children_.size();
    if (n == 0) throw std::invalid_argument("tree needs a root");
    parent_.assign(n, no_parent);
    std::vector<int> seen(n, 0);
    seen[0] = 1;
    for (std::size_t a = 0; a < n; ++a) {
      for (int c : children_[a]) {
        if (c <= 0 || static_cast<std::size_t>(c) >= n) throw std::invalid_argument("bad child index");
        if (seen[static_cast<std::size_t>(c)]++) throw std::invalid_argument("node with two parents");
        parent_[static_cast<std::size_t>(c)] = static_cast<int>(a);
      }
    }
    // reachability from the root rules out cycles among non-root nodes
    std::vector<int> stack{0};
    std::size_t reached = 0;
    std::vector<char> vis(n, 0);
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      if (vis[static_cast<std::size_t>(a)]++) throw std::invalid_argument("cycle");
      ++reached;
      for (int c : children_[static_cast<std::size_t>(a)]) stack.push_back(c);
    }
    if (reached != n) throw std::invalid_argument("unreachable nodes");
    levels_.assign(n, 0);
    for (int a : bfs_order())
      for (int c : children_[static_cast<std::size_t>(a)])
        levels_[static_cast<std::size_t>(c)] = levels_[static_cast<std::size_t>(a)] + 1;
  }

  std::size_t size() const noexcept { return children_.size(); }
  int parent(int a) const { return parent_.at(static_cast<std::size_t>(a)); }
  const std::vector<int>& children(int a) const { return children_.at(static_cast<std::size_t>(a)); }
  int level(int a) const { return levels_.at(static_cast<std::size_t>(a)); }

  std::vector<int> bfs_order() const {
    std::vector<int> order{0};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int c : children_[static_cast<std::size_t>(order[i])]) order.push_back(c);
    return order;
  }

  LevelNumbers level_numbers() const {
    std::vector<long> counts;
    for (int l : levels_) {
      if (static_cast<std::size_t>(l) >= counts.size()) counts.resize(static_cast<std::size_t>(l) + 1, 0);
      ++counts[static_cast<std::size_t>(l)];
    }
    return LevelNumbers(std::move(counts));
  }

  // Nested-array text: a node is "[" children "]".
  std::string str() const {
    std::string out;
    // iterative pre-order walk; frame = (node, next child index)
    std::vector<std::pair<int, std::size_t>> st{{0, 0}};
    out.push_back('[');
    while (!st.empty()) {
      auto& [a, i] = st.back();
      const auto& ch = children_[static_cast<std::size_t>(a)];
      if (i < ch.size()) {
        if (i) out.push_back(',');
        int c = ch[i++];
        out.push_back('[');
        st.emplace_back(c, 0);
      } else {
        out.push_back(']');
        st.pop_back();
      }
    }
    return out;
  }

  // Same shape including child order (node labels may differ).
  friend bool operator==(const OrderedTree& a, const OrderedTree& b) { return a.str() == b.str(); }

 private:
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> levels_;
};

// Node i of the result is the individual of rank i; children ordered by birth.
inline OrderedTree tree_of(const Excursion& x) {
  const auto inds = individuals(x);
  std::vector<std::vector<int>> children(inds.size());
  // the parent of an individual at level h born at b is the unique level h-1
  // individual alive at b; scan in time order with a stack of open individuals
  std::vector<int> rank_at_birth(x.length() + 1, -1);
  for (const auto& ind : inds) rank_at_birth[static_cast<std::size_t>(ind.birth)] = ind.rank;
  const int up = x.positive() ? 1 : -1;
  std::vector<int> open;
  for (std::size_t n = 0; n < x.length(); ++n) {
    if (x.jump(n) == up) {
      int r = rank_at_birth[n];
      if (!open.empty()) children[static_cast<std::size_t>(open.back())].push_back(r);
      open.push_back(r);
    } else {
      open.pop_back();
    }
  }
  return OrderedTree(std::move(children));
}

// Contour excursion via the visiting sequence mx^T, which lists every node twice:
// at its birth and one step before its death. After the first visit of a comes its
// first child (or a again, for a leaf); after the second visit comes the next
// sibling of a, or else the second visit of its parent. First visits are up-jumps.
inline Excursion contour(const OrderedTree& t) {
  const std::size_t n = t.size();
  std::vector<std::size_t> slot(n, 0);  // position of each node among its siblings
  for (std::size_t a = 0; a < n; ++a) {
    const auto& ch = t.children(static_cast<int>(a));
    for (std::size_t j = 0; j < ch.size(); ++j) slot[static_cast<std::size_t>(ch[j])] = j;
  }
  std::vector<int> jumps;
  jumps.reserve(2 * n);
  int cur = 0;
  bool first = true;
  while (true) {
    jumps.push_back(first ? 1 : -1);
    if (first) {
      const auto& ch = t.children(cur);
      if (ch.empty()) first = false;
      else cur = ch.front();
      continue;
    }
    if (cur == 0) break;
    const int par = t.parent(cur);
    const auto& sibs = t.children(par);
    const auto j = slot[static_cast<std::size_t>(cur)] + 1;
    if (j < sibs.size()) {
      cur = sibs[j];
      first = true;
    } else {
      cur = par;
    }
  }
  return Excursion::from_jumps(jumps);
}

namespace detail {

// Canonical class ids: two nodes get equal ids iff their hanging subtrees are
// isomorphic as rooted unordered trees. Ids are shared across the given trees.
inline std::vector<std::vector<int>> canonical_classes(const std::vector<const OrderedTree*>& trees) {
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> cls(trees.size());
  for (std::size_t k = 0; k < trees.size(); ++k) {
    const auto& t = *trees[k];
    cls[k].assign(t.size(), -1);
    auto order = t.bfs_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::vector<int> key;
      for (int c : t.children(*it)) key.push_back(cls[k][static_cast<std::size_t>(c)]);
      std::sort(key.begin(), key.end());
      auto [pos, inserted] = ids.try_emplace(std::move(key), static_cast<int>(ids.size()));
      cls[k][static_cast<std::size_t>(*it)] = pos->second;
    }
  }
  return cls;
}

}  // namespace detail

// Witness xi (node of a -> node of b) when the trees are isomorphic as rooted trees
// with unordered children; nullopt otherwise.
inline std::optional<std::vector<int>> equivalent(const OrderedTree& a, const OrderedTree& b) {
  if (a.size() != b.size()) return std::nullopt;
  auto cls = detail::canonical_classes({&a, &b});
  if (cls[0][0] != cls[1][0]) return std::nullopt;
  std::vector<int> xi(a.size(), -1);
  xi[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int u = queue[i];
    int v = xi[static_cast<std::size_t>(u)];
    auto ca = a.children(u);
    auto cb = b.children(v);
    auto by_class = [](const std::vector<int>& c) {
      return [&c](int l, int r) { return c[static_cast<std::size_t>(l)] < c[static_cast<std::size_t>(r)]; };
    };
    std::stable_sort(ca.begin(), ca.end(), by_class(cls[0]));
    std::stable_sort(cb.begin(), cb.end(), by_class(cls[1]));
    for (std::size_t j = 0; j < ca.size(); ++j) {
      xi[static_cast<std::size_t>(ca[j])] = cb[j];
      queue.push_back(ca[j]);
    }
  }
  return xi;
}

}  // namespace exk
