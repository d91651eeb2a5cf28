#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "exk/errors.hpp"
#include "exk/excursion.hpp"
#include "exk/tree.hpp"

namespace exk {

inline Excursion reverse(const Excursion& x) {
  auto v = x.values();
  std::vector<int> r(v.rbegin(), v.rend());
  return Excursion::from_values(r);
}

inline Excursion negate(const Excursion& x) {
  std::vector<int> r(x.values().begin(), x.values().end());
  for (int& v : r) v = -v;
  return Excursion::from_values(r);
}

enum class ShiftKind { bridge, excursion };

inline const char* to_string(ShiftKind k) { return k == ShiftKind::bridge ? "bridge" : "excursion"; }

// E{a,b,c;h}: moves the bridge x[a,b] (both ends at level h) to the visit c of h.
// Only defined on positive excursions.
struct ShiftOp {
  int a = 0;
  int b = 0;
  int c = 0;
  int h = 1;
  ShiftKind kind = ShiftKind::bridge;

  bool is_identity() const noexcept { return c == a || c == b || a == b; }

  ShiftOp inverse() const {
    if (c >= b) return {c - (b - a), c, a, h, kind};
    return {c, c + (b - a), b, h, kind};
  }

  // Index map e_E: result_n = x_{source(n)}.
  int source(int n) const {
    if (c >= b) {
      if (n < a || n >= c) return n;
      if (n <= c - (b - a)) return n + (b - a);
      return n - (c - b);
    }
    if (n <= c || n > b) return n;
    if (n < c + (b - a)) return n + (a - c);  // carries x(a,b]
    return n - (b - a);
  }

  friend bool operator==(const ShiftOp&, const ShiftOp&) = default;
};

// nullopt if x is in the domain of op, else the violated condition.
inline std::optional<std::string> domain_violation(const Excursion& x, const ShiftOp& op) {
  const int theta = static_cast<int>(x.length());
  if (!x.positive()) return "excursion is not positive";
  if (op.h < 1) return "h < 1";
  if (op.a > op.b) return "a > b";
  if (op.a < 0 || op.c < 0 || op.b > theta || op.c > theta) return "index outside [0, theta]";
  if (op.c > op.a && op.c < op.b) return "c inside (a, b)";
  if (op.h > x.height() - 1) return "h > H(x) - 1";
  if (x[static_cast<std::size_t>(op.a)] != op.h) return "x_a != h";
  if (x[static_cast<std::size_t>(op.b)] != op.h) return "x_b != h";
  if (x[static_cast<std::size_t>(op.c)] != op.h) return "x_c != h";
  if (op.kind == ShiftKind::excursion) {
    if (op.a == op.b) return "excursion shift needs a < b";
    for (int n = op.a + 1; n < op.b; ++n)
      if (x[static_cast<std::size_t>(n)] <= op.h) return "x not strictly above h on (a, b)";
  }
  return std::nullopt;
}

struct ShiftResult {
  Excursion x;
  // phi[i] = level-order rank, in the result, of the individual of rank i in the input.
  std::vector<int> phi;
};

namespace detail {

// New position of the jump that started at old position j.
inline int moved_jump(const ShiftOp& op, int j) {
  if (op.c >= op.b) {
    if (j < op.a || j >= op.c) return j;
    if (j < op.b) return j + (op.c - op.b);
    return j - (op.b - op.a);
  }
  if (j < op.c || j >= op.b) return j;
  if (j < op.a) return j + (op.b - op.a);
  return j - (op.a - op.c);
}

inline ShiftResult apply_unchecked(const Excursion& x, const ShiftOp& op) {
  const int theta = static_cast<int>(x.length());
  std::vector<int> v(static_cast<std::size_t>(theta) + 1);
  for (int n = 0; n <= theta; ++n) v[static_cast<std::size_t>(n)] = x[static_cast<std::size_t>(op.source(n))];
  Excursion out = Excursion::from_values(v);
  const auto before = individuals(x);
  const auto after = individuals(out);
  std::vector<int> rank_at_birth(static_cast<std::size_t>(theta) + 1, -1);
  for (const auto& ind : after) rank_at_birth[static_cast<std::size_t>(ind.birth)] = ind.rank;
  std::vector<int> phi(before.size());
  for (const auto& ind : before)
    phi[static_cast<std::size_t>(ind.rank)] = rank_at_birth[static_cast<std::size_t>(moved_jump(op, ind.birth))];
  return {std::move(out), std::move(phi)};
}

}  // namespace detail

inline ShiftResult shift(const Excursion& x, const ShiftOp& op) {
  if (auto why = domain_violation(x, op)) throw OutOfDomain(*why);
  return detail::apply_unchecked(x, op);
}

// Applies ops[0], then ops[1], ...; phi is the composed relabeling.
inline ShiftResult compose(const Excursion& x, const std::vector<ShiftOp>& ops) {
  ShiftResult cur{x, std::vector<int>(x.length() / 2)};
  std::iota(cur.phi.begin(), cur.phi.end(), 0);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (auto why = domain_violation(cur.x, ops[k])) throw OutOfDomain(*why, static_cast<int>(k));
    auto step = detail::apply_unchecked(cur.x, ops[k]);
    for (int& r : cur.phi) r = step.phi[static_cast<std::size_t>(r)];
    cur.x = std::move(step.x);
  }
  return cur;
}

// (E_r o ... o E_1)^-1 = E_1^-1 o ... o E_r^-1
inline std::vector<ShiftOp> inverse(const std::vector<ShiftOp>& ops) {
  std::vector<ShiftOp> inv;
  inv.reserve(ops.size());
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) inv.push_back(it->inverse());
  return inv;
}

namespace detail {

// Level-h individuals of x in level order.
inline std::vector<Individual> level_slice(const std::vector<Individual>& inds, int h) {
  std::vector<Individual> out;
  for (const auto& i : inds)
    if (i.level == h) out.push_back(i);
  return out;
}

// Children of each level-h individual (as individuals), in birth order.
inline std::vector<std::vector<Individual>> children_by_parent(const std::vector<Individual>& inds, int h) {
  auto parents = level_slice(inds, h);
  std::vector<std::vector<Individual>> out(parents.size());
  for (const auto& c : inds) {
    if (c.level != h + 1) continue;
    for (std::size_t r = 0; r < parents.size(); ++r)
      if (parents[r].birth < c.birth && c.death < parents[r].death) out[r].push_back(c);
  }
  return out;
}

// Excursion shift moving child (a level h+1 individual) to the end of the children
// block of parent (a level-h individual).
inline ShiftOp move_to_end(const Individual& child, const Individual& parent) {
  return {child.birth, child.death, parent.death - 1, child.level, ShiftKind::excursion};
}

struct Recorder {
  Excursion x;
  std::vector<ShiftOp> ops;

  void apply(const ShiftOp& op) {
    if (op.is_identity()) return;
    x = shift(x, op).x;
    ops.push_back(op);
  }
};

// Moves the last child of parent rank `from` to the end of parent rank `to` at level h.
inline void transfer_last_child(Recorder& rec, int h, std::size_t from, std::size_t to) {
  auto inds = individuals(rec.x);
  auto parents = level_slice(inds, h);
  auto kids = children_by_parent(inds, h);
  rec.apply(move_to_end(kids[from].back(), parents[to]));
}

// Exchange: afterwards parent i owns the former children of j and vice versa,
// with both ranks unchanged.
inline void exchange_children(Recorder& rec, int h, std::size_t i, std::size_t j) {
  if (i == j) return;
  auto kids = children_by_parent(individuals(rec.x), h);
  const std::size_t ni = kids[i].size();
  const std::size_t nj = kids[j].size();
  // j's children go to the end of i, then i's original children (now first) to j
  for (std::size_t k = 0; k < nj; ++k) {
    auto inds = individuals(rec.x);
    auto parents = level_slice(inds, h);
    auto cur = children_by_parent(inds, h);
    rec.apply(move_to_end(cur[j].front(), parents[i]));
  }
  for (std::size_t k = 0; k < ni; ++k) {
    auto inds = individuals(rec.x);
    auto parents = level_slice(inds, h);
    auto cur = children_by_parent(inds, h);
    rec.apply(move_to_end(cur[i].front(), parents[j]));
  }
}

inline std::vector<std::size_t> child_counts(const Excursion& x, int h) {
  auto kids = children_by_parent(individuals(x), h);
  std::vector<std::size_t> s(kids.size());
  for (std::size_t r = 0; r < kids.size(); ++r) s[r] = kids[r].size();
  return s;
}

}  // namespace detail

// Phase F: excursion shifts making the child counts of every level-h individual
// (in level order) equal to those of target, level by level from the top.
inline std::vector<ShiftOp> equalize_child_counts(const Excursion& x, const Excursion& target) {
  detail::Recorder rec{x, {}};
  const int height = x.height();
  for (int h = 1; h + 1 < height; ++h) {
    const auto want = detail::child_counts(target, h);
    auto have = detail::child_counts(rec.x, h);
    const std::size_t n = want.size();
    // permutation prefix: match as many leading targets as possible by exchanges
    std::size_t k1 = 0;
    for (; k1 < n; ++k1) {
      std::size_t j = k1;
      while (j < n && have[j] != want[k1]) ++j;
      if (j == n) break;
      detail::exchange_children(rec, h, k1, j);
      std::swap(have[k1], have[j]);
    }
    // greedy equalization of the rest; surplus goes to (deficit comes from) the
    // smallest later rank that can absorb (supply) it
    for (std::size_t r = k1; r < n; ++r) {
      while (have[r] > want[r]) {
        std::size_t u = r + 1;
        while (have[u] >= want[u]) ++u;
        detail::transfer_last_child(rec, h, r, u);
        --have[r];
        ++have[u];
      }
      while (have[r] < want[r]) {
        std::size_t u = r + 1;
        while (have[u] <= want[u]) ++u;
        detail::transfer_last_child(rec, h, u, r);
        ++have[r];
        --have[u];
      }
    }
  }
  return rec.ops;
}

// Phase F': given T(x) equivalent to T(target), reorder children node by node (top
// down) so that the contour becomes target. Only same-parent shifts are used.
inline std::vector<ShiftOp> reorder_children(const Excursion& x, const Excursion& target) {
  detail::Recorder rec{x, {}};
  const int height = x.height();
  for (int h = 0; h + 1 < height; ++h) {
    // at this point levels <= h coincide rank-by-rank and subtrees hanging from
    // equal ranks are equivalent
    const auto tt = tree_of(target);
    const auto tx = tree_of(rec.x);
    auto cls = detail::canonical_classes({&tx, &tt});
    const auto xinds = individuals(rec.x);
    const auto parents = detail::level_slice(xinds, h);
    for (std::size_t r = 0; r < parents.size(); ++r) {
      const int node = parents[r].rank;
      const auto& want = tt.children(node);
      std::vector<int> pool = tx.children(node);
      std::vector<int> chosen;  // x-children in the order the target needs
      for (int w : want) {
        auto it = std::find_if(pool.begin(), pool.end(), [&](int c) {
          return cls[0][static_cast<std::size_t>(c)] == cls[1][static_cast<std::size_t>(w)];
        });
        if (it == pool.end()) throw LevelNumbersMismatch("trees are not equivalent");
        chosen.push_back(*it);
        pool.erase(it);
      }
      const auto kids0 = tx.children(node);
      if (chosen == kids0) continue;
      // births of the chosen children in the current x; each move to the end keeps
      // the relative order of the others, so track them by ordinal among siblings
      std::vector<std::size_t> ordinal;
      for (int c : chosen)
        ordinal.push_back(static_cast<std::size_t>(std::find(kids0.begin(), kids0.end(), c) - kids0.begin()));
      std::vector<std::size_t> order(kids0.size());
      std::iota(order.begin(), order.end(), 0);
      for (std::size_t o : ordinal) {
        auto inds = individuals(rec.x);
        auto ps = detail::level_slice(inds, h);
        auto kids = detail::children_by_parent(inds, h);
        auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), o) - order.begin());
        rec.apply(detail::move_to_end(kids[r][pos], ps[r]));
        order.erase(order.begin() + static_cast<std::ptrdiff_t>(pos));
        order.push_back(o);
      }
    }
  }
  return rec.ops;
}

// Sequence of excursion shifts carrying x to target (equal level numbers, both
// positive): child-count equalization followed by child reordering.
inline std::vector<ShiftOp> shift_sequence(const Excursion& x, const Excursion& target) {
  if (!x.positive() || !target.positive()) throw OutOfDomain("excursion is not positive");
  if (level_numbers(x) != level_numbers(target))
    throw LevelNumbersMismatch(level_numbers(x).str() + " vs " + level_numbers(target).str());
  auto ops = equalize_child_counts(x, target);
  auto mid = compose(x, ops).x;
  auto tail = reorder_children(mid, target);
  ops.insert(ops.end(), tail.begin(), tail.end());
  return ops;
}

}  // namespace exk
