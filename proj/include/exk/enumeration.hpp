#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exk/errors.hpp"
#include "exk/excursion.hpp"
#include "exk/rational.hpp"
#include "exk/tree.hpp"

namespace exk {

// |X+(N)| = prod_{h=1}^{H-2} binom(N_{h+1} + N_h - 1, N_h - 1)
inline BigInt count_excursions(const LevelNumbers& n) {
  BigInt count = 1;
  for (int h = 1; h + 2 <= n.height(); ++h) {
    const long nh = n[static_cast<std::size_t>(h)];
    const long next = n[static_cast<std::size_t>(h) + 1];
    count *= binomial(next + nh - 1, nh - 1);
  }
  return count;
}

// Lazily walks D(M,k) = {(s_1..s_k) >= 0 : sum = M} in lexicographic order.
class Decompositions {
 public:
  Decompositions(long total, long parts) {
    if (total < 0 || parts < 1) throw InvalidDecomposition("need M >= 0 and k >= 1");
    cur_.assign(static_cast<std::size_t>(parts), 0);
    cur_.back() = total;
  }

  // Current tuple, or nullopt when exhausted.
  std::optional<std::vector<long>> next() {
    if (done_) return std::nullopt;
    auto out = cur_;
    advance();
    return out;
  }

  static BigInt size(long total, long parts) { return binomial(total + parts - 1, parts - 1); }

 private:
  void advance() {
    // lexicographic successor: bump the rightmost position (excluding the last)
    // that still has mass to its right, then push all remaining mass to the end
    const std::size_t k = cur_.size();
    if (k == 1) {
      done_ = true;
      return;
    }
    std::size_t i = k - 1;
    while (i > 0 && cur_[i] == 0) --i;
    // cur_[i] > 0 at i >= 1 unless everything sits in slot 0
    if (i == 0) {
      done_ = true;
      return;
    }
    long rest = cur_[i] - 1;
    cur_[i - 1] += 1;
    for (std::size_t j = i; j < k; ++j) cur_[j] = 0;
    cur_[k - 1] = rest;
  }

  std::vector<long> cur_;
  bool done_ = false;
};

inline std::vector<std::vector<long>> decompositions(long total, long parts) {
  std::vector<std::vector<long>> out;
  Decompositions it(total, parts);
  while (auto s = it.next()) out.push_back(std::move(*s));
  return out;
}

// s[h-1] is the child-count tuple of the level-h individuals, h = 1..H(N)-2.
using Decomposition = std::vector<std::vector<long>>;

inline void check_decomposition(const Decomposition& s, const LevelNumbers& n) {
  const int levels = std::max(0, n.height() - 2);
  if (static_cast<int>(s.size()) != levels)
    throw InvalidDecomposition("expected " + std::to_string(levels) + " levels, got " + std::to_string(s.size()));
  for (int h = 1; h <= levels; ++h) {
    const auto& sh = s[static_cast<std::size_t>(h) - 1];
    if (static_cast<long>(sh.size()) != n[static_cast<std::size_t>(h)])
      throw InvalidDecomposition("level " + std::to_string(h) + " needs N_h entries");
    long sum = 0;
    for (long v : sh) {
      if (v < 0) throw InvalidDecomposition("negative child count");
      sum += v;
    }
    if (sum != n[static_cast<std::size_t>(h) + 1])
      throw InvalidDecomposition("level " + std::to_string(h) + " child counts do not sum to N_{h+1}");
  }
}

// The tree T^s: root with N_1 children; the i-th level-h node has s^h_i children,
// and children of earlier parents come first. Nodes are labeled in level order.
inline OrderedTree decomposition_tree(const Decomposition& s, const LevelNumbers& n) {
  check_decomposition(s, n);
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n.total()));
  int next_label = 1;
  std::vector<int> level{0};
  for (int h = 0; h + 1 < n.height(); ++h) {
    std::vector<int> below;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const long k = h == 0 ? n[1] : s[static_cast<std::size_t>(h) - 1][i];
      for (long j = 0; j < k; ++j) {
        children[static_cast<std::size_t>(level[i])].push_back(next_label);
        below.push_back(next_label++);
      }
    }
    level = std::move(below);
  }
  return OrderedTree(std::move(children));
}

inline Excursion eta(const Decomposition& s, const LevelNumbers& n) { return contour(decomposition_tree(s, n)); }

// Child counts per level read off the tree of x; inverse of eta on X+(N).
inline Decomposition decomposition_of(const Excursion& x) {
  const auto t = tree_of(x);
  const auto n = level_numbers(x);
  Decomposition s;
  int node = 1;  // level-1 nodes are ranks 1..N_1
  for (int h = 1; h + 2 <= n.height(); ++h) {
    std::vector<long> sh;
    for (long i = 0; i < n[static_cast<std::size_t>(h)]; ++i)
      sh.push_back(static_cast<long>(t.children(node++).size()));
    s.push_back(std::move(sh));
  }
  return s;
}

// Every element of D(N) = D(N_2, N_1) x ... x D(N_{H-1}, N_{H-2}), materialized.
inline std::vector<Decomposition> all_decompositions(const LevelNumbers& n) {
  std::vector<Decomposition> out{Decomposition{}};
  for (int h = 1; h + 2 <= n.height(); ++h) {
    const auto level = decompositions(n[static_cast<std::size_t>(h) + 1], n[static_cast<std::size_t>(h)]);
    std::vector<Decomposition> next;
    for (const auto& prefix : out)
      for (const auto& sh : level) {
        next.push_back(prefix);
        next.back().push_back(sh);
      }
    out = std::move(next);
  }
  return out;
}

// Streams X+(N) as the image of eta over the odometer of D(N_{h+1}, N_h).
class ExcursionsWithLevels {
 public:
  explicit ExcursionsWithLevels(LevelNumbers n) : n_(std::move(n)) {
    for (int h = 1; h + 2 <= n_.height(); ++h) {
      iters_.emplace_back(n_[static_cast<std::size_t>(h) + 1], n_[static_cast<std::size_t>(h)]);
      cur_.push_back(*iters_.back().next());
    }
  }

  std::optional<Excursion> next() {
    if (done_) return std::nullopt;
    Excursion x = eta(cur_, n_);
    advance();
    return x;
  }

 private:
  void advance() {
    // least significant digit is the deepest level
    for (std::size_t d = iters_.size(); d-- > 0;) {
      if (auto s = iters_[d].next()) {
        cur_[d] = std::move(*s);
        return;
      }
      const long h = static_cast<long>(d) + 1;
      iters_[d] = Decompositions(n_[static_cast<std::size_t>(h) + 1], n_[static_cast<std::size_t>(h)]);
      cur_[d] = *iters_[d].next();
    }
    done_ = true;
  }

  LevelNumbers n_;
  std::vector<Decompositions> iters_;
  Decomposition cur_;
  bool done_ = false;
};

inline std::vector<Excursion> enumerate_excursions(const LevelNumbers& n) {
  std::vector<Excursion> out;
  ExcursionsWithLevels it(n);
  while (auto x = it.next()) out.push_back(std::move(*x));
  return out;
}

// Rise straight to H, then at each level h = H-1..1 let the remaining N_h - 1
// individuals be born and die at once, then descend.
inline Excursion canonical_excursion(const LevelNumbers& n) {
  const int height = n.height();
  std::vector<int> y(static_cast<std::size_t>(2 * n.total()), 0);
  for (int k = 0; k < height; ++k) y[static_cast<std::size_t>(k)] = 1;
  std::size_t pos = static_cast<std::size_t>(height);
  for (int h = height - 1; h >= 0; --h) {
    const long nh = n[static_cast<std::size_t>(h)];
    for (long i = 0; i < nh; ++i) {
      y[pos++] = -1;
      if (i + 1 < nh) y[pos++] = 1;
    }
  }
  return Excursion::from_jumps(y);
}

inline constexpr int brute_force_max_length = 28;

// Visits every positive excursion of length theta by backtracking on partial paths.
inline void for_each_positive_excursion(int theta, const std::function<void(const Excursion&)>& visit) {
  if (theta < 2 || theta % 2 != 0) throw BoundExceeded("theta must be even and >= 2");
  if (theta > brute_force_max_length)
    throw BoundExceeded("theta " + std::to_string(theta) + " > " + std::to_string(brute_force_max_length));
  std::vector<int> y(static_cast<std::size_t>(theta));
  y.front() = 1;
  y.back() = -1;
  // interior steps 1..theta-2 keep the height in [1, remaining]
  std::function<void(int, int)> rec = [&](int n, int height) {
    if (n == theta - 1) {
      if (height == 1) visit(Excursion::from_jumps(y));
      return;
    }
    const int remaining = theta - 1 - n;  // steps left before the final descent
    if (height + 1 <= remaining) {
      y[static_cast<std::size_t>(n)] = 1;
      rec(n + 1, height + 1);
    }
    if (height - 1 >= 1) {
      y[static_cast<std::size_t>(n)] = -1;
      rec(n + 1, height - 1);
    }
  };
  rec(1, 1);
}

inline std::vector<Excursion> brute_force(int theta) {
  std::vector<Excursion> out;
  for_each_positive_excursion(theta, [&](const Excursion& x) { out.push_back(x); });
  return out;
}

// All level-number sequences with total n: N_0 = 1 followed by a composition of n-1.
inline std::vector<LevelNumbers> all_level_numbers(long total) {
  if (total < 1) throw InvalidLevelNumbers("total must be >= 1");
  std::vector<LevelNumbers> out;
  std::vector<long> parts{1};
  std::function<void(long)> rec = [&](long left) {
    if (left == 0) {
      out.emplace_back(parts);
      return;
    }
    for (long k = 1; k <= left; ++k) {
      parts.push_back(k);
      rec(left - k);
      parts.pop_back();
    }
  };
  rec(total - 1);
  return out;
}

}  // namespace exk
