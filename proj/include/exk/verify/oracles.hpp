#pragma once

// Independent reference computations used by the tests and the acceptance suite.
// None of these call the code paths they are compared against.

#include <random>
#include <set>
#include <vector>

#include "exk/enumeration.hpp"
#include "exk/excursion.hpp"
#include "exk/jump_law.hpp"
#include "exk/rational.hpp"
#include "exk/transforms.hpp"

namespace exk::oracle {

inline BigInt catalan(long n) {
  // C_n = C_{n-1} * 2(2n-1)/(n+1)
  BigInt c = 1;
  for (long k = 1; k <= n; ++k) c = c * 2 * (2 * k - 1) / (k + 1);
  return c;
}

// All positive excursions of length theta by filtering every +-1 word.
inline std::vector<Excursion> all_positive_words(int theta) {
  std::vector<Excursion> out;
  const unsigned long total = 1ul << theta;
  std::vector<int> y(static_cast<std::size_t>(theta));
  for (unsigned long w = 0; w < total; ++w) {
    int s = 0;
    bool ok = true;
    for (int n = 0; n < theta && ok; ++n) {
      y[static_cast<std::size_t>(n)] = (w >> n) & 1ul ? 1 : -1;
      s += y[static_cast<std::size_t>(n)];
      ok = s > 0 || (s == 0 && n == theta - 1);
    }
    if (ok && s == 0) out.push_back(Excursion::from_jumps(y));
  }
  return out;
}

inline std::vector<Excursion> filter_by_levels(const std::vector<Excursion>& xs, const LevelNumbers& n) {
  std::vector<Excursion> out;
  for (const auto& x : xs)
    if (level_numbers(x) == n) out.push_back(x);
  return out;
}

// Both signs, every length 2..max_theta.
inline std::vector<Excursion> all_excursions_up_to(int max_theta) {
  std::vector<Excursion> out;
  for (int t = 2; t <= max_theta; t += 2)
    for_each_positive_excursion(t, [&](const Excursion& x) {
      out.push_back(x);
      out.push_back(negate(x));
    });
  return out;
}

// Shift by splicing jump segments: [a,b) and [b,c) swap when b <= c; [c,a) and
// [a,b) swap when c <= a.
inline Excursion spliced_shift(const Excursion& x, const ShiftOp& op) {
  const auto j = x.jumps();
  auto seg = [&](int lo, int hi) { return std::vector<int>(j.begin() + lo, j.begin() + hi); };
  std::vector<int> out = seg(0, std::min(op.a, op.c));
  auto append = [&](const std::vector<int>& v) { out.insert(out.end(), v.begin(), v.end()); };
  if (op.b <= op.c) {
    append(seg(op.b, op.c));
    append(seg(op.a, op.b));
    append(seg(op.c, static_cast<int>(j.size())));
  } else {
    append(seg(op.a, op.b));
    append(seg(op.c, op.a));
    append(seg(op.b, static_cast<int>(j.size())));
  }
  return Excursion::from_jumps(out);
}

// P_c(tau_s < tau_r) by Gaussian elimination on u_j = p_j u_{j+1} + q_j u_{j-1},
// u_r = 0, u_s = 1.
inline Rational ruin_linear_system(const JumpLaw<Rational>& law, long c, long r, long s) {
  const auto m = static_cast<std::size_t>(s - r - 1);  // interior unknowns r+1..s-1
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    const long j = r + 1 + static_cast<long>(i);
    a[i][i] = 1;
    if (i + 1 < m) a[i][i + 1] = -law.p(j);
    else a[i][m] += law.p(j);  // u_s = 1 moves to the right-hand side
    if (i > 0) a[i][i - 1] = -law.q(j);
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    for (std::size_t row = 0; row < m; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col] / a[col][col];
      for (std::size_t k = col; k <= m; ++k) a[row][k] -= f * a[col][k];
    }
  }
  const auto i = static_cast<std::size_t>(c - r - 1);
  return a[i][m] / a[i][i];
}

// Random law with small-denominator rational entries.
inline JumpLaw<Rational> random_rational_law(std::mt19937_64& g, int max_k = 3, int max_den = 12, int min_k = 0) {
  auto prob = [&] {
    std::uniform_int_distribution<int> den(2, max_den);
    const int d = den(g);
    std::uniform_int_distribution<int> num(1, d - 1);
    return Rational(num(g), d);
  };
  std::uniform_int_distribution<int> kd(min_k, max_k);
  const int k = kd(g);
  std::vector<Rational> t;
  for (int i = -k; i <= k; ++i) t.push_back(prob());
  const Rational pp = prob(), pm = prob();
  return JumpLaw<Rational>(k, std::move(t), pp, pm);
}

// Homogeneous closed forms for the height laws, p != q.
inline Rational height_tail_homogeneous(const Rational& p, long s) {
  const Rational q = 1 - p;
  const Rational beta_s = p > q ? ipow(Rational(q / p), s) : Rational(1);
  return beta_s * ipow(p, s - 1) * (q - p) / (ipow(q, s) - ipow(p, s));
}

inline Rational height_unique_homogeneous(const Rational& p, long s) {
  const Rational q = 1 - p;
  const Rational f = (q - p) / (ipow(q, s) - ipow(p, s));
  return q * ipow(Rational(p * q), s - 1) * f * f;
}

// beta_i by summing the defining series directly: beta_i = 1 - alpha_i / alpha_inf,
// with the geometric tail of rho beyond K summed in closed form.
inline Rational beta_direct(const JumpLaw<Rational>& law, long i) {
  const int sign = i > 0 ? 1 : -1;
  auto odds = [&](long k) {
    return sign > 0 ? law.q(k) / law.p(k) : law.p(-k) / law.q(-k);
  };
  const long depth = i > 0 ? i : -i;
  const long far = std::max<long>(depth, law.k()) + 1;
  std::vector<Rational> rho{Rational(1)};
  for (long j = 2; j <= far + 1; ++j) rho.push_back(rho.back() * odds(j - 1));
  const Rational ratio = odds(far + 1);
  if (ratio >= 1) return 1;
  Rational head_all = 0, head_i = 0;
  for (long j = 1; j <= far; ++j) {
    head_all += rho[static_cast<std::size_t>(j - 1)];
    if (j <= depth) head_i += rho[static_cast<std::size_t>(j - 1)];
  }
  const Rational alpha_inf = head_all + rho[static_cast<std::size_t>(far)] / (1 - ratio);
  return 1 - head_i / alpha_inf;
}

}  // namespace exk::oracle
