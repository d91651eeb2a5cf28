#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "exk/enumeration.hpp"
#include "exk/excursion.hpp"
#include "exk/jump_law.hpp"

namespace exk {

namespace detail {

template <Scalar T>
bool agree(const T& a, const T& b) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return std::abs(a - b) <= 1e-9 * std::max({1e-300, std::abs(a), std::abs(b)});
  }
}

template <Scalar T>
void require_agree(const T& a, const T& b, const char* what) {
  if (!agree(a, b)) throw std::logic_error(std::string(what) + ": the two evaluations disagree");
}

}  // namespace detail

template <Scalar T>
BoundaryData<T> boundary(const JumpLaw<T>& law) {
  return BoundaryData<T>(law);
}

// Unconditional probability that the walk from 0 follows x exactly.
template <Scalar T>
T path_probability(const JumpLaw<T>& law, const Excursion& x) {
  T r = 1;
  for (std::size_t n = 0; n < x.length(); ++n) r *= law.step(x[n], x[n + 1]);
  return r;
}

// Product over individuals, grouped by level: (p_h q_{h+1})^{N_h} for positive
// excursions, (q_{-h} p_{-h-1})^{N_h} for negative ones.
template <Scalar T>
T level_product(const JumpLaw<T>& law, const LevelNumbers& n, Sign sign) {
  T r = 1;
  for (int d = 0; d < n.height(); ++d) {
    T f = sign == Sign::positive ? law.p(d) * law.q(d + 1) : law.q(-d) * law.p(-d - 1);
    r *= ipow(f, n[static_cast<std::size_t>(d)]);
  }
  return r;
}

// P(walk enters the sign class of x and eventually returns).
template <Scalar T>
T sign_mass(const BoundaryData<T>& bd, Sign sign) {
  return sign == Sign::positive ? bd.positive_mass() : bd.negative_mass();
}

// Probability of x conditional on the excursion having x's sign and being finite,
// from the path product.
template <Scalar T>
T excursion_prob_path(const BoundaryData<T>& bd, const Excursion& x) {
  return path_probability(bd.law(), x) / sign_mass(bd, x.sign());
}

// Same quantity from the level numbers alone.
template <Scalar T>
T excursion_prob_levels(const BoundaryData<T>& bd, const LevelNumbers& n, Sign sign) {
  return level_product(bd.law(), n, sign) / sign_mass(bd, sign);
}

// Evaluates both forms and throws std::logic_error if they differ.
template <Scalar T>
T excursion_prob(const BoundaryData<T>& bd, const Excursion& x) {
  T a = excursion_prob_path(bd, x);
  T b = excursion_prob_levels(bd, level_numbers(x), x.sign());
  detail::require_agree(a, b, "excursion_prob");
  return a;
}

template <Scalar T>
T excursion_prob(const JumpLaw<T>& law, const Excursion& x) {
  return excursion_prob(boundary(law), x);
}

// Total conditional mass of the positive excursions with level numbers N.
template <Scalar T>
T class_prob(const BoundaryData<T>& bd, const LevelNumbers& n) {
  T c = from_rational<T>(Rational(count_excursions(n)));
  return c * excursion_prob_levels(bd, n, Sign::positive);
}

template <Scalar T>
T class_prob(const JumpLaw<T>& law, const LevelNumbers& n) {
  return class_prob(boundary(law), n);
}

template <Scalar T>
struct RuinProb {
  T upper;  // P_c(tau_s < tau_r)
  T lower;  // P_c(tau_r < tau_s)
};

// Exit probabilities of [r, s] from c via the martingale A_{X_n - c}.
template <Scalar T>
RuinProb<T> ruin_prob(const BoundaryData<T>& bd, long c, long r, long s) {
  if (!(r < c && c < s)) throw OutOfDomain("r < c < s");
  T ar = bd.anchor(c, r - c);
  T as = bd.anchor(c, s - c);
  T up = -ar / (as - ar);
  return {up, T(1) - up};
}

template <Scalar T>
RuinProb<T> ruin_prob(const JumpLaw<T>& law, long c, long r, long s) {
  return ruin_prob(boundary(law), c, r, s);
}

// Second route: normalized sums of w_j = prod_{k=r+1}^{j} q_k/p_k over [r, c) and [r, s).
template <Scalar T>
RuinProb<T> ruin_prob_scale(const JumpLaw<T>& law, long c, long r, long s) {
  if (!(r < c && c < s)) throw OutOfDomain("r < c < s");
  T w = 1, num = 0, den = 0;
  for (long j = r; j < s; ++j) {
    if (j > r) w *= law.q(j) / law.p(j);
    if (j < c) num += w;
    den += w;
  }
  T up = num / den;
  return {up, T(1) - up};
}

// P_1(Theta < inf, H >= s) = P_1(tau_s < tau_0) * beta_s.
template <Scalar T>
T height_tail(const BoundaryData<T>& bd, long s) {
  if (s < 1) throw OutOfDomain("s >= 1");
  if (s == 1) return bd.beta(1);
  return ruin_prob(bd, 1, 0, s).upper * bd.beta(s);
}

// P_1(Theta < inf, unique maximum, H = s) = P_1(tau_s < tau_0) q_s P_{s-1}(tau_0 < tau_s).
template <Scalar T>
T height_unique(const BoundaryData<T>& bd, long s) {
  if (s < 1) throw OutOfDomain("s >= 1");
  const auto& law = bd.law();
  if (s == 1) return law.q(1);
  return ruin_prob(bd, 1, 0, s).upper * law.q(s) * ruin_prob(bd, s - 1, 0, s).lower;
}

template <Scalar T>
T height_tail(const JumpLaw<T>& law, long s) {
  return height_tail(boundary(law), s);
}
template <Scalar T>
T height_unique(const JumpLaw<T>& law, long s) {
  return height_unique(boundary(law), s);
}

// Law conditioned on return to 0: tp_i = p_i b(i+1)/b(i), tq_i = q_i b(i-1)/b(i) with
// b = beta off 0 and b(0) = 1 as a target, beta_0 as a start. Past K the ratios are
// constant, so the result keeps the same K.
template <Scalar T>
JumpLaw<T> doob_law(const BoundaryData<T>& bd) {
  const auto& law = bd.law();
  const int k = law.k();
  const T b0 = bd.beta0();
  auto target = [&](long j) { return j == 0 ? T(1) : bd.beta(j); };
  auto start = [&](long j) { return j == 0 ? b0 : bd.beta(j); };
  std::vector<T> table;
  for (long i = -k; i <= k; ++i) {
    T tp = law.p(i) * target(i + 1) / start(i);
    T tq = law.q(i) * target(i - 1) / start(i);
    detail::require_agree(T(tp + tq), T(1), "doob_law row sum");
    table.push_back(tp);
  }
  T p_plus = bd.plus().recurrent() ? law.p_plus() : T(1) - law.p_plus();
  T p_minus = bd.minus().recurrent() ? law.p_minus() : T(1) - law.p_minus();
  return JumpLaw<T>(k, std::move(table), p_plus, p_minus);
}

template <Scalar T>
JumpLaw<T> doob_law(const JumpLaw<T>& law) {
  return doob_law(boundary(law));
}

// P_0(X^Theta = x | Theta < inf), checked against the path product under doob_law.
template <Scalar T>
T conditional_excursion_prob(const BoundaryData<T>& bd, const JumpLaw<T>& doob, const Excursion& x) {
  T a = path_probability(bd.law(), x) / bd.beta0();
  T b = path_probability(doob, x);
  detail::require_agree(a, b, "conditional_excursion_prob");
  return a;
}

template <Scalar T>
T conditional_excursion_prob(const JumpLaw<T>& law, const Excursion& x) {
  auto bd = boundary(law);
  return conditional_excursion_prob(bd, doob_law(bd), x);
}

}  // namespace exk
