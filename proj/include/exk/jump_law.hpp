#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exk/errors.hpp"
#include "exk/rational.hpp"

namespace exk {

template <Scalar T>
T ipow(T base, long e) {
  T r = 1;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// State-dependent up-probabilities: an explicit table p_k for |k| <= K and constant
// tails p_plus (k > K) and p_minus (k < -K). q_k = 1 - p_k.
template <Scalar T>
class JumpLaw {
 public:
  JumpLaw(int k, std::vector<T> table, T p_plus, T p_minus)
      : k_(k), table_(std::move(table)), p_plus_(std::move(p_plus)), p_minus_(std::move(p_minus)) {
    if (k_ < 0) throw InvalidLaw("K must be >= 0");
    if (table_.size() != static_cast<std::size_t>(2 * k_ + 1)) throw InvalidLaw("table must hold p_{-K}..p_K");
    for (const auto& p : table_) check(p);
    check(p_plus_);
    check(p_minus_);
  }

  static JumpLaw homogeneous(T p) { return JumpLaw(0, {p}, p, p); }

  int k() const noexcept { return k_; }
  const std::vector<T>& table() const noexcept { return table_; }
  const T& p_plus() const noexcept { return p_plus_; }
  const T& p_minus() const noexcept { return p_minus_; }

  const T& p(long state) const {
    if (state > k_) return p_plus_;
    if (state < -k_) return p_minus_;
    return table_[static_cast<std::size_t>(state + k_)];
  }
  T q(long state) const { return T(1) - p(state); }

  // Transition probability from `from` to `to` (|to - from| = 1).
  T step(long from, long to) const { return to > from ? p(from) : q(from); }

  bool is_homogeneous() const {
    for (const auto& p : table_)
      if (p != p_plus_) return false;
    return p_plus_ == p_minus_;
  }

  friend bool operator==(const JumpLaw&, const JumpLaw&) = default;

 private:
  static void check(const T& p) {
    if (!(p > 0 && p < 1)) throw InvalidLaw("probabilities must lie strictly in (0,1)");
  }

  int k_;
  std::vector<T> table_;
  T p_plus_;
  T p_minus_;
};

// Explicit conversion to the floating backend.
inline JumpLaw<double> to_float(const JumpLaw<Rational>& law) {
  std::vector<double> t;
  for (const auto& p : law.table()) t.push_back(to_double(p));
  return JumpLaw<double>(law.k(), std::move(t), to_double(law.p_plus()), to_double(law.p_minus()));
}
inline JumpLaw<double> to_float(const JumpLaw<double>& law) { return law; }

// Closed forms for the return-probability series of one side of 0. With
// rho_j = prod_{k=1}^{j-1} odds(k), alpha_n = sum_{j<=n} rho_j and, past the table,
// rho grows geometrically with ratio `tail_ratio`.
template <Scalar T>
class SideSeries {
 public:
  // odds(k) for k >= 1 is q_k/p_k on the positive side, p_{-k}/q_{-k} on the negative.
  template <class Odds>
  SideSeries(int k, Odds odds, T tail_ratio) : k_(k), ratio_(std::move(tail_ratio)) {
    rho_.push_back(T(1));  // rho_1
    for (int j = 2; j <= k_ + 1; ++j) rho_.push_back(rho_.back() * odds(j - 1));
    recurrent_ = ratio_ >= 1;
  }

  T rho(long j) const {
    if (j <= k_ + 1) return rho_[static_cast<std::size_t>(j - 1)];
    return rho_.back() * ipow(ratio_, j - k_ - 1);
  }

  T alpha(long n) const {
    if (n <= 0) return T(1);
    T s = 0;
    for (long j = 1; j <= n; ++j) s += rho(j);
    return s;
  }

  bool recurrent() const noexcept { return recurrent_; }

  // nullopt stands for alpha_inf = infinity.
  std::optional<T> alpha_inf() const {
    if (recurrent_) return std::nullopt;
    return tail_after(0);
  }

  // beta_i = 1 - alpha_i / alpha_inf for i >= 1.
  T beta(long i) const {
    if (recurrent_) return T(1);
    return tail_after(i) / tail_after(0);
  }

  const T& tail_ratio() const noexcept { return ratio_; }

 private:
  // sum_{j > i} rho_j, finite when ratio < 1
  T tail_after(long i) const {
    T s = 0;
    long j = i + 1;
    for (; j <= k_; ++j) s += rho(j);
    return s + rho(j) / (T(1) - ratio_);
  }

  int k_;
  T ratio_;
  std::vector<T> rho_;
  bool recurrent_;
};

// Return probabilities beta_i (i != 0), beta_0, and the alpha series of both sides.
template <Scalar T>
class BoundaryData {
 public:
  explicit BoundaryData(JumpLaw<T> law)
      : law_(std::move(law)),
        plus_(law_.k(), [this](long kk) { return law_.q(kk) / law_.p(kk); }, law_.q(law_.k() + 1) / law_.p(law_.k() + 1)),
        minus_(law_.k(), [this](long kk) { return law_.p(-kk) / law_.q(-kk); },
               law_.p(-law_.k() - 1) / law_.q(-law_.k() - 1)) {}

  const JumpLaw<T>& law() const noexcept { return law_; }
  const SideSeries<T>& plus() const noexcept { return plus_; }
  const SideSeries<T>& minus() const noexcept { return minus_; }

  // alpha_n for n >= 0 (positive side), alpha_{-n} for n < 0.
  T alpha(long n) const { return n >= 0 ? plus_.alpha(n) : minus_.alpha(-n); }

  T beta(long i) const {
    if (i > 0) return plus_.beta(i);
    if (i < 0) return minus_.beta(-i);
    return beta0();
  }

  T beta0() const { return law_.p(0) * plus_.beta(1) + law_.q(0) * minus_.beta(1); }

  // P(excursion is positive) and P(excursion is negative).
  T positive_mass() const { return law_.p(0) * plus_.beta(1); }
  T negative_mass() const { return law_.q(0) * minus_.beta(1); }

  // Scale anchors A_i for a walk started at c: A_0 = 0, A_{-1} = -1.
  T anchor(long c, long i) const {
    T s = 0;
    if (i > 0) {
      T prod = 1;
      for (long j = 1; j <= i; ++j) {
        prod *= law_.q(c + j - 1) / law_.p(c + j - 1);
        s += prod;
      }
      return s;
    }
    // A_{-i} = -sum_{j=-(i-1)}^{0} prod_{k=j}^{-1} p_{c+k}/q_{c+k}
    T prod = 1;
    for (long m = 0; m < -i; ++m) {
      if (m > 0) prod *= law_.p(c - m) / law_.q(c - m);
      s -= prod;
    }
    return s;
  }

 private:
  JumpLaw<T> law_;
  SideSeries<T> plus_;
  SideSeries<T> minus_;
};

}  // namespace exk
