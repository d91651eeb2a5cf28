#pragma once

#include <array>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

#include "exk/errors.hpp"
#include "exk/excursion.hpp"
#include "exk/transforms.hpp"

namespace exk {

struct UniqueMaxWitness {
  std::size_t m = 0;  // the coordinate with x_m = H(x)
  bool single_top_individual = false;  // N_{|H|-1} = 1
};

// Witness iff |x| attains its height at exactly one coordinate. Also checks that
// this agrees with N_{|H|-1}(x) = 1 and throws std::logic_error if not.
inline std::optional<UniqueMaxWitness> in_domain(const Excursion& x) {
  const int h = x.height();
  std::size_t hits = 0, m = 0;
  for (std::size_t n = 0; n <= x.length(); ++n) {
    if (x[n] == h) {
      ++hits;
      m = n;
    }
  }
  const auto n = level_numbers(x);
  const bool top = n[static_cast<std::size_t>(std::abs(h) - 1)] == 1;
  if ((hits == 1) != top) throw std::logic_error("unique-max characterizations disagree");
  if (hits != 1) return std::nullopt;
  return UniqueMaxWitness{m, top};
}

inline bool unique_max(const Excursion& x) { return in_domain(x).has_value(); }

// Path values y_n = x_{(n+k) mod theta} - x_k, n = 0..theta.
inline std::vector<int> rotate(const Excursion& x, std::size_t k) {
  const std::size_t t = x.length();
  if (k > t) throw OutOfDomain("0 <= k <= theta");
  std::vector<int> y(t + 1);
  for (std::size_t n = 0; n <= t; ++n) y[n] = x[(n + k) % t] - x[k];
  return y;
}

// Rotation at the unique extremum; maps X^{+,U} to X^{-,U} and back.
inline Excursion vervaat(const Excursion& x) {
  auto w = in_domain(x);
  if (!w) throw NotUniqueMax("height attained more than once");
  return Excursion::from_values(rotate(x, w->m));
}

enum class RotationClass { same_excursion, negative_excursion, not_an_excursion };

inline const char* to_string(RotationClass c) {
  switch (c) {
    case RotationClass::same_excursion: return "same-excursion";
    case RotationClass::negative_excursion: return "negative-excursion";
    default: return "not-an-excursion";
  }
}

inline RotationClass rotation_uniqueness_check(const Excursion& x, std::size_t k) {
  if (!x.positive()) throw OutOfDomain("positive excursion");
  if (k > x.length()) throw OutOfDomain("0 <= k <= theta");
  if (k == 0 || k == x.length()) return RotationClass::same_excursion;
  auto y = rotate(x, k);
  try {
    auto e = Excursion::from_values(y);
    return e.positive() ? RotationClass::same_excursion : RotationClass::negative_excursion;
  } catch (const NotAnExcursion&) {
    return RotationClass::not_an_excursion;
  }
}

// The group generated by negation (bit 0), reversal (bit 1) and Vervaat (bit 2).
// Since the generators commute, an element is a bit mask.
inline Excursion apply_group_element(unsigned mask, const Excursion& x) {
  Excursion y = x;
  if (mask & 4u) y = vervaat(y);
  if (mask & 2u) y = reverse(y);
  if (mask & 1u) y = negate(y);
  return y;
}

inline const char* group_element_name(unsigned mask) {
  static constexpr std::array<const char*, 8> names{"Id", "-", "R", "-R", "V", "-V", "RV", "-RV"};
  return names.at(mask);
}

struct GroupReport {
  std::size_t checked = 0;   // excursions in the test set
  bool involutions = true;   // -^2 = R^2 = V^2 = Id
  bool commute = true;       // -R = R-, -V = V-, RV = VR
  bool closure = true;       // a(b(x)) = (a xor b)(x) for all 64 pairs
  bool distinct = true;      // the 8 elements differ as maps on the test set
  std::vector<std::pair<unsigned, unsigned>> failures;

  bool ok() const { return involutions && commute && closure && distinct; }
};

inline GroupReport group_table(const std::vector<Excursion>& xs) {
  GroupReport r;
  std::array<std::vector<Excursion>, 8> images;
  for (const auto& x : xs) {
    if (!unique_max(x)) continue;
    ++r.checked;
    const auto neg = negate(x), rev = reverse(x), ver = vervaat(x);
    if (!(negate(neg) == x && reverse(rev) == x && vervaat(ver) == x)) r.involutions = false;
    if (!(negate(rev) == reverse(neg) && negate(ver) == vervaat(neg) && reverse(ver) == vervaat(rev)))
      r.commute = false;
    for (unsigned a = 0; a < 8; ++a) {
      images[a].push_back(apply_group_element(a, x));
      for (unsigned b = 0; b < 8; ++b) {
        if (!(apply_group_element(a, apply_group_element(b, x)) == apply_group_element(a ^ b, x))) {
          r.closure = false;
          r.failures.emplace_back(a, b);
        }
      }
    }
  }
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = a + 1; b < 8; ++b)
      if (images[a] == images[b]) {
        r.distinct = false;
        r.failures.emplace_back(a, b);
      }
  return r;
}

}  // namespace exk
