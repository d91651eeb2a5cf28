#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <concepts>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>

#include "exk/errors.hpp"

namespace exk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double d) { return d; }

// Always "num/den", including integers ("1/1"), so the wire form is uniform.
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

namespace detail {

inline BigInt parse_bigint(std::string_view s, std::string_view whole) {
  if (s.empty()) throw InvalidLaw("cannot parse number '" + std::string(whole) + "'");
  std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
  if (start == s.size()) throw InvalidLaw("cannot parse number '" + std::string(whole) + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw InvalidLaw("cannot parse number '" + std::string(whole) + "'");
  }
  auto body = s.substr(start);
  // Boost reads a leading 0 as an octal prefix
  while (body.size() > 1 && body.front() == '0') body.remove_prefix(1);
  BigInt v{std::string(body)};
  return s.front() == '-' ? BigInt(-v) : v;
}

}  // namespace detail

// Accepts "n/d", "n", and plain decimals "0.375" / "1e-2", all converted exactly.
inline Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = detail::parse_bigint(text.substr(0, slash), text);
    BigInt den = detail::parse_bigint(text.substr(slash + 1), text);
    if (den == 0) throw InvalidLaw("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  std::string_view mant = text;
  long exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mant = text.substr(0, e);
    auto es = text.substr(e + 1);
    if (es.starts_with('+')) es.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(es.data(), es.data() + es.size(), exp10);
    if (ec != std::errc{} || ptr != es.data() + es.size())
      throw InvalidLaw("cannot parse number '" + std::string(text) + "'");
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (char ch : mant) {
    if (ch == '.') {
      if (seen_dot) throw InvalidLaw("cannot parse number '" + std::string(text) + "'");
      seen_dot = true;
    } else {
      digits.push_back(ch);
      if (seen_dot) ++frac;
    }
  }
  BigInt num = detail::parse_bigint(digits, text);
  long shift = exp10 - frac;
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
  return shift < 0 ? Rational(num, scale) : Rational(num * scale);
}

// Exact rational value of the shortest decimal that round-trips d ("0.4" -> 2/5).
inline Rational rational_from_double(double d) {
  if (!std::isfinite(d)) throw InvalidLaw("non-finite probability");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

template <Scalar T>
T from_rational(const Rational& r) {
  if constexpr (is_exact_v<T>) return r;
  else return to_double(r);
}

inline BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace exk
