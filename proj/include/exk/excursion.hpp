#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "exk/errors.hpp"

namespace exk {

enum class Sign { positive, negative };

inline const char* to_string(Sign s) { return s == Sign::positive ? "positive" : "negative"; }

// A +-1 lattice path x_0..x_theta with x_0 = 0 = x_theta that stays strictly on one
// side of 0 in between. Immutable after construction.
class Excursion {
 public:
  static Excursion from_jumps(std::span<const int> jumps) {
    if (jumps.empty()) throw NotAnExcursion("empty");
    std::vector<int> values(jumps.size() + 1, 0);
    for (std::size_t n = 0; n < jumps.size(); ++n) {
      if (jumps[n] != 1 && jumps[n] != -1) throw NotAnExcursion("bad-step");
      values[n + 1] = values[n] + jumps[n];
    }
    return from_values_unchecked(std::move(values));
  }

  static Excursion from_jumps(std::initializer_list<int> jumps) {
    return from_jumps(std::span<const int>(jumps.begin(), jumps.size()));
  }

  static Excursion from_values(std::span<const int> values) {
    if (values.size() < 2) throw NotAnExcursion("empty");
    if (values.front() != 0) throw NotAnExcursion("nonzero-endpoint");
    for (std::size_t n = 1; n < values.size(); ++n) {
      int d = values[n] - values[n - 1];
      if (d != 1 && d != -1) throw NotAnExcursion("bad-step");
    }
    return from_values_unchecked(std::vector<int>(values.begin(), values.end()));
  }

  static Excursion from_values(std::initializer_list<int> values) {
    return from_values(std::span<const int>(values.begin(), values.size()));
  }

  // "0 1 2 1 0"
  static Excursion parse_values(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> v;
    int x;
    while (in >> x) v.push_back(x);
    if (!in.eof()) throw NotAnExcursion("bad-step");
    return from_values(v);
  }

  std::span<const int> values() const noexcept { return values_; }
  int value(std::size_t n) const { return values_.at(n); }
  int operator[](std::size_t n) const noexcept { return values_[n]; }

  std::vector<int> jumps() const {
    std::vector<int> y(length());
    for (std::size_t n = 0; n < y.size(); ++n) y[n] = values_[n + 1] - values_[n];
    return y;
  }
  int jump(std::size_t n) const { return values_.at(n + 1) - values_.at(n); }

  std::size_t length() const noexcept { return values_.size() - 1; }
  Sign sign() const noexcept { return sign_; }
  bool positive() const noexcept { return sign_ == Sign::positive; }
  // Signed: max for positive excursions, min for negative ones.
  int height() const noexcept { return height_; }

  std::string str() const {
    std::string s;
    for (std::size_t n = 0; n < values_.size(); ++n) {
      if (n) s.push_back(' ');
      s += std::to_string(values_[n]);
    }
    return s;
  }

  // Jump string "+-+-", used as a compact bucket key.
  std::string jump_string() const {
    std::string s(length(), '+');
    for (std::size_t n = 0; n < length(); ++n)
      if (values_[n + 1] < values_[n]) s[n] = '-';
    return s;
  }

  friend bool operator==(const Excursion& a, const Excursion& b) { return a.values_ == b.values_; }
  friend bool operator<(const Excursion& a, const Excursion& b) { return a.values_ < b.values_; }

 private:
  Excursion(std::vector<int> values, Sign sign, int height)
      : values_(std::move(values)), sign_(sign), height_(height) {}

  static Excursion from_values_unchecked(std::vector<int> values) {
    if (values.back() != 0) throw NotAnExcursion("nonzero-endpoint");
    const bool pos = values[1] > 0;
    int h = 0;
    for (std::size_t n = 1; n + 1 < values.size(); ++n) {
      int v = values[n];
      if (v == 0) throw NotAnExcursion("interior-zero");
      if ((v > 0) != pos) throw NotAnExcursion("mixed-sign");
      h = pos ? std::max(h, v) : std::min(h, v);
    }
    return Excursion(std::move(values), pos ? Sign::positive : Sign::negative, h);
  }

  std::vector<int> values_;
  Sign sign_;
  int height_;
};

// A matched birth/death pair. For negative excursions births happen on -1 jumps
// and levels are <= 0.
struct Individual {
  int birth = 0;
  int level = 0;
  int death = 0;
  int rank = 0;

  int life_length() const noexcept { return death - birth; }
  friend bool operator==(const Individual&, const Individual&) = default;
};

// Individuals in level order (|level| first, then birth time), ranks 0..theta/2-1.
inline std::vector<Individual> individuals(const Excursion& x) {
  const int up = x.positive() ? 1 : -1;
  std::vector<Individual> out;
  out.reserve(x.length() / 2);
  std::vector<std::size_t> open;
  for (std::size_t n = 0; n < x.length(); ++n) {
    if (x.jump(n) == up) {
      open.push_back(out.size());
      out.push_back({static_cast<int>(n), x[n], 0, 0});
    } else {
      out[open.back()].death = static_cast<int>(n) + 1;
      open.pop_back();
    }
  }
  std::sort(out.begin(), out.end(), [](const Individual& a, const Individual& b) {
    int la = a.level < 0 ? -a.level : a.level;
    int lb = b.level < 0 ? -b.level : b.level;
    return la != lb ? la < lb : a.birth < b.birth;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i);
  return out;
}

// Occupation counts N_0, N_1, ... indexed by depth |h|. Stored without trailing
// zeros, so height() is the extinction level H(N).
class LevelNumbers {
 public:
  LevelNumbers() : counts_{1} {}

  explicit LevelNumbers(std::vector<long> counts) : counts_(std::move(counts)) {
    while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
    if (counts_.empty() || counts_.front() != 1) throw InvalidLevelNumbers("N_0 must be 1");
    for (long c : counts_) {
      if (c < 0) throw InvalidLevelNumbers("negative count");
      if (c == 0) throw InvalidLevelNumbers("zero count before extinction");
    }
  }

  LevelNumbers(std::initializer_list<long> counts) : LevelNumbers(std::vector<long>(counts)) {}

  std::span<const long> counts() const noexcept { return counts_; }
  // N_h, zero past extinction.
  long operator[](std::size_t h) const noexcept { return h < counts_.size() ? counts_[h] : 0; }
  int height() const noexcept { return static_cast<int>(counts_.size()); }
  long total() const noexcept { return std::accumulate(counts_.begin(), counts_.end(), 0L); }

  std::string str() const {
    std::string s;
    for (std::size_t h = 0; h < counts_.size(); ++h) {
      if (h) s.push_back(',');
      s += std::to_string(counts_[h]);
    }
    return s;
  }

  friend bool operator==(const LevelNumbers&, const LevelNumbers&) = default;
  friend auto operator<=>(const LevelNumbers& a, const LevelNumbers& b) { return a.counts_ <=> b.counts_; }

 private:
  std::vector<long> counts_;
};

inline LevelNumbers level_numbers(const Excursion& x) {
  const int up = x.positive() ? 1 : -1;
  std::vector<long> counts(static_cast<std::size_t>(up * x.height()), 0);
  for (std::size_t n = 0; n < x.length(); ++n)
    if (x.jump(n) == up) ++counts[static_cast<std::size_t>(up * x[n])];
  return LevelNumbers(std::move(counts));
}

// mx_x: entry n is the rank of the individual born at n or dying at n+1.
using IndexSequence = std::vector<int>;

inline IndexSequence index_sequence(const Excursion& x) {
  IndexSequence s(x.length(), -1);
  for (const auto& ind : individuals(x)) {
    s[static_cast<std::size_t>(ind.birth)] = ind.rank;
    s[static_cast<std::size_t>(ind.death - 1)] = ind.rank;
  }
  return s;
}

// Inverse of index_sequence for positive excursions. The labels must be exactly the
// level-order ranks, so the round trip is the identity in both directions.
inline Excursion from_index_sequence(std::span<const int> s) {
  if (s.empty() || s.size() % 2 != 0) throw MalformedSequence("odd or empty length");
  const std::size_t n_ind = s.size() / 2;
  std::vector<int> seen(n_ind, 0);
  for (int v : s) {
    if (v < 0 || static_cast<std::size_t>(v) >= n_ind) throw MalformedSequence("label out of range");
    if (++seen[static_cast<std::size_t>(v)] > 2) throw MalformedSequence("label appears more than twice");
  }
  if (std::find_if(seen.begin(), seen.end(), [](int c) { return c != 2; }) != seen.end())
    throw MalformedSequence("label does not appear exactly twice");
  std::vector<int> jumps(s.size());
  std::vector<int> open;
  std::vector<char> started(n_ind, 0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    auto v = static_cast<std::size_t>(s[j]);
    if (!started[v]) {
      started[v] = 1;
      open.push_back(s[j]);
      jumps[j] = 1;
    } else {
      if (open.empty() || open.back() != s[j]) throw MalformedSequence("crossing occurrences");
      open.pop_back();
      jumps[j] = -1;
      if (open.empty() && j + 1 != s.size()) throw MalformedSequence("root does not enclose the sequence");
    }
  }
  Excursion x = Excursion::from_jumps(jumps);
  if (index_sequence(x) != IndexSequence(s.begin(), s.end()))
    throw MalformedSequence("labels are not level-order ranks");
  return x;
}

}  // namespace exk
