#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "exk/excursion.hpp"
#include "exk/probability.hpp"
#include "exk/vervaat.hpp"

namespace exk {

inline constexpr std::size_t default_theta_max = 1'000'000;

// One draw: either a finite excursion or a path that hit the length cap.
struct SampleOutcome {
  std::optional<Excursion> x;
  std::size_t steps = 0;
  bool capped() const noexcept { return !x.has_value(); }
};

// Walks the Doob-transformed law from 0 until the first return.
class DoobSampler {
 public:
  template <Scalar T>
  explicit DoobSampler(const JumpLaw<T>& law, std::size_t theta_max = default_theta_max)
      : doob_(to_float(doob_law(law))), theta_max_(theta_max) {}

  const JumpLaw<double>& law() const noexcept { return doob_; }
  std::size_t theta_max() const noexcept { return theta_max_; }

  template <class Urbg>
  SampleOutcome operator()(Urbg& g) const {
    std::vector<int> values{0};
    int s = 0;
    do {
      s += uniform(g) < doob_.p(s) ? 1 : -1;
      values.push_back(s);
    } while (s != 0 && values.size() <= theta_max_);
    if (s != 0) return {std::nullopt, values.size() - 1};
    const auto steps = values.size() - 1;
    return {Excursion::from_values(values), steps};
  }

 private:
  template <class Urbg>
  static double uniform(Urbg& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
  }

  JumpLaw<double> doob_;
  std::size_t theta_max_;
};

// Independent generator for substream `worker` of `seed`.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(worker), static_cast<std::uint32_t>(worker >> 32)};
  return std::mt19937_64(seq);
}

template <Scalar T>
SampleOutcome sample_excursion(const JumpLaw<T>& law, std::uint64_t seed,
                               std::size_t theta_max = default_theta_max) {
  auto g = substream(seed, 0);
  return DoobSampler(law, theta_max)(g);
}

// Draws n samples split into contiguous chunks, one chunk and one substream per
// worker, and merges the per-worker accumulators in worker order. The result
// depends only on (seed, n, workers).
template <class Acc>
Acc sample_reduce(const DoobSampler& sampler, std::uint64_t n, std::uint64_t seed, unsigned workers,
                  const std::function<Acc()>& make,
                  const std::function<void(Acc&, const SampleOutcome&)>& add) {
  if (workers == 0) workers = 1;
  std::vector<Acc> accs;
  for (unsigned w = 0; w < workers; ++w) accs.push_back(make());
  auto body = [&](unsigned w) {
    auto g = substream(seed, w);
    const std::uint64_t lo = n * w / workers, hi = n * (w + 1) / workers;
    for (std::uint64_t i = lo; i < hi; ++i) add(accs[w], sampler(g));
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  Acc out = std::move(accs[0]);
  for (unsigned w = 1; w < workers; ++w) out.merge(accs[w]);
  return out;
}

struct SampleReport {
  std::string event;
  std::uint64_t n = 0;  // samples satisfying the condition
  double estimate = 0;
  double std_error = 0;
  std::optional<double> exact;
  std::optional<double> z;
  std::uint64_t capped = 0;
};

using ExcursionPredicate = std::function<bool(const Excursion&)>;

struct Event {
  std::string name;
  ExcursionPredicate predicate;
  ExcursionPredicate condition;  // empty: all finite samples
  std::optional<double> exact;
};

inline SampleReport make_report(std::string name, std::uint64_t n, std::uint64_t hits, std::uint64_t capped,
                                std::optional<double> exact) {
  SampleReport r;
  r.event = std::move(name);
  r.n = n;
  r.capped = capped;
  r.exact = exact;
  if (n > 0) {
    r.estimate = static_cast<double>(hits) / static_cast<double>(n);
    r.std_error = std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(n));
  }
  if (exact) {
    const double d = r.estimate - *exact;
    if (r.std_error > 0) r.z = d / r.std_error;
    else r.z = d == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), d);
  }
  return r;
}

namespace detail {

struct EventCounts {
  std::vector<std::uint64_t> n, hits;
  std::uint64_t capped = 0;

  void merge(const EventCounts& o) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      n[i] += o.n[i];
      hits[i] += o.hits[i];
    }
    capped += o.capped;
  }
};

}  // namespace detail

// Estimates every event on one shared sample stream. Capped paths are excluded
// from each event's sample count and reported separately.
template <Scalar T>
std::vector<SampleReport> estimate(const JumpLaw<T>& law, const std::vector<Event>& events, std::uint64_t n,
                                   std::uint64_t seed, unsigned workers = 1,
                                   std::size_t theta_max = default_theta_max) {
  if (n < 1) throw OutOfDomain("n >= 1");
  DoobSampler sampler(law, theta_max);
  auto make = [&] {
    detail::EventCounts c;
    c.n.assign(events.size(), 0);
    c.hits.assign(events.size(), 0);
    return c;
  };
  auto add = [&](detail::EventCounts& c, const SampleOutcome& o) {
    if (o.capped()) {
      ++c.capped;
      return;
    }
    for (std::size_t i = 0; i < events.size(); ++i) {
      const auto& e = events[i];
      if (e.condition && !e.condition(*o.x)) continue;
      ++c.n[i];
      if (e.predicate(*o.x)) ++c.hits[i];
    }
  };
  auto c = sample_reduce<detail::EventCounts>(sampler, n, seed, workers, make, add);
  std::vector<SampleReport> out;
  for (std::size_t i = 0; i < events.size(); ++i)
    out.push_back(make_report(events[i].name, c.n[i], c.hits[i], c.capped, events[i].exact));
  return out;
}

template <Scalar T>
SampleReport estimate(const JumpLaw<T>& law, const Event& event, std::uint64_t n, std::uint64_t seed,
                      unsigned workers = 1, std::size_t theta_max = default_theta_max) {
  return estimate(law, std::vector<Event>{event}, n, seed, workers, theta_max).front();
}

// Empirical law of the jump strings of length <= max_theta; everything else,
// including capped paths, lands in `other`.
struct BucketCounts {
  std::size_t max_theta = 12;
  std::map<std::string, std::uint64_t> buckets;
  std::uint64_t other = 0;
  std::uint64_t total = 0;

  void add(const SampleOutcome& o) {
    ++total;
    if (!o.capped() && o.x->length() <= max_theta) ++buckets[o.x->jump_string()];
    else ++other;
  }
  void merge(const BucketCounts& o) {
    for (const auto& [k, v] : o.buckets) buckets[k] += v;
    other += o.other;
    total += o.total;
  }
};

template <Scalar T>
BucketCounts bucket_samples(const JumpLaw<T>& law, std::uint64_t n, std::uint64_t seed, unsigned workers = 1,
                            std::size_t max_theta = 12, std::size_t theta_max = default_theta_max) {
  DoobSampler sampler(law, theta_max);
  return sample_reduce<BucketCounts>(
      sampler, n, seed, workers, [&] { return BucketCounts{max_theta, {}, 0, 0}; },
      [](BucketCounts& b, const SampleOutcome& o) { b.add(o); });
}

// Total variation distance to exact bucket probabilities; the `other` bucket
// receives the exact complement 1 - sum(exact).
inline double total_variation(const BucketCounts& b, const std::map<std::string, double>& exact) {
  const double n = static_cast<double>(b.total);
  double tv = 0, exact_mass = 0;
  for (const auto& [k, p] : exact) {
    exact_mass += p;
    auto it = b.buckets.find(k);
    const double emp = it == b.buckets.end() ? 0.0 : static_cast<double>(it->second) / n;
    tv += std::abs(emp - p);
  }
  for (const auto& [k, v] : b.buckets)
    if (!exact.count(k)) tv += static_cast<double>(v) / n;
  tv += std::abs(static_cast<double>(b.other) / n - (1 - exact_mass));
  return tv / 2;
}

enum class HistogramCondition { all, unique_max, vervaat_of_unique_max };

// Counts of (H, h, N_h) with H = |height| and h = depth. unique_max keeps the
// positive samples in X^U; vervaat_of_unique_max records their Vervaat images.
struct LevelHistogram {
  std::map<std::tuple<int, int, long>, std::uint64_t> counts;
  std::uint64_t samples = 0;
  std::uint64_t capped = 0;

  void merge(const LevelHistogram& o) {
    for (const auto& [k, v] : o.counts) counts[k] += v;
    samples += o.samples;
    capped += o.capped;
  }
};

inline void add_levels(LevelHistogram& hist, const Excursion& x) {
  const auto n = level_numbers(x);
  const int height = n.height();
  for (int h = 0; h < height; ++h) ++hist.counts[{height, h, n[static_cast<std::size_t>(h)]}];
  ++hist.samples;
}

template <Scalar T>
LevelHistogram level_process_histogram(const JumpLaw<T>& law, std::uint64_t n, HistogramCondition cond,
                                       std::uint64_t seed, unsigned workers = 1,
                                       std::size_t theta_max = default_theta_max) {
  if (n < 1) throw OutOfDomain("n >= 1");
  DoobSampler sampler(law, theta_max);
  auto add = [cond](LevelHistogram& h, const SampleOutcome& o) {
    if (o.capped()) {
      ++h.capped;
      return;
    }
    const auto& x = *o.x;
    if (cond == HistogramCondition::all) return add_levels(h, x);
    if (!x.positive() || !unique_max(x)) return;
    add_levels(h, cond == HistogramCondition::unique_max ? x : vervaat(x));
  };
  return sample_reduce<LevelHistogram>(sampler, n, seed, workers, [] { return LevelHistogram{}; }, add);
}

}  // namespace exk
