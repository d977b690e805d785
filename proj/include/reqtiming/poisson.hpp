#pragma once

// Poisson-process diagnostics: requests per fixed interval, dispersion
// index, and the Poisson / negative-exponential reference distributions
// used as theoretical overlays.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "analysis.hpp"
#include "error.hpp"
#include "record.hpp"
#include "stats.hpp"

namespace reqtiming {

struct Histogram {
  double bin_width = 1.0;
  double origin = 0.0;
  std::vector<std::size_t> counts;
  std::optional<std::vector<double>> theoretical;  // probability per bin
  bool partial_final_bin = false;

  [[nodiscard]] std::size_t total() const {
    std::size_t n = 0;
    for (auto c : counts) n += c;
    return n;
  }
};

inline double poisson_pmf(long long k, double lambda) {
  if (k < 0 || !(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw UsageError("poisson_pmf needs k >= 0 and finite lambda >= 0");
  }
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

// Inverse CDF of the negative-exponential distribution.
inline double exp_quantile(double q, double mean) {
  if (!(q > 0.0 && q < 1.0) || !(mean > 0.0)) {
    throw UsageError("exp_quantile needs 0 < q < 1 and mean > 0");
  }
  return -mean * std::log1p(-q);
}

// Launch counts per consecutive interval plus the count-frequency table
// (how many intervals held 0, 1, 2, ... launches).
struct IntervalCounts {
  Histogram per_interval;  // origin = first launch, width = interval
  Histogram frequency;     // bin k = intervals holding k launches; Poisson overlay
  double mean = 0.0;
  std::optional<double> variance;  // n-1 denominator; needs two intervals
};

inline IntervalCounts requests_per_interval(const RecordSet& set, double bin_width_ms) {
  if (set.empty()) throw DataError("no records");
  if (!(bin_width_ms > 0.0)) throw UsageError("bin width must be positive");

  std::int64_t first = set.records.front().timestamp_ms;
  std::int64_t last = first;
  for (const auto& r : set.records) {
    first = std::min(first, r.timestamp_ms);
    last = std::max(last, r.timestamp_ms);
  }
  const double span = static_cast<double>(last - first);
  const auto bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / bin_width_ms)));

  IntervalCounts out;
  auto& h = out.per_interval;
  h.bin_width = bin_width_ms;
  h.origin = static_cast<double>(first);
  h.counts.assign(bins, 0);
  h.partial_final_bin = std::fmod(span, bin_width_ms) != 0.0;
  for (const auto& r : set.records) {
    const double offset = static_cast<double>(r.timestamp_ms - first);
    const auto i = std::min(bins - 1, static_cast<std::size_t>(offset / bin_width_ms));
    ++h.counts[i];
  }

  out.mean = stats::mean(h.counts);
  if (bins >= 2) out.variance = stats::sample_variance(h.counts, out.mean);

  const std::size_t max_count = *std::max_element(h.counts.begin(), h.counts.end());
  auto& f = out.frequency;
  f.bin_width = 1.0;
  f.origin = 0.0;
  f.counts.assign(max_count + 1, 0);
  for (auto c : h.counts) ++f.counts[c];
  std::vector<double> pmf(max_count + 1);
  for (std::size_t k = 0; k <= max_count; ++k) pmf[k] = poisson_pmf(static_cast<long long>(k), out.mean);
  f.theoretical = std::move(pmf);
  return out;
}

// variance / mean of the per-bin counts (n-1 variance). About 1 for Poisson
// arrivals. Empty when the mean count is zero.
inline std::optional<double> dispersion_index(const Histogram& hist) {
  if (hist.counts.size() < 2) throw DataError("dispersion index needs at least two bins");
  const double m = stats::mean(hist.counts);
  if (!(m > 0.0)) return std::nullopt;
  return stats::sample_variance(hist.counts, m) / m;
}

// Histogram of inter-arrival times from 0 with a negative-exponential
// overlay of the same mean.
inline Histogram interarrival_histogram(const DiffSeries& series, double bin_width_ms) {
  if (series.diffs_ms.empty()) throw DataError("insufficient events");
  if (!(bin_width_ms > 0.0)) throw UsageError("bin width must be positive");
  const double max = *std::max_element(series.diffs_ms.begin(), series.diffs_ms.end());
  const auto bins = static_cast<std::size_t>(max / bin_width_ms) + 1;

  Histogram h;
  h.bin_width = bin_width_ms;
  h.origin = 0.0;
  h.counts.assign(bins, 0);
  for (double d : series.diffs_ms) ++h.counts[std::min(bins - 1, static_cast<std::size_t>(d / bin_width_ms))];

  const double m = stats::mean(series.diffs_ms);
  if (m > 0.0) {
    std::vector<double> p(bins);
    for (std::size_t i = 0; i < bins; ++i) {
      const double a = static_cast<double>(i) * bin_width_ms;
      p[i] = std::exp(-a / m) - std::exp(-(a + bin_width_ms) / m);
    }
    h.theoretical = std::move(p);
  }
  return h;
}

}  // namespace reqtiming
