#pragma once

// Sample statistics over contiguous numeric ranges.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <ranges>

namespace reqtiming::stats {

template <std::ranges::sized_range R>
double mean(const R& values) {
  assert(std::ranges::size(values) > 0);
  double sum = 0.0;
  for (const auto v : values) sum += static_cast<double>(v);
  return sum / static_cast<double>(std::ranges::size(values));
}

// Sample variance with the n-1 denominator.
template <std::ranges::sized_range R>
double sample_variance(const R& values, double mean_value) {
  const auto n = std::ranges::size(values);
  assert(n > 1);
  double ss = 0.0;
  for (const auto v : values) {
    const double d = static_cast<double>(v) - mean_value;
    ss += d * d;
  }
  return ss / static_cast<double>(n - 1);
}

template <std::ranges::sized_range R>
double sample_variance(const R& values) {
  return sample_variance(values, mean(values));
}

template <std::ranges::sized_range R>
double sample_sdev(const R& values, double mean_value) {
  return std::sqrt(sample_variance(values, mean_value));
}

template <std::ranges::sized_range R>
double sample_sdev(const R& values) {
  return sample_sdev(values, mean(values));
}

// sdev / mean; empty when the mean is zero.
inline std::optional<double> coefficient_of_variation(double sdev, double mean_value) {
  if (!(mean_value > 0.0)) return std::nullopt;
  return sdev / mean_value;
}

// 1-based nearest rank ceil(p/100 * n), computed in integers so that e.g.
// p90 of 10 values is rank 9 rather than 10 through rounding.
constexpr std::size_t nearest_rank(unsigned percent, std::size_t n) {
  assert(percent >= 1 && percent <= 100 && n > 0);
  const std::size_t rank = (static_cast<std::size_t>(percent) * n + 99) / 100;
  return rank == 0 ? 1 : rank;
}

// Nearest-rank percentile of an ascending range.
template <std::ranges::random_access_range R>
auto percentile_sorted(const R& sorted, unsigned percent) {
  return sorted[nearest_rank(percent, std::ranges::size(sorted)) - 1];
}

}  // namespace reqtiming::stats
