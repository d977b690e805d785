#pragma once

// Inter-arrival analysis of request launch times.
//
// The launch timestamps are sorted, adjacent differences taken, and the
// coefficient of variation (sdev / mean) of those differences reported.
// A value near 1 indicates independently launched (Poisson-like) requests,
// above 1 bunched launches, below 1 evenly spaced ones.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <ranges>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "record.hpp"
#include "stats.hpp"

namespace reqtiming {

// Adjacent differences of ascending launch timestamps.
struct DiffSeries {
  std::vector<double> diffs_ms;
  double window_ms = 0.0;
  std::size_t n_events = 0;
};

template <std::ranges::input_range R>
  requires std::convertible_to<std::ranges::range_value_t<R>, std::int64_t>
DiffSeries diffs_from_timestamps(R&& timestamps) {
  std::vector<std::int64_t> ts(std::ranges::begin(timestamps), std::ranges::end(timestamps));
  if (ts.size() < 2) throw DataError("insufficient events");
  std::sort(ts.begin(), ts.end());
  DiffSeries out;
  out.n_events = ts.size();
  out.window_ms = static_cast<double>(ts.back() - ts.front());
  out.diffs_ms.reserve(ts.size() - 1);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    out.diffs_ms.push_back(static_cast<double>(ts[i] - ts[i - 1]));
  }
  return out;
}

inline DiffSeries interarrival_diffs(const RecordSet& set) {
  return diffs_from_timestamps(set.records | std::views::transform(&RequestRecord::timestamp_ms));
}

struct DiffStats {
  std::optional<double> tps;  // empty when every launch shares one timestamp
  double median = 0.0;
  double mean = 0.0;
  double sdev = 0.0;
  std::optional<double> cv;  // empty when mean == 0
  double p90 = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// One row of the inter-arrival summary report. stats is empty for labels
// with too few events to produce two differences.
struct InterArrivalSummary {
  std::string label;
  std::size_t n = 0;
  std::optional<DiffStats> stats;
};

inline constexpr std::size_t kMinSummaryDiffs = 2;

inline InterArrivalSummary summarize(const DiffSeries& series, std::string label) {
  const auto& d = series.diffs_ms;
  if (d.size() < kMinSummaryDiffs) throw DataError("insufficient events");

  DiffStats s;
  if (series.window_ms > 0.0) {
    s.tps = static_cast<double>(series.n_events) / (series.window_ms / 1000.0);
  }
  s.mean = stats::mean(d);
  s.sdev = stats::sample_sdev(d, s.mean);
  s.cv = stats::coefficient_of_variation(s.sdev, s.mean);

  std::vector<double> sorted = d;
  std::sort(sorted.begin(), sorted.end());
  s.median = stats::percentile_sorted(sorted, 50);
  s.p90 = stats::percentile_sorted(sorted, 90);
  s.p95 = stats::percentile_sorted(sorted, 95);
  s.p99 = stats::percentile_sorted(sorted, 99);
  s.min = sorted.front();
  s.max = sorted.back();

  return InterArrivalSummary{std::move(label), series.n_events, s};
}

inline constexpr std::string_view kTotalLabel = "Total";

// Summary per distinct label (each over its own launches), ascending by
// label, followed by a Total row over every record.
inline std::vector<InterArrivalSummary> per_label_report(const RecordSet& set) {
  if (set.empty()) throw DataError("no records");

  std::map<std::string, std::vector<std::int64_t>> by_label;
  for (const auto& r : set.records) by_label[r.label].push_back(r.timestamp_ms);

  auto row = [](std::vector<std::int64_t> ts, std::string label) {
    if (ts.size() < kMinSummaryDiffs + 1) {
      return InterArrivalSummary{std::move(label), ts.size(), std::nullopt};
    }
    return summarize(diffs_from_timestamps(ts), std::move(label));
  };

  std::vector<InterArrivalSummary> rows;
  rows.reserve(by_label.size() + 1);
  for (auto& [label, ts] : by_label) rows.push_back(row(std::move(ts), label));

  std::vector<std::int64_t> all;
  all.reserve(set.size());
  for (const auto& r : set.records) all.push_back(r.timestamp_ms);
  rows.push_back(row(std::move(all), std::string(kTotalLabel)));
  return rows;
}

// ---------------------------------------------------------------------------
// Thread-group convergence curve

struct ThreadCurvePoint {
  std::size_t thread_count = 0;
  std::size_t trans = 0;
  std::optional<double> tps;
  double drt_mean = 0.0;
  double drt_sdev = 0.0;
  std::optional<double> cov_drt;
};

namespace detail {

// Splits "Thread Group 1-17" into ("Thread Group 1-", 17). Names without a
// trailing number get no index.
inline std::pair<std::string, std::optional<std::uint64_t>> split_thread_suffix(const std::string& name) {
  std::size_t i = name.size();
  while (i > 0 && name[i - 1] >= '0' && name[i - 1] <= '9') --i;
  if (i == name.size() || name.size() - i > 18) return {name, std::nullopt};
  return {name.substr(0, i), std::stoull(name.substr(i))};
}

}  // namespace detail

// Distinct thread names ordered by prefix, then ascending numeric suffix
// ("Thread Group 1-1", "1-2", ..., "1-10").
inline std::vector<std::string> default_thread_order(const RecordSet& set) {
  std::set<std::string> names;
  for (const auto& r : set.records) names.insert(r.thread_name);
  std::vector<std::string> order(names.begin(), names.end());
  std::stable_sort(order.begin(), order.end(), [](const std::string& a, const std::string& b) {
    const auto ka = detail::split_thread_suffix(a);
    const auto kb = detail::split_thread_suffix(b);
    if (ka.first != kb.first) return ka.first < kb.first;
    if (ka.second.has_value() != kb.second.has_value()) return !ka.second.has_value();
    return ka.second < kb.second;
  });
  return order;
}

// 1..10, 15..50 by 5, 75..200 by 25, capped at thread_count.
inline std::vector<std::size_t> default_checkpoints(std::size_t thread_count) {
  std::vector<std::size_t> out;
  auto add = [&](std::size_t k) {
    if (k <= thread_count) out.push_back(k);
  };
  for (std::size_t k = 1; k <= 10; ++k) add(k);
  for (std::size_t k = 15; k <= 50; k += 5) add(k);
  for (std::size_t k = 75; k <= 200; k += 25) add(k);
  return out;
}

// Inter-arrival statistics over the union of the first k threads of
// `ordering`, for every k in `checkpoints`.
inline std::vector<ThreadCurvePoint> thread_curve(const RecordSet& set,
                                                  const std::vector<std::string>& ordering,
                                                  std::vector<std::size_t> checkpoints) {
  if (ordering.empty()) throw UsageError("thread ordering is empty");
  if (checkpoints.empty()) throw UsageError("no checkpoints");
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (checkpoints.front() < 1 || checkpoints.back() > ordering.size()) {
    throw UsageError("checkpoints must lie in [1, " + std::to_string(ordering.size()) + "]");
  }

  std::unordered_map<std::string, std::vector<std::int64_t>> by_thread;
  for (const auto& r : set.records) by_thread[r.thread_name].push_back(r.timestamp_ms);

  std::string missing;
  std::set<std::string> seen;
  for (const auto& name : ordering) {
    if (!seen.insert(name).second) throw UsageError("thread listed twice: " + name);
    if (!by_thread.contains(name)) missing += (missing.empty() ? "" : ", ") + name;
  }
  if (!missing.empty()) throw DataError("threads not found in data: " + missing);

  std::vector<ThreadCurvePoint> curve;
  curve.reserve(checkpoints.size());
  std::vector<std::int64_t> merged;
  std::vector<std::int64_t> scratch;
  std::size_t next = 0;
  for (std::size_t k = 1; k <= checkpoints.back(); ++k) {
    auto& ts = by_thread[ordering[k - 1]];
    std::sort(ts.begin(), ts.end());
    scratch.clear();
    scratch.reserve(merged.size() + ts.size());
    std::merge(merged.begin(), merged.end(), ts.begin(), ts.end(), std::back_inserter(scratch));
    merged.swap(scratch);

    if (k != checkpoints[next]) continue;
    ++next;
    if (merged.size() < kMinSummaryDiffs + 1) {
      throw DataError("fewer than " + std::to_string(kMinSummaryDiffs + 1) + " launches in the first " +
                      std::to_string(k) + " thread(s)");
    }
    const auto s = summarize(diffs_from_timestamps(merged), "");
    curve.push_back(ThreadCurvePoint{k, merged.size(), s.stats->tps, s.stats->mean, s.stats->sdev,
                                     s.stats->cv});
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Closed-loop ratios

struct ClosedLoopRatios {
  double z_mean = 0.0;
  double r_mean = 0.0;
  double r_sdev = 0.0;
  std::optional<double> cov_r;  // empty when r_mean == 0
  double rt_mean = 0.0;
  double rort_mean = 0.0;
  double tps = 0.0;
  double n_estimate = 0.0;
};

// Round trip RT = Z + R; RoRT = R / RT; N = Tps * RT (RT in seconds).
inline ClosedLoopRatios closed_loop_ratios(double z_mean, double r_mean, double r_sdev, double tps) {
  if (z_mean < 0 || r_mean < 0 || r_sdev < 0 || tps < 0) {
    throw UsageError("closed-loop inputs must be non-negative");
  }
  if (!(z_mean + r_mean > 0)) throw UsageError("think time plus response time must be positive");
  ClosedLoopRatios out;
  out.z_mean = z_mean;
  out.r_mean = r_mean;
  out.r_sdev = r_sdev;
  out.cov_r = stats::coefficient_of_variation(r_sdev, r_mean);
  out.rt_mean = z_mean + r_mean;
  out.rort_mean = r_mean / out.rt_mean;
  out.tps = tps;
  out.n_estimate = tps * out.rt_mean / 1000.0;
  return out;
}

}  // namespace reqtiming
