#pragma once

// Table renderers for analysis results.
//
// Display rounding: tps, means, sdevs and cv to two decimals; percentiles,
// min and max are order statistics and print without decimals when they are
// whole milliseconds. Text mode writes a title line and then comma-separated
// rows using the report conventions (a cv that rounds to 1.00 prints as "1").
// CSV always prints two decimals for cv. JSON carries full precision.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "error.hpp"
#include "event_log.hpp"
#include "json.hpp"
#include "poisson.hpp"

namespace reqtiming {

enum class Format { text, csv, json };

inline Format parse_format(std::string_view s) {
  if (s == "text") return Format::text;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw UsageError("format must be text, csv or json, got '" + std::string(s) + "'");
}

inline constexpr std::string_view kSummaryColumns = "label,n,tps,median,mean,sdev,cv,p90,p95,p99,min,max";
inline constexpr std::string_view kCurveColumns = "threads,trans,tps,drt_mean,drt_sdev,cov_drt";

namespace display {

inline std::string fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0.00" || s == "-0") s.erase(0, 1);
  return s;
}

// Order statistics: whole numbers print bare, anything else with 2 decimals.
inline std::string order_stat(double v) {
  if (std::nearbyint(v) == v && std::fabs(v) < 1e15) return fixed(v, 0);
  return fixed(v);
}

// Report-style cv: "1" when it rounds to 1.00.
inline std::string cv_display(double cv) {
  const std::string s = fixed(cv);
  return s == "1.00" ? "1" : s;
}

inline std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string or_blank(const std::optional<double>& v, Format f, int decimals = 2) {
  if (v) return fixed(*v, decimals);
  return f == Format::text ? "-" : "";
}

inline nlohmann::json json_or_null(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace display

// "<source>_<trim start s>_<window s>", e.g. select_1830_AggRpt_120_1200.
inline std::string report_title(std::string_view source, std::int64_t trim_start_ms, double window_ms) {
  return std::string(source) + "_" + std::to_string(trim_start_ms / 1000) + "_" +
         display::fixed(window_ms / 1000.0, 0);
}

inline std::string summary_row(const InterArrivalSummary& row, Format f) {
  std::string out = detail::quote_csv(row.label) + "," + std::to_string(row.n);
  if (!row.stats) {
    const std::string blank = f == Format::text ? "-" : "";
    for (int i = 0; i < 10; ++i) out += "," + blank;
    return out;
  }
  const DiffStats& s = *row.stats;
  std::string cv;
  if (s.cv) cv = f == Format::text ? display::cv_display(*s.cv) : display::fixed(*s.cv);
  else cv = f == Format::text ? "-" : "";
  out += "," + display::or_blank(s.tps, f) + "," + display::order_stat(s.median) + "," + display::fixed(s.mean) +
         "," + display::fixed(s.sdev) + "," + cv + "," + display::order_stat(s.p90) + "," +
         display::order_stat(s.p95) + "," + display::order_stat(s.p99) + "," + display::order_stat(s.min) + "," +
         display::order_stat(s.max);
  return out;
}

inline std::string render_summary_table(const std::vector<InterArrivalSummary>& rows, Format f,
                                        std::string_view title = {}) {
  if (rows.empty()) throw DataError("nothing to render");
  if (f == Format::json) {
    nlohmann::json doc;
    doc["title"] = title;
    doc["columns"] = detail::split_csv(kSummaryColumns);
    auto& arr = doc["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json j;
      j["label"] = r.label;
      j["n"] = r.n;
      j["defined"] = r.stats.has_value();
      if (r.stats) {
        const auto& s = *r.stats;
        j["tps"] = display::json_or_null(s.tps);
        j["median"] = s.median;
        j["mean"] = s.mean;
        j["sdev"] = s.sdev;
        j["cv"] = display::json_or_null(s.cv);
        j["p90"] = s.p90;
        j["p95"] = s.p95;
        j["p99"] = s.p99;
        j["min"] = s.min;
        j["max"] = s.max;
      }
      arr.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
  }
  std::string out;
  if (f == Format::text) {
    out += "Inter-arrival Summary Statistics (ms)";
    if (!title.empty()) out += " - " + std::string(title);
    out += "\n";
  }
  out += std::string(kSummaryColumns) + "\n";
  for (const auto& r : rows) out += summary_row(r, f) + "\n";
  return out;
}

inline std::string curve_row(const ThreadCurvePoint& p, Format f) {
  return std::to_string(p.thread_count) + "," + std::to_string(p.trans) + "," + display::or_blank(p.tps, f) +
         "," + display::fixed(p.drt_mean) + "," + display::fixed(p.drt_sdev) + "," + display::or_blank(p.cov_drt, f);
}

inline nlohmann::json curve_json(const std::vector<ThreadCurvePoint>& points) {
  auto arr = nlohmann::json::array();
  for (const auto& p : points) {
    arr.push_back({{"threads", p.thread_count},
                   {"trans", p.trans},
                   {"tps", display::json_or_null(p.tps)},
                   {"drt_mean", p.drt_mean},
                   {"drt_sdev", p.drt_sdev},
                   {"cov_drt", display::json_or_null(p.cov_drt)}});
  }
  return arr;
}

inline std::string render_thread_curve(const std::vector<ThreadCurvePoint>& points, Format f,
                                       std::string_view title = {}) {
  if (points.empty()) throw DataError("nothing to render");
  if (f == Format::json) {
    nlohmann::json doc;
    doc["title"] = title;
    doc["columns"] = detail::split_csv(kCurveColumns);
    doc["rows"] = curve_json(points);
    return doc.dump(2) + "\n";
  }
  std::string out;
  if (f == Format::text) {
    out += "Time Interval Between Requests CoV_DRT vs Thread Group Size";
    if (!title.empty()) out += " - " + std::string(title);
    out += "\n";
  }
  out += std::string(kCurveColumns) + "\n";
  for (const auto& p : points) out += curve_row(p, f) + "\n";
  return out;
}

struct NamedCurve {
  std::string run;
  std::vector<ThreadCurvePoint> points;
};

// Runs side by side: one row per thread count, one cv column per run.
inline std::string render_curve_matrix(const std::vector<NamedCurve>& curves, Format f) {
  if (curves.empty()) throw DataError("nothing to render");
  std::vector<std::size_t> counts;
  for (const auto& c : curves) {
    for (const auto& p : c.points) counts.push_back(p.thread_count);
  }
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

  auto lookup = [](const NamedCurve& c, std::size_t k) -> std::optional<double> {
    for (const auto& p : c.points) {
      if (p.thread_count == k) return p.cov_drt;
    }
    return std::nullopt;
  };

  if (f == Format::json) {
    nlohmann::json doc;
    doc["threads"] = counts;
    auto& runs = doc["runs"] = nlohmann::json::array();
    for (const auto& c : curves) {
      auto cv = nlohmann::json::array();
      for (auto k : counts) cv.push_back(display::json_or_null(lookup(c, k)));
      runs.push_back({{"run", c.run}, {"cov_drt", cv}, {"points", curve_json(c.points)}});
    }
    return doc.dump(2) + "\n";
  }
  std::string out;
  if (f == Format::text) out += "CoV_DRT = DRT_sdev / DRT_mean by thread group size\n";
  out += "threads";
  for (const auto& c : curves) out += "," + detail::quote_csv(c.run);
  out += "\n";
  for (auto k : counts) {
    out += std::to_string(k);
    for (const auto& c : curves) out += "," + display::or_blank(lookup(c, k), f);
    out += "\n";
  }
  return out;
}

// Rows of (bin, observed fraction, theoretical probability).
inline std::string render_histogram_data(const Histogram& h, Format f, std::string_view title = {}) {
  const std::size_t total = h.total();
  if (h.counts.empty() || total == 0) throw DataError("histogram is empty");
  auto bin_label = [&](std::size_t i) { return display::order_stat(h.origin + static_cast<double>(i) * h.bin_width); };
  auto observed = [&](std::size_t i) { return static_cast<double>(h.counts[i]) / static_cast<double>(total); };
  auto theory = [&](std::size_t i) -> std::optional<double> {
    if (h.theoretical && i < h.theoretical->size()) return (*h.theoretical)[i];
    return std::nullopt;
  };

  if (f == Format::json) {
    nlohmann::json doc;
    doc["title"] = title;
    doc["bin_width"] = h.bin_width;
    doc["origin"] = h.origin;
    doc["partial_final_bin"] = h.partial_final_bin;
    auto& rows = doc["rows"] = nlohmann::json::array();
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      rows.push_back({{"bin", h.origin + static_cast<double>(i) * h.bin_width},
                      {"count", h.counts[i]},
                      {"observed", observed(i)},
                      {"theoretical", display::json_or_null(theory(i))}});
    }
    return doc.dump(2) + "\n";
  }
  std::string out;
  if (f == Format::text && !title.empty()) out += std::string(title) + "\n";
  out += "bin,observed,theoretical\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const auto t = theory(i);
    if (f == Format::text) {
      out += bin_label(i) + "," + display::fixed(observed(i), 4) + "," + (t ? display::fixed(*t, 4) : "-") + "\n";
    } else {
      out += bin_label(i) + "," + display::full(observed(i)) + "," + (t ? display::full(*t) : "") + "\n";
    }
  }
  if (f == Format::text && h.partial_final_bin) out += "# final bin is partial\n";
  return out;
}

inline std::string render_ratios(const ClosedLoopRatios& r, Format f) {
  if (f == Format::json) {
    nlohmann::json j = {{"z_mean", r.z_mean},   {"r_mean", r.r_mean},   {"r_sdev", r.r_sdev},
                        {"cov_r", display::json_or_null(r.cov_r)},      {"rt_mean", r.rt_mean},
                        {"rort_mean", r.rort_mean}, {"tps", r.tps}, {"n_estimate", r.n_estimate}};
    return j.dump(2) + "\n";
  }
  if (f == Format::csv) {
    return "z_mean,r_mean,r_sdev,cov_r,rt_mean,rort_mean,tps,n_estimate\n" + display::fixed(r.z_mean) + "," +
           display::fixed(r.r_mean) + "," + display::fixed(r.r_sdev) + "," + display::or_blank(r.cov_r, f) + "," +
           display::fixed(r.rt_mean) + "," + display::fixed(r.rort_mean, 4) + "," + display::fixed(r.tps) + "," +
           display::fixed(r.n_estimate) + "\n";
  }
  return "Z_mean      " + display::fixed(r.z_mean) + " ms\n" +
         "R_mean      " + display::fixed(r.r_mean) + " ms\n" +
         "R_sdev      " + display::fixed(r.r_sdev) + " ms\n" +
         "CoV_R       " + display::or_blank(r.cov_r, f) + "\n" +
         "RT_mean     " + display::fixed(r.rt_mean) + " ms\n" +
         "RoRT_mean   " + display::fixed(100.0 * r.rort_mean) + "%\n" +
         "Tps         " + display::fixed(r.tps) + "\n" +
         "N = Tps*RT  " + display::fixed(r.n_estimate) + "\n";
}

}  // namespace reqtiming
