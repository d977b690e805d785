#pragma once

// reqtiming command line: analyze, curve, simulate, merge, histogram, ratios.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reqtiming/reqtiming.hpp"

namespace reqtiming::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

inline constexpr const char* kFormatEnv = "REQTIMING_FORMAT";

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot read " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path);
  f << text;
  if (!f) throw DataError("write failed: " + path);
}

inline std::string stem_of(const std::string& path) {
  if (path == "-") return "stdin";
  return std::filesystem::path(path).stem().string();
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& item : reqtiming::detail::split(s, ',')) {
    auto t = std::string(reqtiming::detail::trim_ws(item));
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

inline std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

struct LogOptions {
  std::string header = "auto";
  bool by_name = false;
  std::int64_t trim_start_ms = 0;
  std::int64_t trim_end_ms = 0;

  void add_to(CLI::App& app, bool with_trim = true) {
    app.add_option("--header", header, "Header row: auto, yes or no")
        ->check(CLI::IsMember({"auto", "yes", "no"}))
        ->capture_default_str();
    app.add_flag("--columns-by-name", by_name, "Locate columns by header name");
    if (with_trim) {
      app.add_option("--trim-start-ms", trim_start_ms, "Milliseconds excluded from the start")
          ->check(CLI::NonNegativeNumber)
          ->capture_default_str();
      app.add_option("--trim-end-ms", trim_end_ms, "Milliseconds excluded from the end")
          ->check(CLI::NonNegativeNumber)
          ->capture_default_str();
    }
  }

  [[nodiscard]] ParseOptions parse_options() const {
    ParseOptions o;
    o.header = header == "yes" ? HeaderMode::present : header == "no" ? HeaderMode::absent : HeaderMode::automatic;
    o.columns_by_name = by_name;
    return o;
  }

  [[nodiscard]] std::string describe() const {
    return "header=" + header + " columns_by_name=" + (by_name ? "true" : "false") +
           " trim_start_ms=" + std::to_string(trim_start_ms) + " trim_end_ms=" + std::to_string(trim_end_ms);
  }

  [[nodiscard]] RecordSet load(const std::vector<std::string>& paths, std::istream& in) const {
    std::vector<OffsetRecordSet> sets;
    for (const auto& p : paths) sets.push_back({parse_log(read_input(p, in), parse_options()), 0});
    RecordSet set = sets.size() == 1 ? std::move(sets.front().set) : merge(sets);
    if (trim_start_ms != 0 || trim_end_ms != 0) set = trim(set, {trim_start_ms, trim_end_ms});
    return set;
  }
};

inline std::string default_format() {
  if (const char* env = std::getenv(kFormatEnv); env && *env) return env;
  return "text";
}

inline void add_format(CLI::App& app, std::string& format) {
  format = default_format();
  app.add_option("--format", format, std::string("Output format (default from ") + kFormatEnv + ")")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
}

}  // namespace detail

inline int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Request launch-timing quality toolkit: inter-arrival CoV analysis and load simulation", "reqtiming"};
  app.require_subcommand(1);

  // analyze ------------------------------------------------------------------
  std::vector<std::string> an_inputs;
  detail::LogOptions an_log;
  std::optional<std::string> an_label;
  std::string an_format, an_out, an_source;
  int an_debug = 0;
  auto* analyze = app.add_subcommand("analyze", "Per-label and total inter-arrival summary");
  analyze->add_option("inputs", an_inputs, "Event log(s); '-' reads stdin")->required();
  an_log.add_to(*analyze);
  analyze->add_option("--label", an_label, "Only analyze this web event name");
  detail::add_format(*analyze, an_format);
  analyze->add_option("--out", an_out, "Write the report here instead of stdout");
  analyze->add_option("--source", an_source, "Source name used in the report title");
  analyze->add_option("--debug", an_debug, "Print the first N inter-arrival differences to stderr")
      ->check(CLI::NonNegativeNumber);

  // curve --------------------------------------------------------------------
  std::vector<std::string> cu_inputs;
  detail::LogOptions cu_log;
  std::string cu_order, cu_checkpoints, cu_format, cu_out, cu_svg;
  auto* curve = app.add_subcommand("curve", "CoV of inter-arrival times vs thread group size");
  curve->add_option("inputs", cu_inputs, "Event log(s); several logs produce a side-by-side matrix")->required();
  cu_log.add_to(*curve);
  curve->add_option("--threads-order", cu_order, "Comma-separated thread names (default: numeric suffix order)");
  curve->add_option("--checkpoints", cu_checkpoints, "Comma-separated thread counts (default 1..10,15..50,75..200)");
  detail::add_format(*curve, cu_format);
  curve->add_option("--out", cu_out, "Write the table here instead of stdout");
  curve->add_option("--svg", cu_svg, "Also write an SVG plot of the curve(s)");

  // simulate -----------------------------------------------------------------
  std::string si_config, si_mode, si_think, si_sut, si_labels, si_out;
  std::optional<std::size_t> si_threads, si_arrivals;
  std::optional<std::int64_t> si_duration;
  std::optional<std::uint64_t> si_seed;
  std::int64_t si_trim_start = 0, si_trim_end = 0;
  auto* simulate = app.add_subcommand("simulate", "Generate an open- or closed-loop event log");
  simulate->add_option("--config", si_config, "key = value config file; flags override it");
  simulate->add_option("--mode", si_mode, "open or closed");
  simulate->add_option("--threads", si_threads, "Closed-loop thread count");
  simulate->add_option("--think", si_think, "fixed:MS | uniform:OFFSET:RANGE | exp:MEAN");
  simulate->add_option("--sut", si_sut, "zero | lognormal:MEAN:COV | queue:SERVERS:MEAN:COV[:h2]");
  simulate->add_option("--duration-ms", si_duration, "Horizon in ms");
  simulate->add_option("--arrivals", si_arrivals, "Open-loop arrival count");
  simulate->add_option("--seed", si_seed, "Root random seed");
  simulate->add_option("--labels", si_labels, "name:weight,... event names");
  simulate->add_option("--out", si_out, "CSV output path (default stdout)");
  simulate->add_option("--summary-trim-start-ms", si_trim_start, "Trim applied to the printed run summary")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--summary-trim-end-ms", si_trim_end, "Trim applied to the printed run summary")
      ->check(CLI::NonNegativeNumber);

  // merge --------------------------------------------------------------------
  std::vector<std::string> me_inputs;
  std::vector<std::int64_t> me_offsets;
  std::string me_out;
  detail::LogOptions me_log;
  auto* merge_cmd = app.add_subcommand("merge", "Merge generator logs with per-file clock offsets");
  merge_cmd->add_option("inputs", me_inputs, "Event logs")->required();
  merge_cmd->add_option("--offset-ms", me_offsets, "Clock offset per input, in input order (default 0)");
  merge_cmd->add_option("--out", me_out, "Merged log path (default stdout)");
  me_log.add_to(*merge_cmd, false);

  // histogram ----------------------------------------------------------------
  std::string hi_input, hi_kind = "counts", hi_format, hi_out, hi_svg;
  double hi_width = 10000.0;
  detail::LogOptions hi_log;
  auto* histogram = app.add_subcommand("histogram", "Requests per interval or inter-arrival histogram");
  histogram->add_option("input", hi_input, "Event log; '-' reads stdin")->required();
  histogram->add_option("--bin-width-ms", hi_width, "Interval / bin width in ms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  histogram->add_option("--kind", hi_kind, "counts (requests per interval) or gaps (time between requests)")
      ->check(CLI::IsMember({"counts", "gaps"}))
      ->capture_default_str();
  hi_log.add_to(*histogram);
  detail::add_format(*histogram, hi_format);
  histogram->add_option("--out", hi_out, "Write the table here instead of stdout");
  histogram->add_option("--svg", hi_svg, "Also write an SVG plot");

  // ratios -------------------------------------------------------------------
  double ra_z = 0, ra_r = 0, ra_rsd = 0, ra_tps = 0;
  std::string ra_format;
  auto* ratios = app.add_subcommand("ratios", "Closed-loop ratios: RT, RoRT, CoV_R and N = Tps x RT");
  ratios->add_option("--z-mean", ra_z, "Mean think time (ms)")->required();
  ratios->add_option("--r-mean", ra_r, "Mean response time (ms)")->required();
  ratios->add_option("--r-sdev", ra_rsd, "Response time standard deviation (ms)")->capture_default_str();
  ratios->add_option("--tps", ra_tps, "Transactions per second")->required();
  detail::add_format(*ratios, ra_format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, io.out, io.err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) {
      io.err << "# analyze inputs=" << detail::joined(an_inputs) << " " << an_log.describe()
             << " label=" << an_label.value_or("") << " format=" << an_format << "\n";
      RecordSet set = an_log.load(an_inputs, io.in);
      if (an_label) set = filter(set, RecordFilter{an_label, std::nullopt});
      if (set.size() < 2) throw DataError("insufficient events");
      const auto diffs = interarrival_diffs(set);
      if (an_debug > 0) {
        io.err << "# first inter-arrival differences (ms):";
        for (std::size_t i = 0; i < diffs.diffs_ms.size() && i < static_cast<std::size_t>(an_debug); ++i) {
          io.err << " " << display::order_stat(diffs.diffs_ms[i]);
        }
        io.err << "\n";
      }
      const std::string source = an_source.empty() ? detail::stem_of(an_inputs.front()) : an_source;
      const auto rows = per_label_report(set);
      detail::write_output(an_out,
                           render_summary_table(rows, parse_format(an_format),
                                                report_title(source, an_log.trim_start_ms, diffs.window_ms)),
                           io.out);
    } else if (*curve) {
      io.err << "# curve inputs=" << detail::joined(cu_inputs) << " " << cu_log.describe()
             << " threads_order=" << (cu_order.empty() ? "default" : cu_order)
             << " checkpoints=" << (cu_checkpoints.empty() ? "default" : cu_checkpoints) << " format=" << cu_format
             << "\n";
      std::vector<NamedCurve> curves;
      for (const auto& path : cu_inputs) {
        const RecordSet set = cu_log.load({path}, io.in);
        const auto order = cu_order.empty() ? default_thread_order(set) : detail::split_list(cu_order);
        std::vector<std::size_t> checkpoints;
        if (cu_checkpoints.empty()) {
          checkpoints = default_checkpoints(order.size());
        } else {
          for (const auto& c : detail::split_list(cu_checkpoints)) {
            checkpoints.push_back(reqtiming::detail::parse_unsigned(c, "checkpoint"));
          }
        }
        curves.push_back({detail::stem_of(path), thread_curve(set, order, checkpoints)});
      }
      const Format f = parse_format(cu_format);
      detail::write_output(cu_out,
                           curves.size() == 1 ? render_thread_curve(curves.front().points, f, curves.front().run)
                                              : render_curve_matrix(curves, f),
                           io.out);
      if (!cu_svg.empty()) {
        PlotData plot{"CoV of time between requests vs thread group size", "threads", "CoV_DRT", {}};
        for (const auto& c : curves) {
          PlotSeries s{c.run, {}};
          for (const auto& p : c.points) {
            if (p.cov_drt) s.points.emplace_back(static_cast<double>(p.thread_count), *p.cov_drt);
          }
          plot.series.push_back(std::move(s));
        }
        detail::write_output(cu_svg, render_svg(plot, PlotKind::curve), io.out);
      }
    } else if (*simulate) {
      SimConfig config;
      if (!si_config.empty()) apply_config_text(config, detail::read_input(si_config, io.in));
      if (!si_mode.empty()) config.mode = parse_mode(si_mode);
      if (si_threads) config.threads = *si_threads;
      if (!si_think.empty()) config.think = parse_think(si_think);
      if (!si_sut.empty()) config.sut = parse_sut(si_sut);
      if (si_duration) config.horizon_ms = *si_duration;
      if (si_arrivals) config.arrivals = *si_arrivals;
      if (si_seed) config.seed = *si_seed;
      if (!si_labels.empty()) config.labels = parse_labels(si_labels);
      validate(config);

      std::ostringstream effective;
      effective << describe(config);
      io.err << "# simulate effective configuration:\n";
      std::istringstream lines(effective.str());
      for (std::string line; std::getline(lines, line);) io.err << "#   " << line << "\n";

      const RecordSet set = reqtiming::simulate(config);
      detail::write_output(si_out, write_log(set), io.out);

      std::ostream& summary = si_out.empty() || si_out == "-" ? io.err : io.out;
      RecordSet measured = set;
      if (si_trim_start != 0 || si_trim_end != 0) measured = trim(set, {si_trim_start, si_trim_end});
      summary << "# records " << set.size() << "\n";
      if (measured.size() >= 2) {
        const auto diffs = interarrival_diffs(measured);
        const double tps = diffs.window_ms > 0 ? static_cast<double>(measured.size()) / (diffs.window_ms / 1000.0) : 0.0;
        if (config.mode == LoopMode::closed) {
          std::vector<double> r;
          r.reserve(measured.size());
          for (const auto& rec : measured.records) r.push_back(static_cast<double>(rec.elapsed_ms));
          const double r_mean = stats::mean(r);
          const double r_sdev = stats::sample_sdev(r, r_mean);
          const auto ratios_row = closed_loop_ratios(think_mean(config.think), r_mean, r_sdev, tps);
          summary << "test_run,threads,tps,z_mean,r_mean,r_sdev,cov_r,rort_mean,n_estimate\n"
                  << (si_out.empty() || si_out == "-" ? std::string("simulated") : detail::stem_of(si_out)) << "," << config.threads << "," << display::fixed(tps) << ","
                  << display::fixed(ratios_row.z_mean, 0) << "," << display::fixed(r_mean, 0) << ","
                  << display::fixed(r_sdev, 0) << "," << display::or_blank(ratios_row.cov_r, Format::csv) << ","
                  << display::fixed(100.0 * ratios_row.rort_mean) << "%," << display::fixed(ratios_row.n_estimate)
                  << "\n";
        } else {
          summary << "# tps " << display::fixed(tps) << "\n";
        }
      }
    } else if (*merge_cmd) {
      if (!me_offsets.empty() && me_offsets.size() != me_inputs.size()) {
        throw UsageError("give one --offset-ms per input (" + std::to_string(me_inputs.size()) + ")");
      }
      io.err << "# merge inputs=" << detail::joined(me_inputs) << " offsets_ms=";
      for (std::size_t i = 0; i < me_inputs.size(); ++i) {
        io.err << (i ? "," : "") << (me_offsets.empty() ? 0 : me_offsets[i]);
      }
      io.err << "\n";
      std::vector<OffsetRecordSet> sets;
      for (std::size_t i = 0; i < me_inputs.size(); ++i) {
        sets.push_back({parse_log(detail::read_input(me_inputs[i], io.in), me_log.parse_options()),
                        me_offsets.empty() ? 0 : me_offsets[i]});
      }
      detail::write_output(me_out, write_log(merge(sets)), io.out);
    } else if (*histogram) {
      io.err << "# histogram input=" << hi_input << " " << hi_log.describe() << " bin_width_ms=" << hi_width
             << " kind=" << hi_kind << " format=" << hi_format << "\n";
      const RecordSet set = hi_log.load({hi_input}, io.in);
      const Format f = parse_format(hi_format);
      Histogram h;
      std::string title;
      if (hi_kind == "counts") {
        const auto counts = requests_per_interval(set, hi_width);
        h = counts.frequency;
        title = "Requests per interval (" + display::order_stat(hi_width) + " ms)";
        io.err << "# intervals " << counts.per_interval.counts.size() << " mean " << display::fixed(counts.mean)
               << " variance " << display::or_blank(counts.variance, Format::text);
        if (counts.per_interval.counts.size() >= 2) {
          io.err << " dispersion_index " << display::or_blank(dispersion_index(counts.per_interval), Format::text);
        }
        io.err << (counts.per_interval.partial_final_bin ? " (final interval partial)" : "") << "\n";
      } else {
        h = interarrival_histogram(interarrival_diffs(set), hi_width);
        title = "Time interval between requests (" + display::order_stat(hi_width) + " ms bins)";
      }
      detail::write_output(hi_out, render_histogram_data(h, f, title), io.out);
      if (!hi_svg.empty()) {
        detail::write_output(hi_svg,
                             render_svg(histogram_plot(h, title, hi_kind == "counts" ? "requests per interval" : "ms"),
                                        PlotKind::histogram),
                             io.out);
      }
    } else if (*ratios) {
      io.err << "# ratios z_mean=" << ra_z << " r_mean=" << ra_r << " r_sdev=" << ra_rsd << " tps=" << ra_tps
             << " format=" << ra_format << "\n";
      io.out << render_ratios(closed_loop_ratios(ra_z, ra_r, ra_rsd, ra_tps), parse_format(ra_format));
    }
  } catch (const UsageError& e) {
    io.err << "reqtiming: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    io.err << "reqtiming: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace reqtiming::cli
