#pragma once

// Standalone SVG 1.1 plots: grouped bars for histograms, polylines for
// curves. Each mark carries its exact data value in data-x / data-y.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "poisson.hpp"

namespace reqtiming {

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct PlotData {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

enum class PlotKind { histogram, curve };

namespace svg_detail {

inline constexpr double kWidth = 640;
inline constexpr double kHeight = 400;
inline constexpr double kLeft = 64;
inline constexpr double kRight = 16;
inline constexpr double kTop = 36;
inline constexpr double kBottom = 56;
inline constexpr const char* kPalette[] = {"#3a9d5d", "#e3b505", "#2f6db5", "#c0392b", "#7d3c98"};

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// A "nice" step (1, 2 or 5 times a power of ten) giving about `ticks` ticks.
inline double nice_step(double span, int ticks) {
  if (!(span > 0)) return 1.0;
  const double raw = span / ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f <= 1 ? 1 : f <= 2 ? 2 : f <= 5 ? 5 : 10) * mag;
}

}  // namespace svg_detail

inline std::string render_svg(const PlotData& data, PlotKind kind) {
  using namespace svg_detail;
  bool any = false;
  for (const auto& s : data.series) any = any || !s.points.empty();
  if (!any) throw DataError("nothing to plot");

  double xmin = INFINITY, xmax = -INFINITY, ymin = 0.0, ymax = -INFINITY;
  for (const auto& s : data.series) {
    for (auto [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  // Histogram bars occupy [x, x + slot); keep the last one inside the frame.
  double slot = 1.0;
  if (kind == PlotKind::histogram) {
    std::vector<double> xs;
    for (const auto& s : data.series) {
      for (auto [x, y] : s.points) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    slot = xs.size() > 1 ? (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1) : 1.0;
    xmax += slot;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  const double ystep = nice_step(ymax - ymin, 5);
  ymax = std::ceil(ymax / ystep) * ystep;
  if (ymax <= ymin) ymax = ymin + ystep;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" + escape(data.title) + "</text>\n";

  // Axes and ticks.
  out += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" +
         num(kTop + ph) + "\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
         num(kTop + ph) + "\"/>\n";
  out += "</g>\n<g font-family=\"sans-serif\" font-size=\"10\">\n";
  for (double y = ymin; y <= ymax + ystep * 1e-9; y += ystep) {
    out += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(sy(y)) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
           num(sy(y)) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(sy(y) + 3) + "\" text-anchor=\"end\">" +
           tick_label(y) + "</text>\n";
  }
  const double xstep = nice_step(xmax - xmin, 6);
  for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + xstep * 1e-9; x += xstep) {
    out += "<line x1=\"" + num(sx(x)) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(sx(x)) + "\" y2=\"" +
           num(kTop + ph + 4) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(sx(x)) + "\" y=\"" + num(kTop + ph + 16) + "\" text-anchor=\"middle\">" +
           tick_label(x) + "</text>\n";
  }
  out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 12) + "\" text-anchor=\"middle\">" +
         escape(data.x_label) + "</text>\n";
  out += "<text x=\"14\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         num(kTop + ph / 2) + ")\">" + escape(data.y_label) + "</text>\n";
  out += "</g>\n";

  const std::size_t n_series = data.series.size();
  for (std::size_t si = 0; si < n_series; ++si) {
    const auto& s = data.series[si];
    const std::string color = kPalette[si % std::size(kPalette)];
    out += "<g class=\"series\" data-name=\"" + escape(s.name) + "\" fill=\"" + color + "\" stroke=\"" + color +
           "\">\n";
    if (kind == PlotKind::histogram) {
      const double bar = slot / static_cast<double>(n_series);
      for (auto [x, y] : s.points) {
        const double x0 = sx(x + bar * static_cast<double>(si));
        const double x1 = sx(x + bar * static_cast<double>(si + 1));
        const double top = sy(std::max(y, 0.0));
        out += "<rect x=\"" + num(x0) + "\" y=\"" + num(top) + "\" width=\"" + num(x1 - x0) + "\" height=\"" +
               num(sy(0.0) - top) + "\" stroke-width=\"0.5\" data-x=\"" + exact(x) + "\" data-y=\"" + exact(y) +
               "\"/>\n";
      }
    } else {
      std::string path;
      for (auto [x, y] : s.points) path += (path.empty() ? "" : " ") + num(sx(x)) + "," + num(sy(y));
      out += "<polyline fill=\"none\" stroke-width=\"1.5\" points=\"" + path + "\"/>\n";
      for (auto [x, y] : s.points) {
        out += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) + "\" r=\"2.5\" data-x=\"" + exact(x) +
               "\" data-y=\"" + exact(y) + "\"/>\n";
      }
    }
    out += "</g>\n";
  }

  // Legend.
  out += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t si = 0; si < n_series; ++si) {
    const double y = kTop + 4 + 16 * static_cast<double>(si);
    const std::string color = kPalette[si % std::size(kPalette)];
    out += "<rect x=\"" + num(kLeft + pw - 150) + "\" y=\"" + num(y) + "\" width=\"10\" height=\"10\" fill=\"" +
           color + "\"/>\n";
    out += "<text x=\"" + num(kLeft + pw - 135) + "\" y=\"" + num(y + 9) + "\">" + escape(data.series[si].name) +
           "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

// Observed fractions with the theoretical overlay, one bar pair per bin.
inline PlotData histogram_plot(const Histogram& h, std::string title, std::string x_label) {
  PlotData p{std::move(title), std::move(x_label), "fraction", {}};
  const double total = static_cast<double>(h.total());
  if (total == 0) throw DataError("histogram is empty");
  PlotSeries observed{"observed", {}};
  PlotSeries theory{"theoretical", {}};
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double x = h.origin + static_cast<double>(i) * h.bin_width;
    observed.points.emplace_back(x, static_cast<double>(h.counts[i]) / total);
    if (h.theoretical && i < h.theoretical->size()) theory.points.emplace_back(x, (*h.theoretical)[i]);
  }
  p.series.push_back(std::move(observed));
  if (!theory.points.empty()) p.series.push_back(std::move(theory));
  return p;
}

}  // namespace reqtiming
