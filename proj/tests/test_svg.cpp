#include <gtest/gtest.h>

#include <regex>

#include "golden_support.hpp"

using namespace reqtiming;

namespace {

std::vector<std::pair<double, double>> marks(const std::string& svg) {
  static const std::regex re("data-x=\"([^\"]+)\" data-y=\"([^\"]+)\"");
  std::vector<std::pair<double, double>> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    out.emplace_back(std::stod((*it)[1]), std::stod((*it)[2]));
  }
  return out;
}

PlotData curve_data() {
  return {"CoV vs threads", "threads", "cv",
          {{"1830", {{1, 0.56}, {2, 0.73}, {10, 0.96}, {50, 0.99}, {200, 1.0}}},
           {"2100", {{1, 0.61}, {2, 0.76}, {10, 0.96}, {50, 1.03}, {200, 1.17}}}}};
}

}  // namespace

TEST(Svg, CurveMarksCarryExactData) {
  const auto data = curve_data();
  const auto got = marks(render_svg(data, PlotKind::curve));
  ASSERT_EQ(got.size(), 10u);
  std::size_t i = 0;
  for (const auto& s : data.series) {
    for (const auto& p : s.points) EXPECT_EQ(got[i++], p);
  }
}

TEST(Svg, HistogramMarksCarryExactData) {
  Histogram h;
  h.bin_width = 1;
  h.counts = {3, 7, 0, 1};
  h.theoretical = std::vector<double>{0.1, 1.0 / 3.0, 0.2, 0.05};
  const auto data = histogram_plot(h, "Requests per interval", "requests");
  const auto got = marks(render_svg(data, PlotKind::histogram));
  ASSERT_EQ(got.size(), 8u);
  EXPECT_EQ(got[1], (std::pair<double, double>{1.0, 7.0 / 11.0}));
  EXPECT_EQ(got[5], (std::pair<double, double>{1.0, 1.0 / 3.0}));
}

TEST(Svg, WellFormedEnvelope) {
  const auto svg = render_svg(curve_data(), PlotKind::curve);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
}

TEST(Svg, EscapesText) {
  auto d = curve_data();
  d.title = "a<b & \"c\"";
  const auto svg = render_svg(d, PlotKind::curve);
  EXPECT_NE(svg.find("a&lt;b &amp; &quot;c&quot;"), std::string::npos);
}

TEST(Svg, EmptyInputRejected) {
  EXPECT_THROW(render_svg(PlotData{}, PlotKind::curve), DataError);
  EXPECT_THROW(render_svg(PlotData{"t", "x", "y", {{"s", {}}}}, PlotKind::histogram), DataError);
}

TEST(Svg, GoldenCurve) { rt_test::expect_golden("curve.svg", render_svg(curve_data(), PlotKind::curve)); }

TEST(Svg, GoldenHistogram) {
  Histogram h;
  h.bin_width = 1;
  h.counts = {2, 5, 8, 4, 1};
  h.theoretical = std::vector<double>{0.1, 0.25, 0.35, 0.2, 0.1};
  rt_test::expect_golden("histogram.svg", render_svg(histogram_plot(h, "Requests per interval", "requests"),
                                                     PlotKind::histogram));
}
