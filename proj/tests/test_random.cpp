#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "reqtiming/random.hpp"
#include "reqtiming/stats.hpp"

using namespace reqtiming;

namespace {

template <class F>
std::vector<double> draw(std::size_t n, F&& f) {
  std::vector<double> v(n);
  for (auto& x : v) x = f();
  return v;
}

}  // namespace

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.bits();
    EXPECT_EQ(x, b.bits());
    differs = differs || x != c.bits();
  }
  EXPECT_TRUE(differs);
}

TEST(RandomStream, DerivedStreamsAreDistinct) {
  auto s0 = RandomStream::derived(1, 0);
  auto s1 = RandomStream::derived(1, 1);
  auto again = RandomStream::derived(1, 1);
  const auto first1 = s1.bits();
  EXPECT_NE(s0.bits(), first1);
  EXPECT_EQ(again.bits(), first1);
}

TEST(RandomStream, SplitMixReferenceValue) {
  // First output of the reference SplitMix64 generator seeded with 0.
  static_assert(splitmix64(0) == 0xE220A8397B1DCDAFULL);
}

TEST(RandomStream, UniformMoments) {
  RandomStream r(5);
  const auto v = draw(200000, [&] { return r.uniform01(); });
  for (double x : v) ASSERT_TRUE(x >= 0.0 && x < 1.0);
  EXPECT_NEAR(stats::mean(v), 0.5, 0.003);
  EXPECT_NEAR(stats::sample_variance(v), 1.0 / 12.0, 0.001);
}

TEST(RandomStream, NormalMoments) {
  RandomStream r(6);
  const auto v = draw(200000, [&] { return r.normal(); });
  EXPECT_NEAR(stats::mean(v), 0.0, 0.01);
  EXPECT_NEAR(stats::sample_sdev(v), 1.0, 0.01);
}

TEST(RandomStream, ExponentialMoments) {
  RandomStream r(7);
  const auto v = draw(200000, [&] { return r.exponential(250.0); });
  const double m = stats::mean(v);
  EXPECT_NEAR(m, 250.0, 3.0);
  EXPECT_NEAR(stats::sample_sdev(v) / m, 1.0, 0.015);
}

TEST(Lognormal, ParametersReproduceMeanAndCov) {
  const auto d = Lognormal::from_mean_cov(53.0, 2.95);
  const double mean = std::exp(d.mu + d.sigma * d.sigma / 2);
  const double cov = std::sqrt(std::exp(d.sigma * d.sigma) - 1);
  EXPECT_NEAR(mean, 53.0, 1e-10);
  EXPECT_NEAR(cov, 2.95, 1e-12);
}

TEST(Lognormal, ZeroCovIsConstant) {
  RandomStream r(1);
  const auto d = Lognormal::from_mean_cov(37.3, 0.0);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(d.sample(r), 37.3);
}

TEST(Lognormal, SampleMoments) {
  RandomStream r(8);
  const auto d = Lognormal::from_mean_cov(100.0, 0.5);
  const auto v = draw(400000, [&] { return d.sample(r); });
  const double m = stats::mean(v);
  EXPECT_NEAR(m, 100.0, 0.5);
  EXPECT_NEAR(stats::sample_sdev(v) / m, 0.5, 0.01);
}

TEST(Hyperexponential, ParametersReproduceMeanAndCov) {
  for (double cov : {1.0, 1.5, 2.11, 3.0, 12.0}) {
    const auto d = Hyperexponential::from_mean_cov(4.3, cov);
    const double m1 = d.p * d.mean1 + (1 - d.p) * d.mean2;
    const double m2 = 2 * (d.p * d.mean1 * d.mean1 + (1 - d.p) * d.mean2 * d.mean2);
    EXPECT_NEAR(m1, 4.3, 1e-12) << cov;
    EXPECT_NEAR(std::sqrt(m2 / (m1 * m1) - 1), cov, 1e-9) << cov;
    EXPECT_NEAR(d.p * d.mean1, (1 - d.p) * d.mean2, 1e-12);  // balanced means
  }
}

TEST(Hyperexponential, SampleMoments) {
  RandomStream r(9);
  const auto d = Hyperexponential::from_mean_cov(10.0, 2.0);
  const auto v = draw(1000000, [&] { return d.sample(r); });
  const double m = stats::mean(v);
  EXPECT_NEAR(m, 10.0, 0.1);
  EXPECT_NEAR(stats::sample_sdev(v) / m, 2.0, 0.05);
}
