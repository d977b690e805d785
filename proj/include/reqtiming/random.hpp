#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace reqtiming {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// A seeded mt19937_64 with the variate transforms the simulator needs.
//
// Stream identity: stream `index` under root seed `s` is mt19937_64 seeded
// with splitmix64(s ^ splitmix64(index)). The open-loop generator uses
// index 0; closed-loop thread k (1-based) uses index k.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream derived(std::uint64_t root_seed, std::uint64_t index) {
    return RandomStream(splitmix64(root_seed ^ splitmix64(index)));
  }

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal by Box-Muller, one variate per call.
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Negative-exponential by inverse CDF: -mean * ln(1 - u).
  double exponential(double mean) { return -mean * std::log1p(-uniform01()); }

 private:
  std::mt19937_64 engine_;
};

// Lognormal parameterized by the mean and coefficient of variation of the
// distribution itself: sigma^2 = ln(1 + cv^2), mu = ln(mean) - sigma^2 / 2.
// A zero cv degenerates to the constant mean.
struct Lognormal {
  double mean = 0.0;
  double mu = 0.0;
  double sigma = 0.0;

  static Lognormal from_mean_cov(double mean, double cov) {
    const double s2 = std::log1p(cov * cov);
    return Lognormal{mean, std::log(mean) - 0.5 * s2, std::sqrt(s2)};
  }

  double sample(RandomStream& rng) const {
    if (sigma == 0.0) return mean;
    return std::exp(mu + sigma * rng.normal());
  }
};

// Two-phase hyperexponential with balanced means, for cv >= 1: with
// probability p an exponential of mean m / (2p), otherwise one of mean
// m / (2(1-p)), where p = (1 + sqrt((cv^2 - 1) / (cv^2 + 1))) / 2.
struct Hyperexponential {
  double p = 1.0;
  double mean1 = 0.0;
  double mean2 = 0.0;

  static Hyperexponential from_mean_cov(double mean, double cov) {
    const double c2 = cov * cov;
    const double p = 0.5 * (1.0 + std::sqrt((c2 - 1.0) / (c2 + 1.0)));
    return Hyperexponential{p, mean / (2.0 * p), mean / (2.0 * (1.0 - p))};
  }

  double sample(RandomStream& rng) const {
    const bool first = rng.uniform01() < p;
    return rng.exponential(first ? mean1 : mean2);
  }
};

}  // namespace reqtiming
