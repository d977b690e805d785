#pragma once

// Discrete-event generation of request logs.
//
// Open loop: n launch times drawn independently and uniformly over the
// horizon. Closed loop: N virtual-user threads each cycle think (Z) ->
// launch -> wait for the response (R) -> think again, against a system
// model that is either absent, independent per request, or a shared FIFO
// multi-server queue whose waits couple the threads together.
//
// Virtual time is real-valued milliseconds; records round to integer ms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "error.hpp"
#include "random.hpp"
#include "record.hpp"

namespace reqtiming {

// ---------------------------------------------------------------------------
// Think time

struct FixedThink {
  double value_ms = 0.0;
};
// offset + U[0, range]
struct UniformThink {
  double offset_ms = 0.0;
  double range_ms = 0.0;
};
struct ExponentialThink {
  double mean_ms = 0.0;
};

using ThinkTimeSpec = std::variant<FixedThink, UniformThink, ExponentialThink>;

inline double think_mean(const ThinkTimeSpec& spec) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedThink>) return s.value_ms;
        else if constexpr (std::is_same_v<T, UniformThink>) return s.offset_ms + 0.5 * s.range_ms;
        else return s.mean_ms;
      },
      spec);
}

inline void validate(const ThinkTimeSpec& spec) {
  const bool ok = std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedThink>) return s.value_ms >= 0.0;
        else if constexpr (std::is_same_v<T, UniformThink>) return s.offset_ms >= 0.0 && s.range_ms >= 0.0;
        else return s.mean_ms >= 0.0;
      },
      spec);
  if (!ok) throw UsageError("think-time parameters must be non-negative");
}

inline double sample_think(const ThinkTimeSpec& spec, RandomStream& rng) {
  return std::visit(
      [&rng](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedThink>) return s.value_ms;
        else if constexpr (std::is_same_v<T, UniformThink>) return s.offset_ms + s.range_ms * rng.uniform01();
        else return rng.exponential(s.mean_ms);
      },
      spec);
}

// ---------------------------------------------------------------------------
// System under test

struct ZeroSut {};
// Independent lognormal response per request.
struct LognormalSut {
  double r_mean_ms = 0.0;
  double cov_r = 0.0;
};
enum class ServiceShape { lognormal, hyperexponential };

// Shared FIFO station with `servers` parallel servers; response = queue wait
// + service time. Hyperexponential service needs cov >= 1 and has a lighter
// extreme tail than a lognormal of the same cov.
struct QueueSut {
  int servers = 1;
  double service_mean_ms = 0.0;
  double service_cov = 0.0;
  ServiceShape shape = ServiceShape::lognormal;
};

using SutModelSpec = std::variant<ZeroSut, LognormalSut, QueueSut>;

inline void validate(const SutModelSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LognormalSut>) {
          if (!(s.r_mean_ms > 0.0) || !(s.cov_r >= 0.0)) {
            throw UsageError("lognormal model needs mean > 0 and cov >= 0");
          }
        } else if constexpr (std::is_same_v<T, QueueSut>) {
          if (s.servers < 1 || !(s.service_mean_ms > 0.0) || !(s.service_cov >= 0.0)) {
            throw UsageError("queue model needs servers >= 1, service mean > 0, cov >= 0");
          }
          if (s.shape == ServiceShape::hyperexponential && s.service_cov < 1.0) {
            throw UsageError("hyperexponential service needs cov >= 1");
          }
        }
      },
      spec);
}

struct SutResponse {
  double elapsed_ms = 0.0;
  double wait_ms = 0.0;  // time queued before service starts
};

// Stateful response generator. Calls must arrive in non-decreasing time
// order; the queue model serves requests first come, first served on the
// earliest-free server.
class SutStation {
 public:
  explicit SutStation(SutModelSpec model) : model_(std::move(model)) {
    validate(model_);
    if (const auto* q = std::get_if<QueueSut>(&model_)) {
      if (q->shape == ServiceShape::hyperexponential) {
        service_ = Hyperexponential::from_mean_cov(q->service_mean_ms, q->service_cov);
      } else {
        service_ = Lognormal::from_mean_cov(q->service_mean_ms, q->service_cov);
      }
      for (int i = 0; i < q->servers; ++i) free_at_.push(0.0);
    } else if (const auto* l = std::get_if<LognormalSut>(&model_)) {
      service_ = Lognormal::from_mean_cov(l->r_mean_ms, l->cov_r);
    }
  }

  SutResponse respond(double at_time_ms, RandomStream& rng) {
    if (at_time_ms < last_arrival_) throw std::logic_error("SutStation: arrivals out of order");
    last_arrival_ = at_time_ms;
    if (std::holds_alternative<ZeroSut>(model_)) return {};

    const double service = std::visit([&rng](const auto& d) { return d.sample(rng); }, service_);
    if (std::holds_alternative<LognormalSut>(model_)) return {service, 0.0};

    const double start = std::max(at_time_ms, free_at_.top());
    free_at_.pop();
    free_at_.push(start + service);
    return {start + service - at_time_ms, start - at_time_ms};
  }

 private:
  SutModelSpec model_;
  std::variant<Lognormal, Hyperexponential> service_;
  std::priority_queue<double, std::vector<double>, std::greater<>> free_at_;  // per-server
  double last_arrival_ = 0.0;
};

inline SutResponse sut_response(SutStation& station, double at_time_ms, RandomStream& rng) {
  return station.respond(at_time_ms, rng);
}

// ---------------------------------------------------------------------------
// Configuration

enum class LoopMode { open, closed };

struct LabelWeight {
  std::string label;
  double weight = 1.0;
};

// The six events of the example government site, weighted roughly like the
// observed per-event transaction counts (images fetched with their pages).
inline std::vector<LabelWeight> default_labels() {
  return {{"010_Home", 4},         {"012_Home_jpg", 4}, {"020_Dept", 2},
          {"022_Dept_jpg", 2},     {"030_Demographics", 2}, {"040_Statistics", 1}};
}

struct SimConfig {
  LoopMode mode = LoopMode::closed;
  std::size_t threads = 200;
  std::int64_t horizon_ms = 1'500'000;
  std::size_t arrivals = 200;
  ThinkTimeSpec think = UniformThink{0.0, 12'500.0};
  SutModelSpec sut = ZeroSut{};
  std::uint64_t seed = 1;
  std::vector<LabelWeight> labels = default_labels();
};

inline void validate(const SimConfig& c) {
  if (c.horizon_ms <= 0) throw UsageError("horizon must be positive");
  if (c.labels.empty()) throw UsageError("at least one label is required");
  for (const auto& l : c.labels) {
    if (l.label.empty()) throw UsageError("label names must be non-empty");
    if (!(l.weight > 0.0)) throw UsageError("label weights must be positive");
  }
  if (c.mode == LoopMode::open) {
    if (c.arrivals < 2) throw UsageError("open loop needs at least 2 arrivals");
    return;
  }
  if (c.threads < 1) throw UsageError("closed loop needs at least 1 thread");
  validate(c.think);
  validate(c.sut);
  if (think_mean(c.think) == 0.0 && std::holds_alternative<ZeroSut>(c.sut)) {
    throw UsageError("think time and response time are both identically zero");
  }
}

namespace detail {

class LabelPicker {
 public:
  explicit LabelPicker(const std::vector<LabelWeight>& labels) {
    double total = 0.0;
    for (const auto& l : labels) cumulative_.push_back(total += l.weight);
  }

  std::size_t pick(RandomStream& rng) const {
    if (cumulative_.size() == 1) return 0;
    const double u = rng.uniform01() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

inline constexpr std::int64_t kByteCounts[] = {17991, 141907, 26632, 31541, 24113, 110193};

inline RequestRecord make_record(double launch_ms, double elapsed_ms, double wait_ms,
                                 const SimConfig& c, std::size_t label_index, std::string thread) {
  RequestRecord r;
  r.timestamp_ms = std::llround(launch_ms);
  r.elapsed_ms = std::llround(elapsed_ms);
  r.label = c.labels[label_index].label;
  r.response_code = "200";
  r.response_message = "OK";
  r.thread_name = std::move(thread);
  r.data_type = "text";
  r.success = true;
  r.byte_count = kByteCounts[label_index % std::size(kByteCounts)];
  r.first_byte_ms = std::min<std::int64_t>(std::llround(wait_ms), r.elapsed_ms);
  return r;
}

}  // namespace detail

inline std::string thread_name(std::size_t k) { return "Thread Group 1-" + std::to_string(k); }

inline constexpr std::string_view kOpenLoopThread = "Open Loop 1-1";

inline RecordSet simulate_open_loop(const SimConfig& c) {
  if (c.mode != LoopMode::open) throw UsageError("simulate_open_loop needs mode open");
  validate(c);
  RandomStream rng = RandomStream::derived(c.seed, 0);
  std::vector<double> times(c.arrivals);
  const double horizon = static_cast<double>(c.horizon_ms);
  for (auto& t : times) t = rng.uniform01() * horizon;
  std::sort(times.begin(), times.end());

  const detail::LabelPicker picker(c.labels);
  RecordSet out;
  out.records.reserve(times.size());
  for (double t : times) {
    out.records.push_back(detail::make_record(t, 0.0, 0.0, c, picker.pick(rng), std::string(kOpenLoopThread)));
  }
  return out;
}

inline RecordSet simulate_closed_loop(const SimConfig& c) {
  if (c.mode != LoopMode::closed) throw UsageError("simulate_closed_loop needs mode closed");
  validate(c);

  struct Launch {
    double time;
    std::uint64_t seq;
    std::size_t thread;  // 0-based
    bool operator>(const Launch& o) const { return time != o.time ? time > o.time : seq > o.seq; }
  };

  const double horizon = static_cast<double>(c.horizon_ms);
  const detail::LabelPicker picker(c.labels);
  SutStation station(c.sut);
  std::vector<RandomStream> streams;
  std::vector<std::string> names;
  streams.reserve(c.threads);
  names.reserve(c.threads);
  std::priority_queue<Launch, std::vector<Launch>, std::greater<>> pending;
  std::uint64_t seq = 0;
  for (std::size_t k = 0; k < c.threads; ++k) {
    streams.push_back(RandomStream::derived(c.seed, k + 1));
    names.push_back(thread_name(k + 1));
    const double first = sample_think(c.think, streams[k]);
    if (first <= horizon) pending.push({first, seq++, k});
  }

  RecordSet out;
  while (!pending.empty()) {
    const Launch e = pending.top();
    pending.pop();
    auto& rng = streams[e.thread];
    const std::size_t label = picker.pick(rng);
    const SutResponse resp = station.respond(e.time, rng);
    out.records.push_back(detail::make_record(e.time, resp.elapsed_ms, resp.wait_ms, c, label, names[e.thread]));
    const double next = e.time + resp.elapsed_ms + sample_think(c.think, rng);
    if (next <= horizon) pending.push({next, seq++, e.thread});
  }
  out.sort();
  return out;
}

inline RecordSet simulate(const SimConfig& c) {
  return c.mode == LoopMode::open ? simulate_open_loop(c) : simulate_closed_loop(c);
}

}  // namespace reqtiming
