#pragma once

// Compact text forms for simulator settings, shared by the command line and
// the config file.
//
//   think:  fixed:<ms> | uniform:<offset>:<range> | exp:<mean>
//   sut:    zero | lognormal:<mean>:<cov> | queue:<servers>:<mean>:<cov>[:lognormal|:h2]
//   labels: name[:weight],name[:weight],...
//
// A config file holds `key = value` lines (keys: mode, threads, duration_ms,
// arrivals, think, sut, seed, labels); `#` starts a comment. describe()
// writes the same format, so an effective configuration can be replayed.

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "event_log.hpp"
#include "simulator.hpp"

namespace reqtiming {

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.emplace_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

inline double parse_number(std::string_view text, std::string_view what) {
  const std::string s(trim_ws(text));
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw UsageError("invalid number for " + std::string(what) + ": '" + s + "'");
  }
  return v;
}

inline std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
  const std::string s(trim_ws(text));
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw UsageError("invalid integer for " + std::string(what) + ": '" + s + "'");
  }
  return v;
}

// Shortest text that reads back to the same double.
inline std::string number_text(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace detail

inline ThinkTimeSpec parse_think(std::string_view text) {
  const auto parts = detail::split(text, ':');
  const std::string kind = detail::lower(parts[0]);
  auto num = [&](std::size_t i) { return detail::parse_number(parts[i], "think time"); };
  ThinkTimeSpec spec;
  if (kind == "fixed" && parts.size() == 2) {
    spec = FixedThink{num(1)};
  } else if (kind == "uniform" && parts.size() == 3) {
    spec = UniformThink{num(1), num(2)};
  } else if ((kind == "exp" || kind == "exponential") && parts.size() == 2) {
    spec = ExponentialThink{num(1)};
  } else {
    throw UsageError("bad think-time spec '" + std::string(text) +
                     "' (want fixed:MS, uniform:OFFSET:RANGE or exp:MEAN)");
  }
  validate(spec);
  return spec;
}

inline std::string to_string(const ThinkTimeSpec& spec) {
  using detail::number_text;
  if (const auto* f = std::get_if<FixedThink>(&spec)) return "fixed:" + number_text(f->value_ms);
  if (const auto* u = std::get_if<UniformThink>(&spec)) {
    return "uniform:" + number_text(u->offset_ms) + ":" + number_text(u->range_ms);
  }
  return "exp:" + number_text(std::get<ExponentialThink>(spec).mean_ms);
}

inline SutModelSpec parse_sut(std::string_view text) {
  const auto parts = detail::split(text, ':');
  const std::string kind = detail::lower(parts[0]);
  auto num = [&](std::size_t i) { return detail::parse_number(parts[i], "response model"); };
  SutModelSpec spec;
  if (kind == "zero" && parts.size() == 1) {
    spec = ZeroSut{};
  } else if (kind == "lognormal" && parts.size() == 3) {
    spec = LognormalSut{num(1), num(2)};
  } else if (kind == "queue" && (parts.size() == 4 || parts.size() == 5)) {
    QueueSut q;
    const auto servers = detail::parse_unsigned(parts[1], "queue servers");
    if (servers < 1 || servers > 100000) throw UsageError("queue servers must be in [1, 100000]");
    q.servers = static_cast<int>(servers);
    q.service_mean_ms = num(2);
    q.service_cov = num(3);
    if (parts.size() == 5) {
      const std::string shape = detail::lower(parts[4]);
      if (shape == "h2") {
        q.shape = ServiceShape::hyperexponential;
      } else if (shape != "lognormal") {
        throw UsageError("unknown service shape '" + parts[4] + "' (want lognormal or h2)");
      }
    }
    spec = q;
  } else {
    throw UsageError("bad response-model spec '" + std::string(text) +
                     "' (want zero, lognormal:MEAN:COV or queue:SERVERS:MEAN:COV[:h2])");
  }
  validate(spec);
  return spec;
}

inline std::string to_string(const SutModelSpec& spec) {
  using detail::number_text;
  if (std::holds_alternative<ZeroSut>(spec)) return "zero";
  if (const auto* l = std::get_if<LognormalSut>(&spec)) {
    return "lognormal:" + number_text(l->r_mean_ms) + ":" + number_text(l->cov_r);
  }
  const auto& q = std::get<QueueSut>(spec);
  return "queue:" + std::to_string(q.servers) + ":" + number_text(q.service_mean_ms) + ":" +
         number_text(q.service_cov) + (q.shape == ServiceShape::hyperexponential ? ":h2" : "");
}

inline std::vector<LabelWeight> parse_labels(std::string_view text) {
  std::vector<LabelWeight> out;
  for (const auto& item : detail::split(text, ',')) {
    const std::string_view entry = detail::trim_ws(item);
    if (entry.empty()) throw UsageError("empty label in '" + std::string(text) + "'");
    const auto colon = entry.rfind(':');
    LabelWeight lw;
    if (colon == std::string_view::npos) {
      lw.label = std::string(entry);
    } else {
      lw.label = std::string(entry.substr(0, colon));
      lw.weight = detail::parse_number(entry.substr(colon + 1), "label weight");
    }
    if (lw.label.empty() || !(lw.weight > 0.0)) {
      throw UsageError("labels need a name and a positive weight: '" + std::string(entry) + "'");
    }
    out.push_back(std::move(lw));
  }
  return out;
}

inline std::string to_string(const std::vector<LabelWeight>& labels) {
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += ',';
    out += l.label + ":" + detail::number_text(l.weight);
  }
  return out;
}

inline LoopMode parse_mode(std::string_view text) {
  const std::string m = detail::lower(detail::trim_ws(text));
  if (m == "open") return LoopMode::open;
  if (m == "closed") return LoopMode::closed;
  throw UsageError("mode must be open or closed, got '" + std::string(text) + "'");
}

// Applies one `key = value` setting.
inline void apply_setting(SimConfig& c, std::string_view key_text, std::string_view value_text) {
  const std::string key = detail::lower(detail::trim_ws(key_text));
  const std::string_view value = detail::trim_ws(value_text);
  if (key == "mode") c.mode = parse_mode(value);
  else if (key == "threads") c.threads = detail::parse_unsigned(value, key);
  else if (key == "duration_ms") c.horizon_ms = static_cast<std::int64_t>(detail::parse_unsigned(value, key));
  else if (key == "arrivals") c.arrivals = detail::parse_unsigned(value, key);
  else if (key == "think") c.think = parse_think(value);
  else if (key == "sut") c.sut = parse_sut(value);
  else if (key == "seed") c.seed = detail::parse_unsigned(value, key);
  else if (key == "labels") c.labels = parse_labels(value);
  else throw UsageError("unknown config key '" + key + "'");
}

inline void apply_config_text(SimConfig& c, std::string_view text) {
  std::size_t line_no = 0;
  for (const auto& raw : detail::split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim_ws(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(c, line.substr(0, eq), line.substr(eq + 1));
  }
}

inline std::string describe(const SimConfig& c) {
  std::ostringstream os;
  os << "mode = " << (c.mode == LoopMode::open ? "open" : "closed") << '\n'
     << "threads = " << c.threads << '\n'
     << "duration_ms = " << c.horizon_ms << '\n'
     << "arrivals = " << c.arrivals << '\n'
     << "think = " << to_string(c.think) << '\n'
     << "sut = " << to_string(c.sut) << '\n'
     << "seed = " << c.seed << '\n'
     << "labels = " << to_string(c.labels) << '\n';
  return os.str();
}

}  // namespace reqtiming
