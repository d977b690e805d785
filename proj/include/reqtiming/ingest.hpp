#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "event_log.hpp"
#include "record.hpp"

namespace reqtiming {

// A record set together with the clock correction (ms) applied before merging.
struct OffsetRecordSet {
  RecordSet set;
  std::int64_t clock_offset_ms = 0;
};

// Combines logs from several load generators. Offsets come from the caller;
// nothing here estimates clock skew.
inline RecordSet merge(std::span<const OffsetRecordSet> inputs) {
  if (inputs.empty()) throw DataError("merge needs at least one input");
  RecordSet out;
  std::size_t total = 0;
  for (const auto& in : inputs) total += in.set.size();
  out.records.reserve(total);
  for (const auto& in : inputs) {
    for (auto r : in.set.records) {
      r.timestamp_ms += in.clock_offset_ms;
      if (r.timestamp_ms < 0) throw DataError("clock offset moves a timestamp below zero");
      out.records.push_back(std::move(r));
    }
  }
  out.source_count = inputs.size();
  out.sort();
  return out;
}

// Keeps records launched in [min + start_offset, max - end_offset], both ends
// inclusive, with min/max taken over the input.
inline RecordSet trim(const RecordSet& set, const TrimWindow& window) {
  if (set.empty()) throw DataError("trim needs a non-empty record set");
  if (window.start_offset_ms < 0 || window.end_offset_ms < 0) {
    throw UsageError("trim offsets must be non-negative");
  }
  RecordSet sorted_copy;
  const RecordSet* src = &set;
  if (!set.is_sorted()) {
    sorted_copy = set;
    sorted_copy.sort();
    src = &sorted_copy;
  }
  const std::int64_t lo = src->min_timestamp() + window.start_offset_ms;
  const std::int64_t hi = src->max_timestamp() - window.end_offset_ms;

  RecordSet out;
  out.source_count = set.source_count;
  for (const auto& r : src->records) {
    if (r.timestamp_ms >= lo && r.timestamp_ms <= hi) out.records.push_back(r);
  }
  if (out.empty()) throw DataError("trim window empty");
  return out;
}

struct RecordFilter {
  std::optional<std::string> label;
  std::optional<std::set<std::string>> threads;

  [[nodiscard]] bool matches(const RequestRecord& r) const {
    if (label && r.label != *label) return false;
    if (threads && !threads->contains(r.thread_name)) return false;
    return true;
  }
};

inline RecordSet filter(const RecordSet& set, const RecordFilter& by) {
  RecordSet out;
  out.source_count = set.source_count;
  for (const auto& r : set.records) {
    if (by.matches(r)) out.records.push_back(r);
  }
  return out;
}

}  // namespace reqtiming
