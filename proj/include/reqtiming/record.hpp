#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace reqtiming {

// One launched request, as written by the load tool's aggregate report
// listener. timestamp_ms is the launch time.
struct RequestRecord {
  std::int64_t timestamp_ms = 0;
  std::int64_t elapsed_ms = 0;
  std::string label;
  std::string response_code;
  std::string response_message;
  std::string thread_name;
  std::string data_type;
  bool success = true;
  std::int64_t byte_count = 0;
  std::int64_t first_byte_ms = 0;

  friend bool operator==(const RequestRecord&, const RequestRecord&) = default;
};

// Records ordered ascending by timestamp_ms. Ties keep input order.
struct RecordSet {
  std::vector<RequestRecord> records;
  std::size_t source_count = 1;

  [[nodiscard]] bool empty() const noexcept { return records.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return records.size(); }

  [[nodiscard]] std::int64_t min_timestamp() const { return records.front().timestamp_ms; }
  [[nodiscard]] std::int64_t max_timestamp() const { return records.back().timestamp_ms; }

  void sort() {
    std::stable_sort(records.begin(), records.end(),
                     [](const RequestRecord& a, const RequestRecord& b) {
                       return a.timestamp_ms < b.timestamp_ms;
                     });
  }

  [[nodiscard]] bool is_sorted() const {
    return std::is_sorted(records.begin(), records.end(),
                          [](const RequestRecord& a, const RequestRecord& b) {
                            return a.timestamp_ms < b.timestamp_ms;
                          });
  }
};

// Milliseconds excluded from the start and end of a test before analysis.
struct TrimWindow {
  std::int64_t start_offset_ms = 0;
  std::int64_t end_offset_ms = 0;
};

}  // namespace reqtiming
