#pragma once

// Reader and writer for the aggregate-report event file: ten comma-separated
// columns, optionally preceded by a header row.
//
//   TimeStamp (ms),R (ms),Web Event Name,Response Code,Response Message,
//   User Thread,Data Type,Success,Byte Count,R (1st Byte) (ms)

#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "record.hpp"

namespace reqtiming {

enum class HeaderMode { automatic, present, absent };

struct ParseOptions {
  HeaderMode header = HeaderMode::automatic;
  // Locate columns through the header names instead of by position. Lets
  // logs with extra or reordered columns (e.g. the tool's native
  // timeStamp,elapsed,label,... layout) be read. Requires a header row.
  bool columns_by_name = false;
};

enum class Column : std::size_t {
  timestamp,
  elapsed,
  label,
  response_code,
  response_message,
  thread_name,
  data_type,
  success,
  byte_count,
  first_byte,
};

inline constexpr std::size_t kColumnCount = 10;

inline constexpr std::array<std::string_view, kColumnCount> kColumnNames = {
    "TimeStamp (ms)", "R (ms)",      "Web Event Name", "Response Code",
    "Response Message", "User Thread", "Data Type",    "Success",
    "Byte Count",      "R (1st Byte) (ms)",
};

namespace detail {

inline std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim_ws(s);
  if (s.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Splits one CSV line. Double-quoted fields may contain commas; "" inside
// quotes is a literal quote.
inline std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

inline std::string quote_csv(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::optional<std::size_t> column_for_header(std::string_view name) {
  static const std::array<std::array<std::string_view, 2>, kColumnCount> aliases = {{
      {"timestamp (ms)", "timestamp"},
      {"r (ms)", "elapsed"},
      {"web event name", "label"},
      {"response code", "responsecode"},
      {"response message", "responsemessage"},
      {"user thread", "threadname"},
      {"data type", "datatype"},
      {"success", "success"},
      {"byte count", "bytes"},
      {"r (1st byte) (ms)", "latency"},
  }};
  const std::string key = lower(trim_ws(name));
  for (std::size_t c = 0; c < kColumnCount; ++c) {
    if (key == aliases[c][0] || key == aliases[c][1]) return c;
  }
  return std::nullopt;
}

inline std::string at_line(std::size_t line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

}  // namespace detail

// Parses an event log. Throws DataError naming the 1-based line number of
// the first malformed row, or "no records" when there are no data rows.
inline RecordSet parse_log(std::string_view text, const ParseOptions& options = {}) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!detail::trim_ws(line).empty()) lines.emplace_back(line_no, line);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  bool has_header = false;
  if (!lines.empty()) {
    switch (options.header) {
      case HeaderMode::present: has_header = true; break;
      case HeaderMode::absent: has_header = false; break;
      case HeaderMode::automatic: {
        const auto first = detail::split_csv(lines.front().second);
        has_header = !detail::parse_int(first.front()).has_value();
        break;
      }
    }
  }

  std::array<std::size_t, kColumnCount> index{};
  for (std::size_t c = 0; c < kColumnCount; ++c) index[c] = c;
  std::size_t expected_fields = kColumnCount;

  if (options.columns_by_name) {
    if (!has_header) throw UsageError("column mapping by name requires a header row");
    const auto names = detail::split_csv(lines.front().second);
    std::array<bool, kColumnCount> found{};
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (auto c = detail::column_for_header(names[i]); c && !found[*c]) {
        index[*c] = i;
        found[*c] = true;
      }
    }
    std::string missing;
    for (std::size_t c = 0; c < kColumnCount; ++c) {
      if (!found[c]) {
        if (!missing.empty()) missing += ", ";
        missing += kColumnNames[c];
      }
    }
    if (!missing.empty()) {
      throw DataError(detail::at_line(lines.front().first) + "header lacks columns: " + missing);
    }
    expected_fields = names.size();
  }

  RecordSet set;
  set.records.reserve(lines.size());
  for (std::size_t i = has_header ? 1 : 0; i < lines.size(); ++i) {
    const auto [line_no, line] = lines[i];
    const auto fields = detail::split_csv(line);
    if (fields.size() != expected_fields) {
      throw DataError(detail::at_line(line_no) + "expected " + std::to_string(expected_fields) +
                      " fields, got " + std::to_string(fields.size()));
    }
    auto field = [&](Column c) -> const std::string& {
      return fields[index[static_cast<std::size_t>(c)]];
    };
    auto integer = [&](Column c) {
      auto v = detail::parse_int(field(c));
      if (!v) {
        throw DataError(detail::at_line(line_no) + "non-integer " +
                        std::string(kColumnNames[static_cast<std::size_t>(c)]) + " '" +
                        field(c) + "'");
      }
      return *v;
    };

    RequestRecord r;
    r.timestamp_ms = integer(Column::timestamp);
    r.elapsed_ms = integer(Column::elapsed);
    r.label = field(Column::label);
    r.response_code = field(Column::response_code);
    r.response_message = field(Column::response_message);
    r.thread_name = field(Column::thread_name);
    r.data_type = field(Column::data_type);
    const std::string ok = detail::lower(detail::trim_ws(field(Column::success)));
    if (ok == "true") {
      r.success = true;
    } else if (ok == "false") {
      r.success = false;
    } else {
      throw DataError(detail::at_line(line_no) + "Success must be TRUE or FALSE, got '" +
                      field(Column::success) + "'");
    }
    r.byte_count = integer(Column::byte_count);
    r.first_byte_ms = integer(Column::first_byte);

    if (r.timestamp_ms < 0) throw DataError(detail::at_line(line_no) + "negative timestamp");
    if (r.elapsed_ms < 0) throw DataError(detail::at_line(line_no) + "negative response time");
    if (r.first_byte_ms < 0 || r.first_byte_ms > r.elapsed_ms) {
      throw DataError(detail::at_line(line_no) + "first-byte time outside [0, response time]");
    }
    if (detail::trim_ws(r.label).empty()) throw DataError(detail::at_line(line_no) + "empty Web Event Name");
    if (detail::trim_ws(r.thread_name).empty()) throw DataError(detail::at_line(line_no) + "empty User Thread");
    set.records.push_back(std::move(r));
  }

  if (set.records.empty()) throw DataError("no records");
  set.sort();
  return set;
}

// Writes records in the ten-column layout, header first when requested.
inline void write_log(std::ostream& out, const RecordSet& set, bool header = true) {
  if (header) {
    for (std::size_t c = 0; c < kColumnCount; ++c) {
      out << (c ? "," : "") << kColumnNames[c];
    }
    out << '\n';
  }
  for (const auto& r : set.records) {
    out << r.timestamp_ms << ',' << r.elapsed_ms << ',' << detail::quote_csv(r.label) << ','
        << detail::quote_csv(r.response_code) << ',' << detail::quote_csv(r.response_message)
        << ',' << detail::quote_csv(r.thread_name) << ',' << detail::quote_csv(r.data_type) << ','
        << (r.success ? "TRUE" : "FALSE") << ',' << r.byte_count << ',' << r.first_byte_ms
        << '\n';
  }
}

inline std::string write_log(const RecordSet& set, bool header = true) {
  std::ostringstream out;
  write_log(out, set, header);
  return out.str();
}

}  // namespace reqtiming
