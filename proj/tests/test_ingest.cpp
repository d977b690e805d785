#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_support.hpp"

using namespace reqtiming;
using rt_test::rec;
using rt_test::set_of;

TEST(Merge, OffsetsShiftAndInterleave) {
  const std::vector<OffsetRecordSet> in = {{set_of({10, 30}, "a"), 0}, {set_of({10, 20}, "b"), 5}};
  const auto m = merge(in);
  ASSERT_EQ(m.size(), 4u);
  std::vector<std::int64_t> ts;
  for (const auto& r : m.records) ts.push_back(r.timestamp_ms);
  EXPECT_EQ(ts, (std::vector<std::int64_t>{10, 15, 25, 30}));
  EXPECT_EQ(m.source_count, 2u);
}

TEST(Merge, SingleInputZeroOffsetIsIdentity) {
  const auto s = parse_log(rt_test::read_file(rt_test::data_path("fig14.csv")));
  const std::vector<OffsetRecordSet> in = {{s, 0}};
  EXPECT_EQ(merge(in).records, s.records);
}

TEST(Merge, NegativeOffsetBelowZeroRejected) {
  const std::vector<OffsetRecordSet> in = {{set_of({10}), -20}};
  EXPECT_THROW(merge(in), DataError);
}

TEST(Merge, EmptyInputRejected) {
  EXPECT_THROW(merge(std::span<const OffsetRecordSet>{}), DataError);
}

TEST(Merge, CountAndOrderProperty) {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<OffsetRecordSet> in;
    std::size_t total = 0;
    const int files = 1 + static_cast<int>(g() % 4);
    for (int f = 0; f < files; ++f) {
      auto s = rt_test::random_set(g, 1 + g() % 30);
      total += s.size();
      in.push_back({std::move(s), static_cast<std::int64_t>(g() % 100000)});
    }
    const auto m = merge(in);
    EXPECT_EQ(m.size(), total);
    EXPECT_TRUE(m.is_sorted());
  }
}

TEST(Trim, KeepsInclusiveWindow) {
  const auto s = set_of({0, 100, 200, 300, 400, 1000});
  const auto t = trim(s, {100, 600});
  std::vector<std::int64_t> ts;
  for (const auto& r : t.records) ts.push_back(r.timestamp_ms);
  EXPECT_EQ(ts, (std::vector<std::int64_t>{100, 200, 300, 400}));
}

TEST(Trim, ZeroWindowIsIdentity) {
  const auto s = set_of({5, 6, 9});
  EXPECT_EQ(trim(s, {0, 0}).records, s.records);
}

TEST(Trim, EmptyWindowRejected) {
  try {
    trim(set_of({0, 100}), {60, 60});
    FAIL();
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "trim window empty");
  }
}

TEST(Trim, InvalidInputs) {
  EXPECT_THROW(trim(RecordSet{}, {0, 0}), DataError);
  EXPECT_THROW(trim(set_of({1, 2}), {-1, 0}), UsageError);
}

TEST(Trim, IdempotentWithZeroOffsetsAfterTrim) {
  std::mt19937_64 g(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = rt_test::random_set(g, 2 + g() % 50);
    const auto span = s.max_timestamp() - s.min_timestamp();
    const TrimWindow w{static_cast<std::int64_t>(g() % (span / 4 + 1)), static_cast<std::int64_t>(g() % (span / 4 + 1))};
    RecordSet once;
    try {
      once = trim(s, w);
    } catch (const DataError&) {
      continue;  // sparse sample with nothing inside the window
    }
    EXPECT_EQ(trim(once, {0, 0}).records, once.records);
    EXPECT_GE(once.min_timestamp(), s.min_timestamp() + w.start_offset_ms);
    EXPECT_LE(once.max_timestamp(), s.max_timestamp() - w.end_offset_ms);
  }
}

TEST(Filter, ByLabelAndThreads) {
  RecordSet s;
  s.records = {rec(1, "a", "T-1"), rec(2, "b", "T-1"), rec(3, "a", "T-2"), rec(4, "a", "T-3")};
  EXPECT_EQ(filter(s, {std::string("a"), std::nullopt}).size(), 3u);
  EXPECT_EQ(filter(s, {std::nullopt, std::set<std::string>{"T-1", "T-3"}}).size(), 3u);
  EXPECT_EQ(filter(s, {std::string("a"), std::set<std::string>{"T-1"}}).size(), 1u);
  EXPECT_EQ(filter(s, {std::string("zzz"), std::nullopt}).size(), 0u);
  EXPECT_EQ(filter(s, {}).size(), 4u);
}

TEST(Filter, ComplementaryLabelFiltersPartition) {
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = rt_test::random_set(g, 1 + g() % 80);
    std::set<std::string> labels;
    for (const auto& r : s.records) labels.insert(r.label);
    std::size_t total = 0;
    for (const auto& l : labels) {
      const auto part = filter(s, {l, std::nullopt});
      EXPECT_TRUE(part.is_sorted());
      total += part.size();
    }
    EXPECT_EQ(total, s.size());
  }
}
