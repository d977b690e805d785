#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace reqtiming;
using rt_test::data_path;
using rt_test::read_file;

namespace {

const std::string kRow = "1000,9,010_Home,200,OK,Thread Group 1-1,text,TRUE,17991,7";

std::string header_line() {
  std::string h;
  for (std::size_t c = 0; c < kColumnCount; ++c) h += (c ? "," : "") + std::string(kColumnNames[c]);
  return h;
}

}  // namespace

TEST(ParseLog, Fig14FixtureParses) {
  const auto set = parse_log(read_file(data_path("fig14.csv")));
  ASSERT_EQ(set.size(), 14u);
  const auto& first = set.records.front();
  EXPECT_EQ(first.timestamp_ms, 1331861523116);
  EXPECT_EQ(first.elapsed_ms, 9);
  EXPECT_EQ(first.label, "010_Home");
  EXPECT_EQ(first.response_code, "200");
  EXPECT_EQ(first.response_message, "OK");
  EXPECT_EQ(first.thread_name, "Thread Group 1-97");
  EXPECT_EQ(first.data_type, "text");
  EXPECT_TRUE(first.success);
  EXPECT_EQ(first.byte_count, 17991);
  EXPECT_EQ(first.first_byte_ms, 7);
  EXPECT_EQ(set.records.back().label, "040_Statistics");
  EXPECT_EQ(set.records.back().first_byte_ms, 610);
  EXPECT_TRUE(set.is_sorted());
}

TEST(ParseLog, HeaderlessInputDetected) {
  const auto set = parse_log(kRow + "\n");
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.records[0].timestamp_ms, 1000);
}

TEST(ParseLog, ExplicitHeaderModes) {
  EXPECT_THROW(parse_log(kRow + "\n", {HeaderMode::present, false}), DataError);  // only row taken as header
  EXPECT_THROW(parse_log(header_line() + "\n" + kRow + "\n", {HeaderMode::absent, false}), DataError);
}

TEST(ParseLog, CrlfAndBlankLines) {
  const auto set = parse_log(header_line() + "\r\n\r\n" + kRow + "\r\n\r\n");
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.records[0].first_byte_ms, 7);
}

TEST(ParseLog, HeaderOnlyIsNoRecords) {
  try {
    parse_log(header_line() + "\n");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "no records");
  }
  EXPECT_THROW(parse_log(""), DataError);
}

TEST(ParseLog, FieldCountErrorNamesLine) {
  try {
    parse_log(header_line() + "\n" + kRow + "\n1001,9,010_Home,200,OK\n");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "line 3: expected 10 fields, got 5");
  }
}

TEST(ParseLog, NonIntegerTimestampNamesLine) {
  try {
    parse_log(kRow + "\nabc1,9,010_Home,200,OK,T 1-1,text,TRUE,1,1\n");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2: non-integer TimeStamp (ms)"), std::string::npos);
  }
}

TEST(ParseLog, RecordInvariantsEnforced) {
  EXPECT_THROW(parse_log("-5,9,a,200,OK,t,text,TRUE,1,1\n"), DataError);
  EXPECT_THROW(parse_log("5,-9,a,200,OK,t,text,TRUE,1,1\n"), DataError);
  EXPECT_THROW(parse_log("5,9,a,200,OK,t,text,TRUE,1,10\n"), DataError);  // first byte after completion
  EXPECT_THROW(parse_log("5,9,a,200,OK,t,text,TRUE,1,-1\n"), DataError);
  EXPECT_THROW(parse_log("5,9, ,200,OK,t,text,TRUE,1,1\n"), DataError);
  EXPECT_THROW(parse_log("5,9,a,200,OK,,text,TRUE,1,1\n"), DataError);
  EXPECT_THROW(parse_log("5,9,a,200,OK,t,text,maybe,1,1\n"), DataError);
  EXPECT_NO_THROW(parse_log("0,0,a,200,OK,t,text,false,0,0\n"));
}

TEST(ParseLog, OutOfOrderInputIsSorted) {
  const auto set = parse_log("30,1,a,200,OK,t,text,TRUE,1,1\n10,1,b,200,OK,t,text,TRUE,1,1\n20,1,c,200,OK,t,text,TRUE,1,1\n");
  ASSERT_EQ(set.size(), 3u);
  EXPECT_EQ(set.records[0].label, "b");
  EXPECT_EQ(set.records[1].label, "c");
  EXPECT_EQ(set.records[2].label, "a");
}

TEST(ParseLog, EqualTimestampsKeepFileOrder) {
  const auto set = parse_log("10,1,x,200,OK,t,text,TRUE,1,1\n10,1,y,200,OK,t,text,TRUE,1,1\n5,1,z,200,OK,t,text,TRUE,1,1\n");
  EXPECT_EQ(set.records[1].label, "x");
  EXPECT_EQ(set.records[2].label, "y");
}

TEST(ParseLog, QuotedFields) {
  const auto set = parse_log("5,9,\"a,b\",200,\"say \"\"hi\"\"\",t,text,TRUE,1,1\n");
  EXPECT_EQ(set.records[0].label, "a,b");
  EXPECT_EQ(set.records[0].response_message, "say \"hi\"");
}

TEST(ParseLog, ColumnsByName) {
  const std::string text =
      "Success,User Thread,extra,TimeStamp (ms),R (ms),Web Event Name,Response Code,Response Message,Data Type,"
      "Byte Count,R (1st Byte) (ms)\n"
      "TRUE,Thread Group 1-3,zzz,1234,50,010_Home,200,OK,text,99,20\n";
  const auto set = parse_log(text, {HeaderMode::automatic, true});
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.records[0].timestamp_ms, 1234);
  EXPECT_EQ(set.records[0].elapsed_ms, 50);
  EXPECT_EQ(set.records[0].thread_name, "Thread Group 1-3");
  EXPECT_EQ(set.records[0].byte_count, 99);
  EXPECT_EQ(set.records[0].first_byte_ms, 20);
}

TEST(ParseLog, ColumnsByNameAcceptsJMeterHeaders) {
  const std::string text =
      "timeStamp,elapsed,label,responseCode,responseMessage,threadName,dataType,success,bytes,Latency\n"
      "1234,50,010_Home,200,OK,Thread Group 1-3,text,true,99,20\n";
  const auto set = parse_log(text, {HeaderMode::automatic, true});
  EXPECT_EQ(set.records[0].first_byte_ms, 20);
}

TEST(ParseLog, ColumnsByNameErrors) {
  EXPECT_THROW(parse_log(kRow + "\n", {HeaderMode::automatic, true}), UsageError);
  EXPECT_THROW(parse_log("TimeStamp (ms),R (ms)\n1,2\n", {HeaderMode::automatic, true}), DataError);
}

TEST(WriteLog, HeaderMatchesColumnNames) {
  RecordSet s;
  s.records.push_back(rt_test::rec(1));
  const auto text = write_log(s);
  EXPECT_EQ(text.substr(0, text.find('\n')), header_line());
  EXPECT_EQ(write_log(s, false), "1,0,a,200,OK,Thread Group 1-1,text,TRUE,100,0\n");
}

TEST(WriteLog, Fig14RoundTripIsByteIdentical) {
  const auto text = read_file(data_path("fig14.csv"));
  EXPECT_EQ(write_log(parse_log(text)), text);
}

TEST(WriteLog, RoundTripProperty) {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto set = rt_test::random_set(g, 1 + g() % 60);
    const auto back = parse_log(write_log(set));
    ASSERT_EQ(back.records, set.records) << "trial " << trial;
  }
}
