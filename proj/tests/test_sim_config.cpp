#include <gtest/gtest.h>

#include "reqtiming/sim_config.hpp"

using namespace reqtiming;

TEST(ParseThink, Forms) {
  EXPECT_EQ(std::get<FixedThink>(parse_think("fixed:100")).value_ms, 100.0);
  const auto u = std::get<UniformThink>(parse_think("uniform:0:12500"));
  EXPECT_EQ(u.offset_ms, 0.0);
  EXPECT_EQ(u.range_ms, 12500.0);
  EXPECT_EQ(std::get<ExponentialThink>(parse_think("exp:6250")).mean_ms, 6250.0);
  EXPECT_EQ(std::get<ExponentialThink>(parse_think("Exponential:1.5")).mean_ms, 1.5);
}

TEST(ParseThink, Rejects) {
  for (const char* bad : {"", "fixed", "fixed:", "fixed:x", "fixed:1:2", "uniform:1", "normal:3", "fixed:-1",
                          "fixed:inf", "uniform:0:-2"}) {
    EXPECT_THROW(parse_think(bad), UsageError) << bad;
  }
}

TEST(ParseSut, Forms) {
  EXPECT_TRUE(std::holds_alternative<ZeroSut>(parse_sut("zero")));
  const auto l = std::get<LognormalSut>(parse_sut("lognormal:53:2.95"));
  EXPECT_EQ(l.r_mean_ms, 53.0);
  EXPECT_EQ(l.cov_r, 2.95);
  const auto q = std::get<QueueSut>(parse_sut("queue:4:20:1.5"));
  EXPECT_EQ(q.servers, 4);
  EXPECT_EQ(q.shape, ServiceShape::lognormal);
  EXPECT_EQ(std::get<QueueSut>(parse_sut("queue:1:4.3:12:h2")).shape, ServiceShape::hyperexponential);
}

TEST(ParseSut, Rejects) {
  for (const char* bad : {"zero:1", "lognormal:0:1", "lognormal:5", "queue:0:1:1", "queue:1.5:1:1", "queue:1:1:1:gamma",
                          "queue:1:10:0.5:h2", "mm1"}) {
    EXPECT_THROW(parse_sut(bad), UsageError) << bad;
  }
}

TEST(ParseLabels, WeightsOptional) {
  const auto l = parse_labels("010_Home:4, 040_Statistics ,a:b:2");
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0].label, "010_Home");
  EXPECT_EQ(l[0].weight, 4.0);
  EXPECT_EQ(l[1].label, "040_Statistics");
  EXPECT_EQ(l[1].weight, 1.0);
  EXPECT_EQ(l[2].label, "a:b");
  EXPECT_THROW(parse_labels("a,,b"), UsageError);
  EXPECT_THROW(parse_labels("a:0"), UsageError);
  EXPECT_THROW(parse_labels(":3"), UsageError);
}

TEST(SpecStrings, RoundTrip) {
  for (const char* s : {"fixed:100", "uniform:200:1600", "exp:0.25"}) EXPECT_EQ(to_string(parse_think(s)), s);
  for (const char* s : {"zero", "lognormal:53:2.95", "queue:3:4.3:12:h2", "queue:1:10:0"}) {
    EXPECT_EQ(to_string(parse_sut(s)), s);
  }
}

TEST(ConfigText, AppliesSettingsAndComments) {
  SimConfig c;
  apply_config_text(c,
                    "# run 1830 style\n"
                    "mode = closed\n"
                    "threads = 200   # full pool\n"
                    "\n"
                    "think = uniform:0:12500\n"
                    "sut = lognormal:53:2.95\n"
                    "duration_ms = 1500000\n"
                    "seed = 42\n"
                    "labels = a:1,b:2\n");
  EXPECT_EQ(c.threads, 200u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.horizon_ms, 1500000);
  EXPECT_EQ(c.labels.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<LognormalSut>(c.sut));
}

TEST(ConfigText, Errors) {
  SimConfig c;
  EXPECT_THROW(apply_config_text(c, "threads 200\n"), UsageError);
  EXPECT_THROW(apply_config_text(c, "colour = red\n"), UsageError);
  EXPECT_THROW(apply_config_text(c, "threads = -4\n"), UsageError);
  EXPECT_THROW(apply_config_text(c, "mode = sideways\n"), UsageError);
}

TEST(ConfigText, DescribeReplays) {
  SimConfig c;
  c.mode = LoopMode::open;
  c.arrivals = 1234;
  c.think = ExponentialThink{12.5};
  c.sut = QueueSut{2, 7.25, 3, ServiceShape::hyperexponential};
  c.seed = 18446744073709551615ULL;
  c.labels = {{"x", 0.1}, {"y", 2}};
  SimConfig back;
  apply_config_text(back, describe(c));
  EXPECT_EQ(describe(back), describe(c));
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(back.labels[0].weight, 0.1);
}
