#include <gtest/gtest.h>

#include <sstream>

#include "pitchmotif/config.hpp"
#include "pitchmotif/errors.hpp"

namespace pitchmotif {
namespace {

RunConfig parse(const std::string& text, const std::filesystem::path& base = {}) {
  RunConfig c;
  std::istringstream in(text);
  apply_config(c, in, base);
  return c;
}

TEST(Config, Defaults) {
  const RunConfig c;
  EXPECT_EQ(c.match.local_threshold, 2.0);
  EXPECT_EQ(c.match.global_threshold, 10.0);
  EXPECT_EQ(c.match.min_positions, 41);
  EXPECT_EQ(c.match.max_outlier_run, 2);
  EXPECT_EQ(c.match.max_outlier_fraction, 0.10);
  EXPECT_EQ(c.match.max_stall, 3);
  EXPECT_EQ(c.match.dedupe_overlap, 0.8);
  EXPECT_EQ(c.densify_step, 2.0);
  EXPECT_EQ(c.field.length_m, 105.0);
  EXPECT_EQ(c.field.width_m, 68.0);
  EXPECT_EQ(c.jobs, 1);
}

TEST(Config, AppliesKeys) {
  const auto c = parse(
      "# comment\n"
      "\n"
      "input = a.csv, /abs/b.json\n"
      "out = results\n"
      "jobs = 4\n"
      "team = T01\n"
      "match.local_threshold = 2.5\n"
      "match.min_positions = 30\n"
      "match.self_exclusion_band = 12\n"
      "analytics.accounting = per_occurrence\n"
      "segmentation.break_on_period = false\n",
      "/data");
  ASSERT_EQ(c.inputs.size(), 2u);
  EXPECT_EQ(c.inputs[0], std::filesystem::path("/data/a.csv"));
  EXPECT_EQ(c.inputs[1], std::filesystem::path("/abs/b.json"));
  EXPECT_EQ(c.out_dir, std::filesystem::path("/data/results"));
  EXPECT_EQ(c.jobs, 4);
  EXPECT_EQ(c.team_filter, "T01");
  EXPECT_EQ(c.match.local_threshold, 2.5);
  EXPECT_EQ(c.match.min_positions, 30);
  EXPECT_EQ(c.match.self_exclusion_band, 12);
  EXPECT_EQ(c.accounting, Accounting::PerOccurrence);
  EXPECT_FALSE(c.segmentation.break_on_period);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse("match.bogus = 1\n"), ConfigError);
  EXPECT_THROW(parse("jobs = four\n"), ConfigError);
  EXPECT_THROW(parse("match.local_threshold = 2x\n"), ConfigError);
  EXPECT_THROW(parse("just a line\n"), ConfigError);
  EXPECT_THROW(parse("analytics.accounting = both\n"), ConfigError);
}

TEST(Config, Validate) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  c.jobs = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.match.global_threshold = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.densify_step = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, LoadMissingFile) {
  EXPECT_THROW(load_config("/nonexistent/pitchmotif.conf"), ConfigError);
}

}  // namespace
}  // namespace pitchmotif
