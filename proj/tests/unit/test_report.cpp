#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pitchmotif/errors.hpp"
#include "pitchmotif/report.hpp"
#include "support/analytics_fixture.hpp"
#include "support/fixtures.hpp"

namespace pitchmotif {
namespace {

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(RenderMatch, PatternMarkerCount) {
  const auto season = testing::six_match_season();
  const auto svg = render_match(view_match(season, 0), PitchStyle{});
  EXPECT_EQ(count(svg, "class=\"pattern\""), 72 + 72);
  // s1 starts its match at position 10; positions 0..9 lead up to it.
  EXPECT_EQ(count(svg, "class=\"pre\""), 10);
  EXPECT_EQ(count(svg, "class=\"post\""), 0);
  EXPECT_EQ(count(svg, "class=\"pitch\""), 2);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
}

TEST(RenderMatch, FullCoverageHasNoPrePost) {
  const auto season = testing::six_match_season();
  const auto svg = render_match(view_match(season, 1), PitchStyle{});
  EXPECT_EQ(count(svg, "class=\"pattern\""), 82 + 82);
  EXPECT_EQ(count(svg, "class=\"pre\""), 0);
  EXPECT_EQ(count(svg, "class=\"post\""), 0);
  EXPECT_EQ(count(svg, "class=\"background\""), 0);
}

TEST(RenderMatch, PrePostStopAtOriginalEndpoints) {
  // Three passes of nine segments; the match covers the inside of the middle pass.
  const auto a = testing::dense_chain("a", {{40, 5}, {42, 22}, {41, 39}, {44, 56}});
  auto b = testing::translated(a, "b", 0.5, 0.0);
  DiscoveryResult r;
  r.team_id = "T";
  r.matches.push_back(testing::shifted_match(a, 11, b, 11, 8));
  const TeamSeason season(r, std::vector<DensifiedSequence>{a, b});
  const auto svg = render_match(view_match(season, 0), PitchStyle{});
  EXPECT_EQ(count(svg, "class=\"pattern\""), 16);
  // Positions 10 and 19 are the emission and reception of the middle pass.
  EXPECT_EQ(count(svg, "class=\"pre\""), 2);
  EXPECT_EQ(count(svg, "class=\"post\""), 2);
  EXPECT_EQ(count(svg, "class=\"background\""), 2 * 20);
  // Original endpoints are triangles: 6 per side.
  EXPECT_EQ(count(svg, "<polygon"), 12);
}

TEST(RenderMatch, Deterministic) {
  const auto season = testing::six_match_season();
  EXPECT_EQ(render_match(view_match(season, 3), PitchStyle{}),
            render_match(view_match(season, 3), PitchStyle{}));
}

TEST(RenderMatch, GoldenFile) {
  const auto season = testing::six_match_season();
  const auto svg = render_match(view_match(season, 4), PitchStyle{});
  const std::filesystem::path golden = std::filesystem::path(PITCHMOTIF_TEST_DATA) / "golden_match.svg";
  if (std::getenv("PITCHMOTIF_UPDATE_GOLDEN")) {
    std::ofstream(golden, std::ios::binary) << svg;
  }
  std::ifstream in(golden, std::ios::binary);
  ASSERT_TRUE(in) << golden;
  std::stringstream expected;
  expected << in.rdbuf();
  EXPECT_EQ(svg, expected.str());
}

TEST(PitchStyle, Validation) {
  PitchStyle s;
  EXPECT_NO_THROW(s.validate());
  s.pre_color = s.pattern_color;
  EXPECT_THROW(s.validate(), ConfigError);
  s = {};
  s.pixels_per_meter = 0;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(SpreadScatter, SingleRow) {
  const std::vector<SpreadRow> rows{{"A", "m0000", 65, 0, 3.0, 60.0, false}};
  const auto svg = render_spread_scatter(rows);
  EXPECT_EQ(count(svg, "class=\"marker\""), 1);
  EXPECT_NE(svg.find("data-x=\"65\" data-y=\"0\""), std::string::npos);
  EXPECT_THROW(render_spread_scatter({}), EmptyInput);
}

TEST(SpreadScatter, OneMarkerPerRow) {
  const auto rows = spread_rows(testing::six_match_season(), FieldSpec{});
  EXPECT_EQ(count(render_spread_scatter(rows), "class=\"marker\""), 6);
}

TEST(OverlapChart, OneMarkerPerCluster) {
  const auto clusters = cluster_occurrences(testing::six_match_season().result);
  const auto svg = render_overlap_chart(clusters);
  EXPECT_EQ(count(svg, "class=\"marker\""), 2);
  EXPECT_NE(svg.find("data-x=\"5\" data-y=\"90\""), std::string::npos);
  EXPECT_NE(svg.find("data-x=\"3\" data-y=\"100\""), std::string::npos);
  EXPECT_THROW(render_overlap_chart({}), EmptyInput);
}

TEST(Csv, Headers) {
  const auto season = testing::six_match_season();
  const std::vector<TeamSeason> seasons{season};
  std::ostringstream t1, t2, sp;
  const auto rows = table1(seasons);
  write_table1_csv(t1, rows);
  write_table2_csv(t2, table2(seasons));
  write_spreads_csv(sp, spread_rows(season, FieldSpec{}));
  EXPECT_EQ(t1.str().substr(0, t1.str().find('\n')),
            "team_id,n_patterns,mean_passes,std_passes,n_fte,n_team_passes,n_clusters,no_patterns");
  EXPECT_EQ(count(t1.str(), "\n"), 2);
  EXPECT_EQ(t2.str().substr(0, t2.str().find('\n')), "n_involved,n_overlap,count");
  EXPECT_EQ(count(t2.str(), "\n"), 6);
  EXPECT_EQ(sp.str().substr(0, sp.str().find('\n')),
            "team_id,match_id,dx,dy,duration_s,length_m,fte");
  EXPECT_EQ(count(sp.str(), "\n"), 7);
}

TEST(ClustersJson, ContainsProfile) {
  const auto clusters = cluster_occurrences(testing::six_match_season().result);
  const auto json = clusters_to_json(clusters);
  EXPECT_NE(json.find("\"occurrences\": 5"), std::string::npos);
  EXPECT_EQ(json, clusters_to_json(clusters));
}

}  // namespace
}  // namespace pitchmotif
