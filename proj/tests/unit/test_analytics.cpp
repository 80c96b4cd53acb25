#include <gtest/gtest.h>

#include <cmath>

#include "pitchmotif/analytics.hpp"
#include "pitchmotif/errors.hpp"
#include "support/analytics_fixture.hpp"

namespace pitchmotif {
namespace {

using testing::PassSpec;
using testing::shifted_match;
using testing::six_match_season;
using testing::straight_seq;

TeamSeason single_match(DensifiedSequence a, DensifiedSequence b, int len) {
  DiscoveryResult r;
  r.team_id = "T";
  r.matches.push_back(shifted_match(a, 0, b, 0, len));
  return TeamSeason(std::move(r), {std::move(a), std::move(b)});
}

TeamSeason run_from(double x0, double x1) {
  return single_match(straight_seq("a", 10, x0, 50, x1, 50, 0, 1, {{0, 9, "p1", "p2"}}),
                      straight_seq("b", 10, x0, 51, x1, 51, 0, 1, {{0, 9, "p1", "p2"}}), 10);
}

TEST(FinalThirdEntry, Examples) {
  EXPECT_TRUE(is_final_third_entry(view_match(run_from(50, 70), 0)));
  EXPECT_FALSE(is_final_third_entry(view_match(run_from(70, 90), 0)));
  EXPECT_FALSE(is_final_third_entry(view_match(run_from(50, 60), 0)));
  EXPECT_TRUE(is_final_third_entry(view_match(run_from(65.9, 66), 0)));
}

TEST(SpatialSpread, Examples) {
  const auto season = six_match_season();
  const auto straight = spatial_spread(view_match(season, 1));
  EXPECT_EQ(straight.dx, 65.0);
  EXPECT_EQ(straight.dy, 0.0);
  const auto cross = spatial_spread(view_match(season, 0));
  EXPECT_EQ(cross.dx, 5.0);
  EXPECT_EQ(cross.dy, 80.0);
  const auto back = spatial_spread(view_match(run_from(70, 50), 0));
  EXPECT_EQ(back.dx, -20.0);
}

TEST(SpatialSpread, MirrorNegatesDx) {
  auto a = straight_seq("a", 10, 20, 30, 40, 60, 0, 1, {{0, 9, "p1", "p2"}});
  auto b = straight_seq("b", 10, 20, 31, 40, 61, 0, 1, {{0, 9, "p1", "p2"}});
  auto flip = [](DensifiedSequence s) {
    for (auto& p : s.points) {
      p.x = 100.0 - p.x;
      p.y = 100.0 - p.y;
    }
    return s;
  };
  const auto plain = spatial_spread(view_match(single_match(a, b, 10), 0));
  const auto mirrored = spatial_spread(view_match(single_match(flip(a), flip(b), 10), 0));
  EXPECT_NEAR(mirrored.dx, -plain.dx, 1e-12);
  EXPECT_NEAR(mirrored.dy, plain.dy, 1e-12);
}

TEST(DurationAndLength, Examples) {
  const auto season = six_match_season();
  EXPECT_NEAR(duration_seconds(view_match(season, 1)), 4.2, 1e-9);

  const auto s = single_match(straight_seq("a", 41, 0, 50, 60, 50, 0, 1, {{0, 40, "p1", "p2"}}),
                              straight_seq("b", 41, 0, 51, 60, 51, 0, 1, {{0, 40, "p1", "p2"}}), 41);
  EXPECT_NEAR(path_length_units(view_match(s, 0)), 60.0, 1e-9);
  EXPECT_NEAR(to_meters(60.0, 0.0, FieldSpec{}), 63.0, 1e-9);
  EXPECT_NEAR(path_length_meters(view_match(s, 0), FieldSpec{}), 63.0, 1e-9);
  EXPECT_NEAR(to_meters(0.0, 50.0, FieldSpec{}), 34.0, 1e-9);
}

TEST(CountPasses, ReferenceSide) {
  const auto season = six_match_season();
  EXPECT_EQ(count_passes_in(season.result.matches[0]), 1);
  EXPECT_EQ(count_passes_in(season.result.matches[3], Side::Found), 2);
  EXPECT_EQ(count_passes_in(season.result.matches[4]), 2);
}

TEST(TeamStats, SixMatchFixture) {
  const auto st = team_stats(six_match_season());
  EXPECT_EQ(st.team_id, "T");
  EXPECT_EQ(st.n_patterns, 6);
  EXPECT_NEAR(st.mean_passes, 4.0 / 3.0, 1e-9);
  EXPECT_NEAR(st.std_passes, std::sqrt(2.0) / 3.0, 1e-9);
  EXPECT_EQ(st.n_fte, 3);
  EXPECT_EQ(st.n_team_passes, 11);
  EXPECT_EQ(st.n_clusters, 2);
  EXPECT_FALSE(st.no_patterns);
}

TEST(TeamStats, PerOccurrenceAccounting) {
  const auto st = team_stats(six_match_season(), Accounting::PerOccurrence);
  // Found sides: 0, 1, 1, 2, 2, 1.
  EXPECT_NEAR(st.mean_passes, 15.0 / 12.0, 1e-9);
  EXPECT_EQ(st.n_fte, 7);
}

TEST(TeamStats, EmptyTeam) {
  DiscoveryResult r;
  r.team_id = "Z";
  r.n_team_passes = 40;
  const auto st = team_stats(TeamSeason(r, {}));
  EXPECT_EQ(st.n_patterns, 0);
  EXPECT_EQ(st.mean_passes, 0.0);
  EXPECT_EQ(st.std_passes, 0.0);
  EXPECT_EQ(st.n_fte, 0);
  EXPECT_TRUE(st.no_patterns);
}

TEST(Clusters, FiveOccurrencesNinetyPercent) {
  const auto clusters = cluster_occurrences(six_match_season().result);
  ASSERT_EQ(clusters.size(), 2u);
  const auto& big = clusters[0];
  EXPECT_EQ(big.cluster_id, 0);
  EXPECT_EQ(big.occurrences, 5);
  EXPECT_EQ(big.match_indices, (std::vector<int>{0, 1, 2, 3}));
  ASSERT_EQ(big.overlap_profile.size(), 2u);
  EXPECT_NEAR(big.overlap_profile.at(5), 0.9, 1e-9);
  EXPECT_NEAR(big.overlap_profile.at(4), 0.1, 1e-9);
  EXPECT_NEAR(big.overlap_fraction(), 0.9, 1e-9);

  const auto& chain = clusters[1];
  EXPECT_EQ(chain.occurrences, 3);
  EXPECT_EQ(chain.segments.size(), 4u);
  EXPECT_NEAR(chain.overlap_profile.at(3), 1.0, 1e-9);
}

TEST(Clusters, SingleMatch) {
  const auto s = run_from(10, 30);
  const auto clusters = cluster_occurrences(s.result);
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].occurrences, 2);
  EXPECT_NEAR(clusters[0].overlap_profile.at(2), 1.0, 1e-12);
}

TEST(Clusters, ProfilesSumToOne) {
  for (const auto& c : cluster_occurrences(six_match_season().result)) {
    double total = 0.0;
    for (const auto& [k, f] : c.overlap_profile) total += f;
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(PlayerOverlap, Examples) {
  auto one = [](const std::string& id, std::vector<PassSpec> passes) {
    return straight_seq(id, 10, 10, 10, 20, 10, 0, 1, passes);
  };
  auto record = [](const DensifiedSequence& a, const DensifiedSequence& b) {
    return player_overlap(view_match(single_match(a, b, 10), 0));
  };
  const auto r1 = record(one("a", {{0, 9, "p7", "p9"}}), one("b", {{0, 9, "p7", "p9"}}));
  EXPECT_EQ(r1.n_involved, 2);
  EXPECT_EQ(r1.n_overlap, 2);
  const auto r2 = record(one("a", {{0, 9, "p7", "p9"}}), one("b", {{0, 9, "p3", "p5"}}));
  EXPECT_EQ(r2.n_involved, 2);
  EXPECT_EQ(r2.n_overlap, 0);
  const auto r3 = record(one("a", {{0, 4, "p1", "p2"}, {5, 9, "p3", "p4"}}),
                         one("b", {{0, 4, "p1", "p2"}, {5, 9, "p5", "p6"}}));
  EXPECT_EQ(r3.n_involved, 4);
  EXPECT_EQ(r3.n_overlap, 2);
  const auto r4 = record(one("a", {{0, 4, "p1", "p2"}, {5, 9, "p5", "p6"}}),
                         one("b", {{0, 4, "p1", "p2"}, {5, 9, "p3", "p4"}}));
  EXPECT_EQ(r4.n_involved, r3.n_involved);
  EXPECT_EQ(r4.n_overlap, r3.n_overlap);
}

TEST(Table2, SixMatchTally) {
  const std::vector<TeamSeason> seasons{six_match_season()};
  const auto t = table2(seasons);
  EXPECT_EQ(t.total(), 6);
  EXPECT_EQ(t.at(2, 0), 2);
  EXPECT_EQ(t.at(2, 2), 1);
  EXPECT_EQ(t.at(4, 2), 1);
  EXPECT_EQ(t.at(3, 3), 1);
  EXPECT_EQ(t.at(3, 0), 1);
  EXPECT_EQ(t.at(1, 1), 0);
}

TEST(Regression, Examples) {
  std::vector<TeamSeasonStats> s(2);
  s[0].n_patterns = 10;
  s[0].n_team_passes = 1000;
  s[1].n_patterns = 20;
  s[1].n_team_passes = 2000;
  EXPECT_NEAR(regression_r2(s), 1.0, 1e-12);

  s.push_back({});
  s[2].n_patterns = 10;
  s[2].n_team_passes = 3000;
  EXPECT_NEAR(regression_r2(s), 0.0, 1e-12);

  for (auto& t : s) t.n_team_passes = 500;
  EXPECT_THROW(regression_r2(s), DegenerateInput);
  EXPECT_THROW(regression_r2(std::span<const TeamSeasonStats>(s.data(), 1)), DegenerateInput);
}

TEST(Table1, SortedByTeam) {
  auto a = six_match_season();
  DiscoveryResult r;
  r.team_id = "A";
  const std::vector<TeamSeason> seasons{a, TeamSeason(r, {})};
  const auto rows = table1(seasons);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].team_id, "A");
  EXPECT_TRUE(rows[0].no_patterns);
  EXPECT_EQ(rows[1].team_id, "T");
}

TEST(SpreadRows, OnePerMatch) {
  const auto rows = spread_rows(six_match_season(), FieldSpec{});
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[1].match_id, "m0001");
  EXPECT_EQ(rows[1].dx, 65.0);
  EXPECT_TRUE(rows[1].fte);
  EXPECT_NEAR(rows[1].length_m, 65.0 * 1.05, 1e-9);
  EXPECT_EQ(spread_rows(six_match_season(), FieldSpec{}, Accounting::PerOccurrence).size(), 12u);
}

}  // namespace
}  // namespace pitchmotif
