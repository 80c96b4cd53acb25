#include <gtest/gtest.h>

#include <random>

#include "pitchmotif/errors.hpp"
#include "pitchmotif/serialize.hpp"
#include "support/analytics_fixture.hpp"
#include "support/fixtures.hpp"

namespace pitchmotif {
namespace {

TEST(Serialize, DiscoveryRoundTrip) {
  std::mt19937_64 rng(3);
  const auto pair = testing::small_pair(rng);
  const std::vector<DensifiedSequence> seqs{pair.a, pair.b};
  const auto r = discover_team(seqs, testing::small_params(), 1);
  ASSERT_FALSE(r.matches.empty());
  const auto text = discovery_to_json(r);
  const auto back = discovery_from_json(text);
  EXPECT_EQ(back, r);
  EXPECT_EQ(discovery_to_json(back), text);
}

TEST(Serialize, FixtureRoundTrip) {
  const auto season = testing::six_match_season();
  EXPECT_EQ(discovery_from_json(discovery_to_json(season.result)), season.result);
}

TEST(Serialize, SequencesRoundTrip) {
  const auto a = testing::dense_chain("g/T/000", {{10.1, 20.7}, {23.3, 21.9}, {30.0, 40.0}});
  const auto b = testing::dense_chain("g/T/001", {{1.0 / 3.0, 50}, {12, 55.5}});
  const std::vector<DensifiedSequence> seqs{a, b};
  const auto text = sequences_to_json(seqs);
  const auto back = sequences_from_json(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], a);
  EXPECT_EQ(back[1], b);
  EXPECT_EQ(sequences_to_json(back), text);
}

TEST(Serialize, MalformedInputThrows) {
  EXPECT_THROW(discovery_from_json("{"), Error);
  EXPECT_THROW(discovery_from_json("{\"team_id\": 3}"), Error);
  EXPECT_THROW(sequences_from_json("[{}]"), Error);
}

TEST(Serialize, ParamsHashTracksParams) {
  MatchParams p;
  const auto h = hash_params(p);
  EXPECT_EQ(h, hash_params(MatchParams{}));
  p.local_threshold = 2.5;
  EXPECT_NE(h, hash_params(p));
}

}  // namespace
}  // namespace pitchmotif
