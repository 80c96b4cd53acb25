#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "pitchmotif/errors.hpp"
#include "pitchmotif/event_model.hpp"
#include "pitchmotif/synth.hpp"

namespace pitchmotif {
namespace {

std::string as_csv(const SynthSeason& s) {
  std::ostringstream out;
  write_events_csv(out, s.events);
  return out.str();
}

TEST(Synth, DeterministicPerSeed) {
  SynthParams p;
  const auto a = generate_season(p);
  const auto b = generate_season(p);
  EXPECT_EQ(as_csv(a), as_csv(b));
  EXPECT_EQ(ground_truth_to_json(a.truth), ground_truth_to_json(b.truth));
  p.seed = 43;
  EXPECT_NE(as_csv(a), as_csv(generate_season(p)));
}

TEST(Synth, PlantsAndPairs) {
  SynthParams p;
  const auto s = generate_season(p);
  ASSERT_EQ(s.truth.plants.size(), 5u);
  EXPECT_EQ(s.truth.pairs.size(), 10u);
  std::set<std::string> hosts;
  for (const auto& pl : s.truth.plants) {
    EXPECT_EQ(pl.team_id, "T01");
    EXPECT_LE(pl.first_pass, pl.last_pass);
    hosts.insert(pl.seq_id);
  }
  EXPECT_EQ(hosts.size(), 5u);

  const auto seqs = build_possessions(s.events, SegmentationPolicy{});
  EXPECT_EQ(seqs.size(), static_cast<std::size_t>(p.n_teams * p.n_games * p.possessions_per_game));
  for (const auto& sq : seqs) {
    EXPECT_GE(sq.passes.size(), static_cast<std::size_t>(p.min_passes)) << sq.seq_id;
  }
}

TEST(Synth, ZeroJitterCopiesAreIdentical) {
  SynthParams p;
  p.jitter = 0.0;
  const auto s = generate_season(p);
  const auto seqs = build_possessions(s.events, SegmentationPolicy{});
  std::map<std::string, const PossessionSequence*> by_id;
  for (const auto& sq : seqs) by_id[sq.seq_id] = &sq;

  const auto& first = s.truth.plants.front();
  const auto& ref = *by_id.at(first.seq_id);
  for (const auto& pl : s.truth.plants) {
    const auto& other = *by_id.at(pl.seq_id);
    ASSERT_EQ(pl.last_pass - pl.first_pass, first.last_pass - first.first_pass);
    for (int k = 0; k <= pl.last_pass - pl.first_pass; ++k) {
      const auto& x = ref.passes[first.first_pass + k];
      const auto& y = other.passes[pl.first_pass + k];
      EXPECT_EQ(x.x_start, y.x_start);
      EXPECT_EQ(x.y_start, y.y_start);
      EXPECT_EQ(x.x_end, y.x_end);
      EXPECT_EQ(x.y_end, y.y_end);
    }
  }
}

TEST(Synth, NullSeasonBands) {
  SynthParams p;
  p.null_season = true;
  p.n_games = 3;
  p.possessions_per_game = 3;
  const auto s = generate_season(p);
  EXPECT_TRUE(s.truth.plants.empty());
  EXPECT_TRUE(s.truth.pairs.empty());
  std::map<std::string, std::set<double>> ys;
  for (const auto& e : s.events) {
    EXPECT_EQ(e.y_start, e.y_end);
    ys[e.team_id + "/" + e.possession_id.value_or("")].insert(e.y_start);
  }
  for (const auto& [key, set] : ys) EXPECT_EQ(set.size(), 1u) << key;

  p.possessions_per_game = 5;
  EXPECT_THROW(generate_season(p), ConfigError);
}

TEST(Synth, RejectsBadParams) {
  SynthParams p;
  p.jitter = 1.5;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.plant_copies = 100;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.max_passes = 3;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(Synth, GroundTruthRoundTrip) {
  const auto s = generate_season(SynthParams{});
  const auto text = ground_truth_to_json(s.truth);
  const auto back = ground_truth_from_json(text);
  EXPECT_EQ(back.seed, s.truth.seed);
  EXPECT_EQ(back.pairs, s.truth.pairs);
  ASSERT_EQ(back.plants.size(), s.truth.plants.size());
  EXPECT_EQ(ground_truth_to_json(back), text);
}

}  // namespace
}  // namespace pitchmotif
