#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pitchmotif/event_model.hpp"

namespace pitchmotif {

struct SynthParams {
  int n_teams = 2;
  int n_games = 4;
  int possessions_per_game = 5;  // per team
  int min_passes = 9;
  int max_passes = 15;
  int planted_teams = 1;   // the first teams receive a planted template
  int plant_copies = 5;
  double jitter = 0.5;     // max displacement of a planted endpoint, in units
  int template_points = 50;
  // Null season: every possession of a team walks in its own horizontal band,
  // bands at least `null_separation` units apart, and nothing is planted.
  bool null_season = false;
  double null_separation = 12.0;
  double length_m = 105.0;  // raw coordinates are emitted in meters
  double width_m = 68.0;
  std::uint64_t seed = 42;

  void validate() const;
};

struct PlantRecord {
  std::string team_id;
  std::string seq_id;
  int first_pass = 0;  // inclusive indices into the possession's passes
  int last_pass = 0;
};

struct GroundTruth {
  std::uint64_t seed = 0;
  std::vector<PlantRecord> plants;
  // Indices into `plants`; every pair of copies on the same team.
  std::vector<std::pair<int, int>> pairs;
};

struct SynthSeason {
  std::vector<PassEvent> events;
  GroundTruth truth;
};

SynthSeason generate_season(const SynthParams& params);

std::string ground_truth_to_json(const GroundTruth& truth);
GroundTruth ground_truth_from_json(std::string_view text);

}  // namespace pitchmotif
