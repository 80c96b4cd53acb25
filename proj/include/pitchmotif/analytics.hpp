#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pitchmotif/discovery.hpp"
#include "pitchmotif/preprocess.hpp"

namespace pitchmotif {

/// Discovery output of one team together with the sequences it indexes into.
struct TeamSeason {
  DiscoveryResult result;
  std::vector<DensifiedSequence> sequences;  // kept sorted by seq_id

  TeamSeason() = default;
  TeamSeason(DiscoveryResult r, std::vector<DensifiedSequence> seqs);

  const DensifiedSequence& sequence(const std::string& seq_id) const;
};

/// A match with its two sequences resolved.
struct MatchView {
  const PatternMatch& match;
  const DensifiedSequence& ref;
  const DensifiedSequence& found;
};

MatchView view_match(const TeamSeason& season, std::size_t match_index);

std::string match_id(std::size_t match_index);

enum class Side { Reference, Found };

/// Which occurrence(s) of a match feed the per-pattern statistics.
enum class Accounting { Reference, PerOccurrence };

int count_passes_in(const PatternMatch& m, Side side = Side::Reference);

inline constexpr double kFinalThirdX = 66.0;

/// Starts outside the attacking third and ends inside it.
bool is_final_third_entry(const MatchView& m, Side side = Side::Reference);

struct Spread {
  double dx = 0.0;  // signed, toward the opponent goal is positive
  double dy = 0.0;  // magnitude
};

Spread spatial_spread(const MatchView& m, Side side = Side::Reference);
double duration_seconds(const MatchView& m, Side side = Side::Reference);
double path_length_units(const MatchView& m, Side side = Side::Reference);

/// Converts a displacement in normalized units to meters on `field`.
double to_meters(double dx_units, double dy_units, const FieldSpec& field);
double path_length_meters(const MatchView& m, const FieldSpec& field, Side side = Side::Reference);

struct PatternCluster {
  int cluster_id = 0;
  std::string team_id;
  std::vector<Segment> segments;  // sorted
  std::vector<int> match_indices;
  int occurrences = 0;
  // k -> share of covered positions that are aligned with exactly k distinct
  // occurrences of the cluster (counting their own).
  std::map<int, double> overlap_profile;

  /// Share of positions aligned with every occurrence.
  double overlap_fraction() const;
};

/// Groups segments linked by a match or by sharing a position of the same
/// sequence. Positions are linked transitively through the warping paths.
std::vector<PatternCluster> cluster_occurrences(const DiscoveryResult& result);

struct PlayerOverlapRecord {
  int n_involved = 0;
  int n_overlap = 0;
};

PlayerOverlapRecord player_overlap(const MatchView& m);

struct TeamSeasonStats {
  std::string team_id;
  int n_patterns = 0;
  double mean_passes = 0.0;
  double std_passes = 0.0;  // population
  int n_fte = 0;
  int n_team_passes = 0;
  int n_clusters = 0;
  bool no_patterns = true;
};

TeamSeasonStats team_stats(const TeamSeason& season,
                           Accounting accounting = Accounting::Reference);

std::vector<TeamSeasonStats> table1(std::span<const TeamSeason> seasons,
                                    Accounting accounting = Accounting::Reference);

/// League-wide counts keyed by (n_involved, n_overlap).
struct PlayerOverlapTable {
  std::map<std::pair<int, int>, int> counts;

  int total() const;
  int at(int n_involved, int n_overlap) const;
};

PlayerOverlapTable table2(std::span<const TeamSeason> seasons);

/// R^2 of the least-squares fit of pattern count on season pass count.
double regression_r2(std::span<const TeamSeasonStats> stats);

struct SpreadRow {
  std::string team_id;
  std::string match_id;
  double dx = 0.0;
  double dy = 0.0;
  double duration_s = 0.0;
  double length_m = 0.0;
  bool fte = false;
};

std::vector<SpreadRow> spread_rows(const TeamSeason& season, const FieldSpec& field,
                                   Accounting accounting = Accounting::Reference);

}  // namespace pitchmotif
