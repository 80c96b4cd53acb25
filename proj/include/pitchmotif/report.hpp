#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "pitchmotif/analytics.hpp"

namespace pitchmotif {

struct PitchStyle {
  FieldSpec field;
  std::string background_color = "#b4b4b4";
  std::string pattern_color = "#1f5fbf";
  std::string pre_color = "#2e9e44";
  std::string post_color = "#d0312d";
  double pixels_per_meter = 6.0;

  void validate() const;
};

/// Reference and found possessions drawn side by side. Matched positions use
/// `pattern_color`; the stretch from each end of the match out to the nearest
/// original pass endpoint uses the pre/post colors. Original endpoints are
/// triangles, virtual points circles.
std::string render_match(const MatchView& m, const PitchStyle& style);

/// One marker per row at (dx, dy). Throws EmptyInput on no rows.
std::string render_spread_scatter(std::span<const SpreadRow> rows);

/// One marker per cluster at (occurrences, overlap percentage). Throws EmptyInput.
std::string render_overlap_chart(std::span<const PatternCluster> clusters);

void write_table1_csv(std::ostream& out, std::span<const TeamSeasonStats> rows);
void write_table2_csv(std::ostream& out, const PlayerOverlapTable& table);
void write_spreads_csv(std::ostream& out, std::span<const SpreadRow> rows);
std::string clusters_to_json(std::span<const PatternCluster> clusters);

}  // namespace pitchmotif
