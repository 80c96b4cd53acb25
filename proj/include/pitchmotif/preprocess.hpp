#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pitchmotif/event_model.hpp"

namespace pitchmotif {

/// (game_id, team_id, period) whose raw coordinates attack toward x = 0.
using FlipKey = std::tuple<std::string, std::string, int>;

struct FieldSpec {
  double length_m = 105.0;
  double width_m = 68.0;
  std::set<FlipKey> flip_rules;

  void validate() const;
  bool flips(const std::string& game_id, const std::string& team_id, int period) const;
};

/// Reads a `game_id,team_id,period` table (header required).
std::set<FlipKey> read_flip_rules(std::istream& in);

/// Maps raw field coordinates onto [0,100] x [0,100] with the team attacking
/// toward x = 100. Coordinates up to 1% outside the declared field are
/// clamped; anything further out raises OutOfFieldError.
PossessionSequence normalize(const PossessionSequence& seq, const FieldSpec& field);

enum class PointKind : std::uint8_t { Original, Virtual };
enum class EndpointRole : std::uint8_t { None, Emission, Reception };

struct SeqPoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  PointKind kind = PointKind::Virtual;
  int source_pass = 0;  // index into DensifiedSequence::passes
  EndpointRole role = EndpointRole::None;
  // Virtual points between a reception and the next emission belong to the
  // upcoming pass but describe the ball being carried by its passer.
  bool carried = false;

  bool operator==(const SeqPoint&) const = default;
};

struct PassSpan {
  std::string passer_id;
  std::string receiver_id;
  int emission_idx = 0;
  int reception_idx = 0;

  bool operator==(const PassSpan&) const = default;
};

struct DensifiedSequence {
  std::string seq_id;
  std::string game_id;
  std::string team_id;
  std::vector<SeqPoint> points;
  std::vector<PassSpan> passes;

  std::size_t n_passes() const { return passes.size(); }
  std::size_t size() const { return points.size(); }

  bool operator==(const DensifiedSequence&) const = default;
};

/// (passer, receiver) attached to a point; carried points report the carrier twice.
std::pair<std::string, std::string> point_players(const DensifiedSequence& seq, std::size_t idx);

/// Inserts equally spaced collinear virtual points so every consecutive gap is
/// strictly shorter than `step`. Reception-to-emission gaps are filled the same
/// way. Timestamps are interpolated linearly.
DensifiedSequence densify(const PossessionSequence& normalized, double step = 2.0);

/// Densifies an already densified sequence; a no-op when every gap is below `step`.
DensifiedSequence densify(const DensifiedSequence& seq, double step = 2.0);

/// Number of equal segments used to bridge a gap of length `d`.
int segments_for_gap(double d, double step);

std::vector<SeqPoint> original_points(const DensifiedSequence& seq);

}  // namespace pitchmotif
