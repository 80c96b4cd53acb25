#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pitchmotif {

/// One pass as delivered by the event feed.
struct PassEvent {
  std::string game_id;
  std::string team_id;
  int period = 1;
  double t_start = 0.0;  // seconds since kickoff
  double t_end = 0.0;
  double x_start = 0.0;
  double y_start = 0.0;
  double x_end = 0.0;
  double y_end = 0.0;
  std::string passer_id;
  std::optional<std::string> receiver_id;  // absent for incomplete passes
  std::optional<std::string> possession_id;
  bool completed = true;

  bool operator==(const PassEvent&) const = default;
};

/// The completed passes of one team between gaining and losing the ball.
struct PossessionSequence {
  std::string seq_id;
  std::string game_id;
  std::string team_id;
  std::vector<PassEvent> passes;
};

struct SegmentationPolicy {
  double max_gap_seconds = 15.0;
  bool break_on_period = true;
  bool use_provided_possession_id = true;

  void validate() const;
};

enum class EventFormat { Csv, Json };

inline constexpr const char* kEventCsvHeader =
    "game_id,team_id,period,t_start,t_end,x_start,y_start,x_end,y_end,"
    "passer_id,receiver_id,possession_id,completed";

std::vector<PassEvent> parse_events(std::istream& in, EventFormat format);

/// Format is chosen from the extension (.json, anything else is CSV).
std::vector<PassEvent> read_events_file(const std::filesystem::path& path);

void write_events_csv(std::ostream& out, std::span<const PassEvent> events);

/// Splits events into per-team possessions. Games keep their order of first
/// appearance; passes within a game are stably ordered by (period, t_start).
/// Incomplete passes close the running possession and are dropped.
std::vector<PossessionSequence> build_possessions(std::span<const PassEvent> events,
                                                  const SegmentationPolicy& policy);

/// Identifier used for the k-th possession of `team` in `game`.
std::string make_seq_id(const std::string& game_id, const std::string& team_id,
                        std::size_t ordinal);

}  // namespace pitchmotif
