#include "pitchmotif/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pitchmotif/errors.hpp"
#include "pitchmotif/report.hpp"
#include "pitchmotif/serialize.hpp"

namespace pitchmotif {

namespace fs = std::filesystem;

namespace {

constexpr const char* kLeagueDir = "league";
constexpr const char* kSynthDir = "synth";

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs `body`, mapping failures onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

struct TeamFiles {
  TeamSeason season;
  fs::path dir;
};

// Loads every team directory holding discovery output, sorted by team id.
std::vector<TeamFiles> load_results(const RunConfig& config) {
  std::vector<TeamFiles> teams;
  if (fs::is_directory(config.out_dir)) {
    for (const auto& entry : fs::directory_iterator(config.out_dir)) {
      if (!entry.is_directory()) continue;
      const auto name = entry.path().filename().string();
      if (name == kLeagueDir || name == kSynthDir) continue;
      const auto result_path = entry.path() / "discovery.json";
      const auto seq_path = entry.path() / "sequences.json";
      if (!fs::exists(result_path)) continue;
      auto result = discovery_from_json(read_file(result_path));
      if (config.team_filter && result.team_id != *config.team_filter) continue;
      auto seqs = sequences_from_json(read_file(seq_path));
      teams.push_back({TeamSeason(std::move(result), std::move(seqs)), entry.path()});
    }
  }
  if (teams.empty()) {
    throw Error("no discovery results under " + config.out_dir.string() + "; run discover first");
  }
  std::sort(teams.begin(), teams.end(), [](const TeamFiles& a, const TeamFiles& b) {
    return a.season.result.team_id < b.season.result.team_id;
  });
  return teams;
}

std::vector<TeamSeason> seasons_of(std::vector<TeamFiles>& teams) {
  std::vector<TeamSeason> out;
  for (auto& t : teams) out.push_back(t.season);
  return out;
}

}  // namespace

std::string team_dir_name(const std::string& team_id) {
  std::string out = team_id;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  if (out.empty() || out == "." || out == ".." || out == kLeagueDir || out == kSynthDir) {
    out = "team_" + out;
  }
  return out;
}

std::map<std::string, std::vector<DensifiedSequence>> prepare_sequences(const RunConfig& config) {
  config.validate();
  if (config.inputs.empty()) throw ConfigError("no input files given");
  std::vector<PassEvent> events;
  for (const auto& path : config.inputs) {
    auto part = read_events_file(path);
    events.insert(events.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
  }
  std::map<std::string, std::vector<DensifiedSequence>> by_team;
  for (const auto& seq : build_possessions(events, config.segmentation)) {
    if (config.team_filter && seq.team_id != *config.team_filter) continue;
    by_team[seq.team_id].push_back(densify(normalize(seq, config.field), config.densify_step));
  }
  for (auto& [team, seqs] : by_team) {
    std::sort(seqs.begin(), seqs.end(),
              [](const auto& a, const auto& b) { return a.seq_id < b.seq_id; });
  }
  if (config.team_filter && by_team.empty()) {
    throw Error("team " + *config.team_filter + " not found in input");
  }
  return by_team;
}

int cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto teams = prepare_sequences(config);
    for (const auto& [team, seqs] : teams) {
      write_file(config.out_dir / team_dir_name(team) / "sequences.json", sequences_to_json(seqs));
      std::size_t passes = 0;
      for (const auto& s : seqs) passes += s.n_passes();
      out << team << ": " << seqs.size() << " sequences, " << passes << " passes\n";
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_discover(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto teams = prepare_sequences(config);
    for (const auto& [team, seqs] : teams) {
      const auto result = discover_team(seqs, config.match, config.jobs);
      const TeamSeason season(result, seqs);
      for (const auto& m : result.matches) {
        check_match_invariants(m, season.sequence(m.reference.seq_id),
                               season.sequence(m.found.seq_id), config.match);
      }
      const auto dir = config.out_dir / team_dir_name(team);
      write_file(dir / "sequences.json", sequences_to_json(seqs));
      write_file(dir / "discovery.json", discovery_to_json(result));
      out << team << ": " << result.matches.size() << " patterns\n";
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    auto teams = load_results(config);
    const auto seasons = seasons_of(teams);
    const auto rows = table1(seasons, config.accounting);

    std::vector<SpreadRow> spreads;
    std::vector<PatternCluster> clusters;
    for (std::size_t k = 0; k < teams.size(); ++k) {
      std::ostringstream t1;
      write_table1_csv(t1, std::span(&rows[k], 1));
      write_file(teams[k].dir / "table1.csv", t1.str());
      const auto s = spread_rows(seasons[k], config.field, config.accounting);
      spreads.insert(spreads.end(), s.begin(), s.end());
      const auto c = cluster_occurrences(seasons[k].result);
      clusters.insert(clusters.end(), c.begin(), c.end());
    }

    const auto league = config.out_dir / kLeagueDir;
    std::ostringstream t1, t2, sp;
    write_table1_csv(t1, rows);
    write_table2_csv(t2, table2(seasons));
    write_spreads_csv(sp, spreads);
    write_file(league / "table1.csv", t1.str());
    write_file(league / "table2.csv", t2.str());
    write_file(league / "spreads.csv", sp.str());
    write_file(league / "clusters.json", clusters_to_json(clusters));

    for (const auto& r : rows) {
      out << r.team_id << ": " << r.n_patterns << " patterns, " << r.n_clusters << " clusters, "
          << r.n_fte << " final-third entries\n";
    }
    if (rows.size() >= 2) {
      try {
        out << "R^2 (patterns ~ passes): " << regression_r2(rows) << '\n';
      } catch (const DegenerateInput& e) {
        out << "R^2 unavailable: " << e.what() << '\n';
      }
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    auto teams = load_results(config);
    PitchStyle style;
    style.field = config.field;

    std::vector<SpreadRow> spreads;
    std::vector<PatternCluster> clusters;
    std::size_t n_svg = 0;
    for (auto& t : teams) {
      const auto& season = t.season;
      const auto dir = t.dir / "matches";
      fs::remove_all(dir);
      for (std::size_t k = 0; k < season.result.matches.size(); ++k) {
        write_file(dir / (match_id(k) + ".svg"), render_match(view_match(season, k), style));
        ++n_svg;
      }
      const auto s = spread_rows(season, config.field, config.accounting);
      spreads.insert(spreads.end(), s.begin(), s.end());
      const auto c = cluster_occurrences(season.result);
      clusters.insert(clusters.end(), c.begin(), c.end());
    }

    const auto league = config.out_dir / kLeagueDir;
    fs::remove(league / "spreads.svg");
    fs::remove(league / "overlaps.svg");
    if (spreads.empty()) {
      out << "no patterns found; nothing to plot\n";
      return static_cast<int>(kExitOk);
    }
    write_file(league / "spreads.svg", render_spread_scatter(spreads));
    write_file(league / "overlaps.svg", render_overlap_chart(clusters));
    out << "wrote " << n_svg << " match drawings\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_synth(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const auto season = generate_season(config.synth);
    std::ostringstream csv;
    write_events_csv(csv, season.events);
    const auto dir = config.out_dir / kSynthDir;
    write_file(dir / "season.csv", csv.str());
    write_file(dir / "ground_truth.json", ground_truth_to_json(season.truth));
    out << "wrote " << season.events.size() << " passes and " << season.truth.plants.size()
        << " planted copies to " << dir.string() << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  for (auto stage : {cmd_discover, cmd_analyze, cmd_report}) {
    const int rc = stage(config, out, err);
    if (rc != kExitOk) return rc;
  }
  return kExitOk;
}

}  // namespace pitchmotif
