#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pitchmotif/config.hpp"
#include "pitchmotif/errors.hpp"
#include "pitchmotif/pipeline.hpp"

namespace {

struct Flags {
  std::string config;
  std::vector<std::string> inputs;
  std::optional<std::string> out;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> team;
  std::optional<double> local_threshold;
  std::optional<double> global_threshold;
  std::optional<int> min_positions;
  std::optional<int> max_outlier_run;
  std::optional<double> max_outlier_fraction;
  std::optional<int> max_stall;
  std::optional<std::string> accounting;
  std::optional<int> synth_teams;
  std::optional<int> synth_games;
  std::optional<int> synth_possessions;
  std::optional<int> synth_copies;
  std::optional<double> synth_jitter;
  bool null_season = false;
};

pitchmotif::RunConfig build_config(const Flags& f) {
  pitchmotif::RunConfig c;
  if (!f.config.empty()) c = pitchmotif::load_config(f.config);
  for (const auto& in : f.inputs) c.inputs.emplace_back(in);
  if (f.out) c.out_dir = *f.out;
  if (f.jobs) c.jobs = *f.jobs;
  if (f.seed) c.synth.seed = *f.seed;
  if (f.team) c.team_filter = *f.team;
  if (f.local_threshold) c.match.local_threshold = *f.local_threshold;
  if (f.global_threshold) c.match.global_threshold = *f.global_threshold;
  if (f.min_positions) c.match.min_positions = *f.min_positions;
  if (f.max_outlier_run) c.match.max_outlier_run = *f.max_outlier_run;
  if (f.max_outlier_fraction) c.match.max_outlier_fraction = *f.max_outlier_fraction;
  if (f.max_stall) c.match.max_stall = *f.max_stall;
  if (f.accounting) {
    c.accounting = *f.accounting == "per_occurrence" ? pitchmotif::Accounting::PerOccurrence
                                                     : pitchmotif::Accounting::Reference;
  }
  if (f.synth_teams) c.synth.n_teams = *f.synth_teams;
  if (f.synth_games) c.synth.n_games = *f.synth_games;
  if (f.synth_possessions) c.synth.possessions_per_game = *f.synth_possessions;
  if (f.synth_copies) c.synth.plant_copies = *f.synth_copies;
  if (f.synth_jitter) c.synth.jitter = *f.synth_jitter;
  if (f.null_season) c.synth.null_season = true;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recurring pass-pattern mining for football event data"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config, "flat key = value config file");
  app.add_option("-i,--input", f.inputs, "event file (.csv or .json); repeatable");
  app.add_option("--out", f.out, "output directory");
  app.add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "seed for synth");
  app.add_option("--team", f.team, "only process this team");
  app.add_option("--local-threshold", f.local_threshold);
  app.add_option("--global-threshold", f.global_threshold);
  app.add_option("--min-positions", f.min_positions);
  app.add_option("--max-outlier-run", f.max_outlier_run);
  app.add_option("--max-outlier-fraction", f.max_outlier_fraction);
  app.add_option("--max-stall", f.max_stall);
  app.add_option("--accounting", f.accounting, "reference or per_occurrence")
      ->check(CLI::IsMember({"reference", "per_occurrence"}));

  auto* ingest = app.add_subcommand("ingest", "parse, segment and densify possessions");
  auto* discover = app.add_subcommand("discover", "mine recurring patterns per team");
  auto* analyze = app.add_subcommand("analyze", "season tables from discovery output");
  auto* report = app.add_subcommand("report", "SVG drawings and charts");
  auto* synth = app.add_subcommand("synth", "write a synthetic season with planted patterns");
  auto* run = app.add_subcommand("run", "discover, analyze and report");
  synth->add_option("--teams", f.synth_teams);
  synth->add_option("--games", f.synth_games);
  synth->add_option("--possessions", f.synth_possessions, "possessions per team and game");
  synth->add_option("--copies", f.synth_copies, "planted copies per planted team");
  synth->add_option("--jitter", f.synth_jitter);
  synth->add_flag("--null-season", f.null_season);

  CLI11_PARSE(app, argc, argv);

  pitchmotif::RunConfig config;
  try {
    config = build_config(f);
  } catch (const pitchmotif::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pitchmotif::kExitInputError;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (ingest->parsed()) return pitchmotif::cmd_ingest(config, out, err);
  if (discover->parsed()) return pitchmotif::cmd_discover(config, out, err);
  if (analyze->parsed()) return pitchmotif::cmd_analyze(config, out, err);
  if (report->parsed()) return pitchmotif::cmd_report(config, out, err);
  if (synth->parsed()) return pitchmotif::cmd_synth(config, out, err);
  if (run->parsed()) return pitchmotif::cmd_run(config, out, err);
  return pitchmotif::kExitInputError;
}
