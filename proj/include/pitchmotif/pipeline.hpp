#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pitchmotif/config.hpp"

namespace pitchmotif {

/// Exit codes shared by all subcommands.
enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitInvariant = 2 };

/// Ingest and preprocess: team_id -> densified possessions sorted by seq_id.
std::map<std::string, std::vector<DensifiedSequence>> prepare_sequences(const RunConfig& config);

/// Directory name used for a team below the output directory.
std::string team_dir_name(const std::string& team_id);

int cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_discover(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_synth(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace pitchmotif
