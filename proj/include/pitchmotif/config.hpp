#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pitchmotif/analytics.hpp"
#include "pitchmotif/discovery.hpp"
#include "pitchmotif/event_model.hpp"
#include "pitchmotif/preprocess.hpp"
#include "pitchmotif/synth.hpp"

namespace pitchmotif {

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  FieldSpec field;
  double densify_step = 2.0;
  SegmentationPolicy segmentation;
  MatchParams match;
  Accounting accounting = Accounting::Reference;
  std::filesystem::path out_dir = "out";
  int jobs = 1;
  std::optional<std::string> team_filter;
  SynthParams synth;

  void validate() const;
};

/// Applies `key = value` lines (blank lines and `#` comments ignored).
/// Unknown keys raise ConfigError. Relative paths resolve against `base_dir`.
void apply_config(RunConfig& config, std::istream& in,
                  const std::filesystem::path& base_dir = {});

RunConfig load_config(const std::filesystem::path& path);

}  // namespace pitchmotif
