#include "pitchmotif/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>

#include "pitchmotif/errors.hpp"
#include "util/format.hpp"

namespace pitchmotif {

namespace {

double parse_double(const std::string& key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(key + ": expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

template <typename Int>
Int parse_int(const std::string& key, std::string_view v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(key + ": expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true/false, got '" + std::string(v) + "'");
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view v) {
  std::filesystem::path p{std::string(v)};
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

using Setter = std::function<void(RunConfig&, const std::string&, std::string_view,
                                   const std::filesystem::path&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["input"] = [](RunConfig& c, const std::string&, std::string_view v, const auto& base) {
      for (auto part : util::split(v, ',')) {
        part = util::trim(part);
        if (!part.empty()) c.inputs.push_back(resolve(base, part));
      }
    };
    t["out"] = [](RunConfig& c, const std::string&, std::string_view v, const auto& base) {
      c.out_dir = resolve(base, v);
    };
    t["jobs"] = [](RunConfig& c, const std::string& k, std::string_view v, const auto&) {
      c.jobs = parse_int<int>(k, v);
    };
    t["seed"] = [](RunConfig& c, const std::string& k, std::string_view v, const auto&) {
      c.synth.seed = parse_int<std::uint64_t>(k, v);
    };
    t["team"] = [](RunConfig& c, const std::string&, std::string_view v, const auto&) {
      c.team_filter = std::string(v);
    };
    t["field.length_m"] = [](RunConfig& c, const std::string& k, std::string_view v, const auto&) {
      c.field.length_m = parse_double(k, v);
    };
    t["field.width_m"] = [](RunConfig& c, const std::string& k, std::string_view v, const auto&) {
      c.field.width_m = parse_double(k, v);
    };
    t["field.flip_rules"] = [](RunConfig& c, const std::string& k, std::string_view v,
                               const auto& base) {
      const auto path = resolve(base, v);
      std::ifstream in(path);
      if (!in) throw ConfigError(k + ": cannot open " + path.string());
      c.field.flip_rules = read_flip_rules(in);
    };
    t["densify.step"] = [](RunConfig& c, const std::string& k, std::string_view v, const auto&) {
      c.densify_step = parse_double(k, v);
    };
    t["segmentation.max_gap_seconds"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                           const auto&) {
      c.segmentation.max_gap_seconds = parse_double(k, v);
    };
    t["segmentation.break_on_period"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                           const auto&) {
      c.segmentation.break_on_period = parse_bool(k, v);
    };
    t["segmentation.use_possession_id"] = [](RunConfig& c, const std::string& k,
                                             std::string_view v, const auto&) {
      c.segmentation.use_provided_possession_id = parse_bool(k, v);
    };
    t["match.local_threshold"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                    const auto&) { c.match.local_threshold = parse_double(k, v); };
    t["match.global_threshold"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                     const auto&) { c.match.global_threshold = parse_double(k, v); };
    t["match.min_positions"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                  const auto&) { c.match.min_positions = parse_int<int>(k, v); };
    t["match.max_outlier_run"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                    const auto&) { c.match.max_outlier_run = parse_int<int>(k, v); };
    t["match.max_outlier_fraction"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                         const auto&) {
      c.match.max_outlier_fraction = parse_double(k, v);
    };
    t["match.max_stall"] = [](RunConfig& c, const std::string& k, std::string_view v,
                              const auto&) { c.match.max_stall = parse_int<int>(k, v); };
    t["match.self_exclusion_band"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                        const auto&) {
      c.match.self_exclusion_band = parse_int<int>(k, v);
    };
    t["match.dedupe_overlap"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                   const auto&) { c.match.dedupe_overlap = parse_double(k, v); };
    t["analytics.accounting"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                   const auto&) {
      if (v == "reference") {
        c.accounting = Accounting::Reference;
      } else if (v == "per_occurrence") {
        c.accounting = Accounting::PerOccurrence;
      } else {
        throw ConfigError(k + ": expected reference or per_occurrence");
      }
    };
    t["synth.teams"] = [](RunConfig& c, const std::string& k, std::string_view v, const auto&) {
      c.synth.n_teams = parse_int<int>(k, v);
    };
    t["synth.games"] = [](RunConfig& c, const std::string& k, std::string_view v, const auto&) {
      c.synth.n_games = parse_int<int>(k, v);
    };
    t["synth.possessions_per_game"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                         const auto&) {
      c.synth.possessions_per_game = parse_int<int>(k, v);
    };
    t["synth.min_passes"] = [](RunConfig& c, const std::string& k, std::string_view v,
                               const auto&) { c.synth.min_passes = parse_int<int>(k, v); };
    t["synth.max_passes"] = [](RunConfig& c, const std::string& k, std::string_view v,
                               const auto&) { c.synth.max_passes = parse_int<int>(k, v); };
    t["synth.planted_teams"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                  const auto&) { c.synth.planted_teams = parse_int<int>(k, v); };
    t["synth.plant_copies"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                 const auto&) { c.synth.plant_copies = parse_int<int>(k, v); };
    t["synth.jitter"] = [](RunConfig& c, const std::string& k, std::string_view v, const auto&) {
      c.synth.jitter = parse_double(k, v);
    };
    t["synth.template_points"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                    const auto&) { c.synth.template_points = parse_int<int>(k, v); };
    t["synth.null_season"] = [](RunConfig& c, const std::string& k, std::string_view v,
                                const auto&) { c.synth.null_season = parse_bool(k, v); };
    return t;
  }();
  return table;
}

}  // namespace

void RunConfig::validate() const {
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (out_dir.empty()) throw ConfigError("out must not be empty");
  for (const auto& p : inputs) {
    if (p.empty()) throw ConfigError("input paths must not be empty");
  }
  if (!(densify_step > 0.0)) throw ConfigError("densify.step must be > 0");
  field.validate();
  segmentation.validate();
  match.validate();
  synth.validate();
}

void apply_config(RunConfig& config, std::istream& in, const std::filesystem::path& base_dir) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = util::trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(util::trim(body.substr(0, eq)));
    const auto value = util::trim(body.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    it->second(config, key, value, base_dir);
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  RunConfig config;
  apply_config(config, in, path.parent_path());
  return config;
}

}  // namespace pitchmotif
