#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <sstream>

#include "pitchmotif/analytics.hpp"
#include "pitchmotif/config.hpp"
#include "pitchmotif/discovery.hpp"
#include "pitchmotif/errors.hpp"
#include "pitchmotif/event_model.hpp"
#include "pitchmotif/pipeline.hpp"
#include "pitchmotif/preprocess.hpp"
#include "pitchmotif/report.hpp"
#include "pitchmotif/serialize.hpp"
#include "pitchmotif/synth.hpp"

namespace py = pybind11;
using namespace pitchmotif;

namespace {

std::vector<PassEvent> parse_events_text(const std::string& text, const std::string& format) {
  std::istringstream in(text);
  if (format == "csv") return parse_events(in, EventFormat::Csv);
  if (format == "json") return parse_events(in, EventFormat::Json);
  throw ConfigError("format must be csv or json");
}

std::string events_to_csv(const std::vector<PassEvent>& events) {
  std::ostringstream out;
  write_events_csv(out, events);
  return out.str();
}

// Captures stdout/stderr of a subcommand as strings.
py::tuple run_command(int (*cmd)(const RunConfig&, std::ostream&, std::ostream&),
                      const RunConfig& config) {
  std::ostringstream out, err;
  int rc = 0;
  {
    py::gil_scoped_release release;
    rc = cmd(config, out, err);
  }
  return py::make_tuple(rc, out.str(), err.str());
}

void bind_errors(py::module_& m) {
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<ValueError>(m, "ValueError", base.ptr());
  py::register_exception<OutOfFieldError>(m, "OutOfFieldError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<DegenerateInput>(m, "DegenerateInput", base.ptr());
  py::register_exception<EmptyInput>(m, "EmptyInput", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());
}

void bind_events(py::module_& m) {
  py::class_<PassEvent>(m, "PassEvent")
      .def(py::init<>())
      .def_readwrite("game_id", &PassEvent::game_id)
      .def_readwrite("team_id", &PassEvent::team_id)
      .def_readwrite("period", &PassEvent::period)
      .def_readwrite("t_start", &PassEvent::t_start)
      .def_readwrite("t_end", &PassEvent::t_end)
      .def_readwrite("x_start", &PassEvent::x_start)
      .def_readwrite("y_start", &PassEvent::y_start)
      .def_readwrite("x_end", &PassEvent::x_end)
      .def_readwrite("y_end", &PassEvent::y_end)
      .def_readwrite("passer_id", &PassEvent::passer_id)
      .def_readwrite("receiver_id", &PassEvent::receiver_id)
      .def_readwrite("possession_id", &PassEvent::possession_id)
      .def_readwrite("completed", &PassEvent::completed)
      .def(py::self == py::self);

  py::class_<PossessionSequence>(m, "PossessionSequence")
      .def(py::init<>())
      .def_readwrite("seq_id", &PossessionSequence::seq_id)
      .def_readwrite("game_id", &PossessionSequence::game_id)
      .def_readwrite("team_id", &PossessionSequence::team_id)
      .def_readwrite("passes", &PossessionSequence::passes);

  py::class_<SegmentationPolicy>(m, "SegmentationPolicy")
      .def(py::init<>())
      .def_readwrite("max_gap_seconds", &SegmentationPolicy::max_gap_seconds)
      .def_readwrite("break_on_period", &SegmentationPolicy::break_on_period)
      .def_readwrite("use_provided_possession_id", &SegmentationPolicy::use_provided_possession_id);

  m.def("parse_events", &parse_events_text, py::arg("text"), py::arg("format") = "csv");
  m.def("read_events_file", &read_events_file, py::arg("path"));
  m.def("events_to_csv", &events_to_csv, py::arg("events"));
  m.def("build_possessions",
        [](const std::vector<PassEvent>& events, const SegmentationPolicy& policy) {
          return build_possessions(events, policy);
        },
        py::arg("events"), py::arg("policy") = SegmentationPolicy{});
}

void bind_preprocess(py::module_& m) {
  py::class_<FieldSpec>(m, "FieldSpec")
      .def(py::init<>())
      .def(py::init([](double length_m, double width_m) {
             FieldSpec f;
             f.length_m = length_m;
             f.width_m = width_m;
             return f;
           }),
           py::arg("length_m"), py::arg("width_m"))
      .def_readwrite("length_m", &FieldSpec::length_m)
      .def_readwrite("width_m", &FieldSpec::width_m)
      .def_readwrite("flip_rules", &FieldSpec::flip_rules);

  py::enum_<PointKind>(m, "PointKind")
      .value("Original", PointKind::Original)
      .value("Virtual", PointKind::Virtual);
  py::enum_<EndpointRole>(m, "EndpointRole")
      .value("None_", EndpointRole::None)
      .value("Emission", EndpointRole::Emission)
      .value("Reception", EndpointRole::Reception);

  py::class_<SeqPoint>(m, "SeqPoint")
      .def(py::init<>())
      .def_readwrite("x", &SeqPoint::x)
      .def_readwrite("y", &SeqPoint::y)
      .def_readwrite("t", &SeqPoint::t)
      .def_readwrite("kind", &SeqPoint::kind)
      .def_readwrite("source_pass", &SeqPoint::source_pass)
      .def_readwrite("role", &SeqPoint::role)
      .def_readwrite("carried", &SeqPoint::carried)
      .def("__repr__", [](const SeqPoint& p) {
        return "SeqPoint(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });

  py::class_<PassSpan>(m, "PassSpan")
      .def(py::init<>())
      .def_readwrite("passer_id", &PassSpan::passer_id)
      .def_readwrite("receiver_id", &PassSpan::receiver_id)
      .def_readwrite("emission_idx", &PassSpan::emission_idx)
      .def_readwrite("reception_idx", &PassSpan::reception_idx);

  py::class_<DensifiedSequence>(m, "DensifiedSequence")
      .def(py::init<>())
      .def_readwrite("seq_id", &DensifiedSequence::seq_id)
      .def_readwrite("game_id", &DensifiedSequence::game_id)
      .def_readwrite("team_id", &DensifiedSequence::team_id)
      .def_readwrite("points", &DensifiedSequence::points)
      .def_readwrite("passes", &DensifiedSequence::passes)
      .def("__len__", &DensifiedSequence::size)
      .def(py::self == py::self);

  m.def("normalize", &normalize, py::arg("seq"), py::arg("field") = FieldSpec{});
  m.def("densify", py::overload_cast<const PossessionSequence&, double>(&densify),
        py::arg("seq"), py::arg("step") = 2.0);
  m.def("densify", py::overload_cast<const DensifiedSequence&, double>(&densify),
        py::arg("seq"), py::arg("step") = 2.0);
  m.def("original_points", &original_points);
}

void bind_discovery(py::module_& m) {
  py::class_<MatchParams>(m, "MatchParams")
      .def(py::init<>())
      .def_readwrite("local_threshold", &MatchParams::local_threshold)
      .def_readwrite("global_threshold", &MatchParams::global_threshold)
      .def_readwrite("min_positions", &MatchParams::min_positions)
      .def_readwrite("max_outlier_run", &MatchParams::max_outlier_run)
      .def_readwrite("max_outlier_fraction", &MatchParams::max_outlier_fraction)
      .def_readwrite("max_stall", &MatchParams::max_stall)
      .def_readwrite("self_exclusion_band", &MatchParams::self_exclusion_band)
      .def_readwrite("dedupe_overlap", &MatchParams::dedupe_overlap)
      .def("validate", &MatchParams::validate);

  py::class_<Segment>(m, "Segment")
      .def(py::init<>())
      .def_readwrite("seq_id", &Segment::seq_id)
      .def_readwrite("start_idx", &Segment::start_idx)
      .def_readwrite("end_idx", &Segment::end_idx)
      .def("__len__", &Segment::size);

  py::class_<PatternMatch>(m, "PatternMatch")
      .def(py::init<>())
      .def_readwrite("reference", &PatternMatch::reference)
      .def_readwrite("found", &PatternMatch::found)
      .def_property_readonly("path",
                             [](const PatternMatch& pm) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& s : pm.path) out.emplace_back(s.i, s.j);
                               return out;
                             })
      .def_readwrite("pair_distances", &PatternMatch::pair_distances)
      .def_readwrite("outlier_mask", &PatternMatch::outlier_mask)
      .def_readwrite("mean_distance", &PatternMatch::mean_distance)
      .def_readwrite("team_id", &PatternMatch::team_id)
      .def_readwrite("complete_passes_ref", &PatternMatch::complete_passes_ref)
      .def_readwrite("complete_passes_found", &PatternMatch::complete_passes_found)
      .def(py::self == py::self);

  py::class_<DiscoveryResult>(m, "DiscoveryResult")
      .def(py::init<>())
      .def_readwrite("team_id", &DiscoveryResult::team_id)
      .def_readwrite("matches", &DiscoveryResult::matches)
      .def_readwrite("params", &DiscoveryResult::params)
      .def_readwrite("dataset_hash", &DiscoveryResult::dataset_hash)
      .def_readwrite("params_hash", &DiscoveryResult::params_hash)
      .def_readwrite("n_sequences", &DiscoveryResult::n_sequences)
      .def_readwrite("n_team_passes", &DiscoveryResult::n_team_passes)
      .def("to_json", &discovery_to_json)
      .def_static("from_json", [](const std::string& s) { return discovery_from_json(s); });

  m.def("find_matches", &find_matches, py::arg("a"), py::arg("b"),
        py::arg("params") = MatchParams{}, py::call_guard<py::gil_scoped_release>());
  m.def("discover_team",
        [](const std::vector<DensifiedSequence>& seqs, const MatchParams& params, int jobs) {
          return discover_team(seqs, params, jobs);
        },
        py::arg("seqs"), py::arg("params") = MatchParams{}, py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("local_distance", &local_distance);
}

void bind_analytics(py::module_& m) {
  py::enum_<Accounting>(m, "Accounting")
      .value("Reference", Accounting::Reference)
      .value("PerOccurrence", Accounting::PerOccurrence);

  py::class_<TeamSeason>(m, "TeamSeason")
      .def(py::init<DiscoveryResult, std::vector<DensifiedSequence>>(), py::arg("result"),
           py::arg("sequences"))
      .def_readonly("result", &TeamSeason::result)
      .def_readonly("sequences", &TeamSeason::sequences);

  py::class_<TeamSeasonStats>(m, "TeamSeasonStats")
      .def_readonly("team_id", &TeamSeasonStats::team_id)
      .def_readonly("n_patterns", &TeamSeasonStats::n_patterns)
      .def_readonly("mean_passes", &TeamSeasonStats::mean_passes)
      .def_readonly("std_passes", &TeamSeasonStats::std_passes)
      .def_readonly("n_fte", &TeamSeasonStats::n_fte)
      .def_readonly("n_team_passes", &TeamSeasonStats::n_team_passes)
      .def_readonly("n_clusters", &TeamSeasonStats::n_clusters)
      .def_readonly("no_patterns", &TeamSeasonStats::no_patterns);

  py::class_<PatternCluster>(m, "PatternCluster")
      .def_readonly("cluster_id", &PatternCluster::cluster_id)
      .def_readonly("team_id", &PatternCluster::team_id)
      .def_readonly("segments", &PatternCluster::segments)
      .def_readonly("match_indices", &PatternCluster::match_indices)
      .def_readonly("occurrences", &PatternCluster::occurrences)
      .def_readonly("overlap_profile", &PatternCluster::overlap_profile)
      .def("overlap_fraction", &PatternCluster::overlap_fraction);

  py::class_<SpreadRow>(m, "SpreadRow")
      .def_readonly("team_id", &SpreadRow::team_id)
      .def_readonly("match_id", &SpreadRow::match_id)
      .def_readonly("dx", &SpreadRow::dx)
      .def_readonly("dy", &SpreadRow::dy)
      .def_readonly("duration_s", &SpreadRow::duration_s)
      .def_readonly("length_m", &SpreadRow::length_m)
      .def_readonly("fte", &SpreadRow::fte);

  m.def("team_stats", &team_stats, py::arg("season"), py::arg("accounting") = Accounting::Reference);
  m.def("table1",
        [](const std::vector<TeamSeason>& s, Accounting a) { return table1(s, a); },
        py::arg("seasons"), py::arg("accounting") = Accounting::Reference);
  m.def("table2", [](const std::vector<TeamSeason>& s) { return table2(s).counts; });
  m.def("regression_r2", [](const std::vector<TeamSeasonStats>& s) { return regression_r2(s); });
  m.def("cluster_occurrences", &cluster_occurrences);
  m.def("spread_rows", &spread_rows, py::arg("season"), py::arg("field") = FieldSpec{},
        py::arg("accounting") = Accounting::Reference);
  m.def("render_match", [](const TeamSeason& season, std::size_t k) {
    PitchStyle style;
    return render_match(view_match(season, k), style);
  });
  m.def("render_spread_scatter",
        [](const std::vector<SpreadRow>& rows) { return render_spread_scatter(rows); });
  m.def("render_overlap_chart",
        [](const std::vector<PatternCluster>& c) { return render_overlap_chart(c); });
}

void bind_pipeline(py::module_& m) {
  py::class_<SynthParams>(m, "SynthParams")
      .def(py::init<>())
      .def_readwrite("n_teams", &SynthParams::n_teams)
      .def_readwrite("n_games", &SynthParams::n_games)
      .def_readwrite("possessions_per_game", &SynthParams::possessions_per_game)
      .def_readwrite("min_passes", &SynthParams::min_passes)
      .def_readwrite("max_passes", &SynthParams::max_passes)
      .def_readwrite("planted_teams", &SynthParams::planted_teams)
      .def_readwrite("plant_copies", &SynthParams::plant_copies)
      .def_readwrite("jitter", &SynthParams::jitter)
      .def_readwrite("template_points", &SynthParams::template_points)
      .def_readwrite("null_season", &SynthParams::null_season)
      .def_readwrite("seed", &SynthParams::seed);

  m.def("generate_season", [](const SynthParams& p) {
    auto season = generate_season(p);
    return py::make_tuple(season.events, ground_truth_to_json(season.truth));
  });

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("inputs", &RunConfig::inputs)
      .def_readwrite("field", &RunConfig::field)
      .def_readwrite("densify_step", &RunConfig::densify_step)
      .def_readwrite("segmentation", &RunConfig::segmentation)
      .def_readwrite("match", &RunConfig::match)
      .def_readwrite("accounting", &RunConfig::accounting)
      .def_readwrite("out_dir", &RunConfig::out_dir)
      .def_readwrite("jobs", &RunConfig::jobs)
      .def_readwrite("team_filter", &RunConfig::team_filter)
      .def_readwrite("synth", &RunConfig::synth);

  m.def("load_config", &load_config);
  m.def("cmd_ingest", [](const RunConfig& c) { return run_command(&cmd_ingest, c); });
  m.def("cmd_discover", [](const RunConfig& c) { return run_command(&cmd_discover, c); });
  m.def("cmd_analyze", [](const RunConfig& c) { return run_command(&cmd_analyze, c); });
  m.def("cmd_report", [](const RunConfig& c) { return run_command(&cmd_report, c); });
  m.def("cmd_synth", [](const RunConfig& c) { return run_command(&cmd_synth, c); });
  m.def("cmd_run", [](const RunConfig& c) { return run_command(&cmd_run, c); });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Recurring pass-pattern mining";
  bind_errors(m);
  bind_events(m);
  bind_preprocess(m);
  bind_discovery(m);
  bind_analytics(m);
  bind_pipeline(m);
}
