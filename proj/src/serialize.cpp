#include "pitchmotif/serialize.hpp"

#include <json.hpp>

#include "pitchmotif/errors.hpp"

namespace pitchmotif {

namespace {

using nlohmann::json;

constexpr const char* kDiscoverySchema = "pitchmotif.discovery/1";
constexpr const char* kSequencesSchema = "pitchmotif.sequences/1";

json params_json(const MatchParams& p) {
  json j;
  j["local_threshold"] = p.local_threshold;
  j["global_threshold"] = p.global_threshold;
  j["min_positions"] = p.min_positions;
  j["max_outlier_run"] = p.max_outlier_run;
  j["max_outlier_fraction"] = p.max_outlier_fraction;
  j["max_stall"] = p.max_stall;
  j["self_exclusion_band"] = p.self_exclusion_band ? json(*p.self_exclusion_band) : json(nullptr);
  j["dedupe_overlap"] = p.dedupe_overlap;
  return j;
}

MatchParams params_from(const json& j) {
  MatchParams p;
  p.local_threshold = j.at("local_threshold").get<double>();
  p.global_threshold = j.at("global_threshold").get<double>();
  p.min_positions = j.at("min_positions").get<int>();
  p.max_outlier_run = j.at("max_outlier_run").get<int>();
  p.max_outlier_fraction = j.at("max_outlier_fraction").get<double>();
  p.max_stall = j.at("max_stall").get<int>();
  const auto& band = j.at("self_exclusion_band");
  if (!band.is_null()) p.self_exclusion_band = band.get<int>();
  p.dedupe_overlap = j.at("dedupe_overlap").get<double>();
  return p;
}

json segment_json(const Segment& s) {
  return json{{"seq_id", s.seq_id}, {"start_idx", s.start_idx}, {"end_idx", s.end_idx}};
}

Segment segment_from(const json& j) {
  return Segment{j.at("seq_id").get<std::string>(), j.at("start_idx").get<int>(),
                 j.at("end_idx").get<int>()};
}

json match_json(const PatternMatch& m) {
  json j;
  j["reference"] = segment_json(m.reference);
  j["found"] = segment_json(m.found);
  json path = json::array();
  for (const auto& s : m.path) path.push_back(json::array({s.i, s.j}));
  j["path"] = std::move(path);
  j["pair_distances"] = m.pair_distances;
  j["outlier_mask"] = m.outlier_mask;
  j["mean_distance"] = m.mean_distance;
  j["team_id"] = m.team_id;
  j["complete_passes_ref"] = m.complete_passes_ref;
  j["complete_passes_found"] = m.complete_passes_found;
  return j;
}

PatternMatch match_from(const json& j) {
  PatternMatch m;
  m.reference = segment_from(j.at("reference"));
  m.found = segment_from(j.at("found"));
  for (const auto& s : j.at("path")) m.path.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
  m.pair_distances = j.at("pair_distances").get<std::vector<double>>();
  m.outlier_mask = j.at("outlier_mask").get<std::vector<bool>>();
  m.mean_distance = j.at("mean_distance").get<double>();
  m.team_id = j.at("team_id").get<std::string>();
  m.complete_passes_ref = j.at("complete_passes_ref").get<std::vector<int>>();
  m.complete_passes_found = j.at("complete_passes_found").get<std::vector<int>>();
  return m;
}

const char* role_name(EndpointRole r) {
  switch (r) {
    case EndpointRole::Emission: return "emission";
    case EndpointRole::Reception: return "reception";
    case EndpointRole::None: break;
  }
  return "none";
}

EndpointRole role_from(const std::string& s) {
  if (s == "emission") return EndpointRole::Emission;
  if (s == "reception") return EndpointRole::Reception;
  if (s == "none") return EndpointRole::None;
  throw SchemaError(0, "unknown endpoint role " + s);
}

json parse_document(std::string_view text, const char* schema) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw SchemaError(0, std::string("invalid JSON: ") + ex.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != schema) {
    throw SchemaError(0, std::string("expected a ") + schema + " document");
  }
  return doc;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& ex) {
    throw SchemaError(0, ex.what());
  }
}

}  // namespace

std::string params_to_json(const MatchParams& params) { return params_json(params).dump(); }

std::string discovery_to_json(const DiscoveryResult& r) {
  json j;
  j["schema"] = kDiscoverySchema;
  j["team_id"] = r.team_id;
  j["n_sequences"] = r.n_sequences;
  j["n_team_passes"] = r.n_team_passes;
  j["params"] = params_json(r.params);
  j["provenance"] = json{{"dataset_hash", r.dataset_hash}, {"params_hash", r.params_hash}};
  json matches = json::array();
  for (const auto& m : r.matches) matches.push_back(match_json(m));
  j["matches"] = std::move(matches);
  return j.dump(1) + "\n";
}

DiscoveryResult discovery_from_json(std::string_view text) {
  const json doc = parse_document(text, kDiscoverySchema);
  return guarded([&] {
    DiscoveryResult r;
    r.team_id = doc.at("team_id").get<std::string>();
    r.n_sequences = doc.at("n_sequences").get<int>();
    r.n_team_passes = doc.at("n_team_passes").get<int>();
    r.params = params_from(doc.at("params"));
    r.dataset_hash = doc.at("provenance").at("dataset_hash").get<std::string>();
    r.params_hash = doc.at("provenance").at("params_hash").get<std::string>();
    for (const auto& m : doc.at("matches")) r.matches.push_back(match_from(m));
    return r;
  });
}

std::string sequences_to_json(std::span<const DensifiedSequence> seqs) {
  json list = json::array();
  for (const auto& s : seqs) {
    json points = json::array();
    for (const auto& p : s.points) {
      points.push_back(json{{"x", p.x},
                            {"y", p.y},
                            {"t", p.t},
                            {"kind", p.kind == PointKind::Original ? "original" : "virtual"},
                            {"role", role_name(p.role)},
                            {"source_pass", p.source_pass},
                            {"carried", p.carried}});
    }
    json passes = json::array();
    for (const auto& p : s.passes) {
      passes.push_back(json{{"passer_id", p.passer_id},
                            {"receiver_id", p.receiver_id},
                            {"emission_idx", p.emission_idx},
                            {"reception_idx", p.reception_idx}});
    }
    list.push_back(json{{"seq_id", s.seq_id},
                        {"game_id", s.game_id},
                        {"team_id", s.team_id},
                        {"points", std::move(points)},
                        {"passes", std::move(passes)}});
  }
  return json{{"schema", kSequencesSchema}, {"sequences", std::move(list)}}.dump() + "\n";
}

std::vector<DensifiedSequence> sequences_from_json(std::string_view text) {
  const json doc = parse_document(text, kSequencesSchema);
  return guarded([&] {
    std::vector<DensifiedSequence> out;
    for (const auto& js : doc.at("sequences")) {
      DensifiedSequence s;
      s.seq_id = js.at("seq_id").get<std::string>();
      s.game_id = js.at("game_id").get<std::string>();
      s.team_id = js.at("team_id").get<std::string>();
      for (const auto& jp : js.at("points")) {
        SeqPoint p;
        p.x = jp.at("x").get<double>();
        p.y = jp.at("y").get<double>();
        p.t = jp.at("t").get<double>();
        p.kind = jp.at("kind").get<std::string>() == "original" ? PointKind::Original
                                                                 : PointKind::Virtual;
        p.role = role_from(jp.at("role").get<std::string>());
        p.source_pass = jp.at("source_pass").get<int>();
        p.carried = jp.at("carried").get<bool>();
        s.points.push_back(p);
      }
      for (const auto& jp : js.at("passes")) {
        PassSpan p;
        p.passer_id = jp.at("passer_id").get<std::string>();
        p.receiver_id = jp.at("receiver_id").get<std::string>();
        p.emission_idx = jp.at("emission_idx").get<int>();
        p.reception_idx = jp.at("reception_idx").get<int>();
        s.passes.push_back(std::move(p));
      }
      out.push_back(std::move(s));
    }
    return out;
  });
}

}  // namespace pitchmotif
