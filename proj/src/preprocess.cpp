#include "pitchmotif/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <string>

#include "pitchmotif/errors.hpp"
#include "util/format.hpp"

namespace pitchmotif {

namespace {

constexpr double kFieldTolerance = 0.01;

double scale_axis(double raw, double extent, const char* axis, const std::string& seq_id) {
  const double slack = kFieldTolerance * extent;
  if (raw < -slack || raw > extent + slack) {
    throw OutOfFieldError(seq_id + ": " + axis + " coordinate " + util::format_double(raw) +
                          " outside field of " + util::format_double(extent) + " m");
  }
  return std::clamp(raw, 0.0, extent) * 100.0 / extent;
}

void append_bridge(std::vector<SeqPoint>& out, const SeqPoint from, const SeqPoint to,
                   double step, int source_pass, bool carried) {
  const double d = std::hypot(to.x - from.x, to.y - from.y);
  const int n = segments_for_gap(d, step);
  for (int k = 1; k < n; ++k) {
    const double f = static_cast<double>(k) / n;
    SeqPoint p;
    p.x = from.x + (to.x - from.x) * f;
    p.y = from.y + (to.y - from.y) * f;
    p.t = from.t + (to.t - from.t) * f;
    p.kind = PointKind::Virtual;
    p.role = EndpointRole::None;
    p.source_pass = source_pass;
    p.carried = carried;
    out.push_back(p);
  }
}

}  // namespace

void FieldSpec::validate() const {
  if (!(length_m > 0.0)) throw ConfigError("field.length_m must be > 0");
  if (!(width_m > 0.0)) throw ConfigError("field.width_m must be > 0");
}

bool FieldSpec::flips(const std::string& game_id, const std::string& team_id, int period) const {
  return flip_rules.count(FlipKey{game_id, team_id, period}) > 0;
}

std::set<FlipKey> read_flip_rules(std::istream& in) {
  std::set<FlipKey> rules;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = util::trim(line);
    if (content.empty()) continue;
    const auto fields = util::split(content, ',');
    if (fields.size() != 3) throw SchemaError(line_no, "flip rules need game_id,team_id,period");
    if (!header) {
      if (util::trim(fields[0]) != "game_id" || util::trim(fields[1]) != "team_id" ||
          util::trim(fields[2]) != "period") {
        throw SchemaError(line_no, "flip rules header must be game_id,team_id,period");
      }
      header = true;
      continue;
    }
    int period = 0;
    try {
      period = std::stoi(std::string(util::trim(fields[2])));
    } catch (const std::exception&) {
      throw ValueError(line_no, "invalid period");
    }
    rules.emplace(std::string(util::trim(fields[0])), std::string(util::trim(fields[1])), period);
  }
  return rules;
}

PossessionSequence normalize(const PossessionSequence& seq, const FieldSpec& field) {
  field.validate();
  PossessionSequence out = seq;
  for (auto& p : out.passes) {
    p.x_start = scale_axis(p.x_start, field.length_m, "x", seq.seq_id);
    p.x_end = scale_axis(p.x_end, field.length_m, "x", seq.seq_id);
    p.y_start = scale_axis(p.y_start, field.width_m, "y", seq.seq_id);
    p.y_end = scale_axis(p.y_end, field.width_m, "y", seq.seq_id);
    if (field.flips(p.game_id, p.team_id, p.period)) {
      p.x_start = 100.0 - p.x_start;
      p.x_end = 100.0 - p.x_end;
      p.y_start = 100.0 - p.y_start;
      p.y_end = 100.0 - p.y_end;
    }
  }
  return out;
}

int segments_for_gap(double d, double step) {
  if (!(d > 0.0)) return 1;
  int n = static_cast<int>(std::floor(d / step)) + 1;
  // Interpolated coordinates carry rounding error; keep a margin below `step`.
  while (d / n > step * (1.0 - 1e-12)) ++n;
  return n;
}

DensifiedSequence densify(const PossessionSequence& normalized, double step) {
  if (!(step > 0.0)) throw ConfigError("densify.step must be > 0");

  DensifiedSequence out;
  out.seq_id = normalized.seq_id;
  out.game_id = normalized.game_id;
  out.team_id = normalized.team_id;

  for (std::size_t k = 0; k < normalized.passes.size(); ++k) {
    const auto& pass = normalized.passes[k];
    const int src = static_cast<int>(k);

    SeqPoint emission;
    emission.x = pass.x_start;
    emission.y = pass.y_start;
    emission.t = pass.t_start;
    emission.kind = PointKind::Original;
    emission.role = EndpointRole::Emission;
    emission.source_pass = src;

    SeqPoint reception = emission;
    reception.x = pass.x_end;
    reception.y = pass.y_end;
    reception.t = pass.t_end;
    reception.role = EndpointRole::Reception;

    if (!out.points.empty()) {
      const SeqPoint prev = out.points.back();
      append_bridge(out.points, prev, emission, step, src, true);
    }

    PassSpan span;
    span.passer_id = pass.passer_id;
    span.receiver_id = pass.receiver_id.value_or("");
    span.emission_idx = static_cast<int>(out.points.size());
    out.points.push_back(emission);
    append_bridge(out.points, emission, reception, step, src, false);
    span.reception_idx = static_cast<int>(out.points.size());
    out.points.push_back(reception);
    out.passes.push_back(std::move(span));
  }
  return out;
}

DensifiedSequence densify(const DensifiedSequence& seq, double step) {
  if (!(step > 0.0)) throw ConfigError("densify.step must be > 0");

  DensifiedSequence out;
  out.seq_id = seq.seq_id;
  out.game_id = seq.game_id;
  out.team_id = seq.team_id;
  out.passes = seq.passes;

  for (std::size_t k = 0; k < seq.points.size(); ++k) {
    const SeqPoint& to = seq.points[k];
    if (k > 0) {
      const bool carried = to.kind == PointKind::Original ? to.role == EndpointRole::Emission
                                                          : to.carried;
      append_bridge(out.points, out.points.back(), to, step, to.source_pass, carried);
    }
    const int idx = static_cast<int>(out.points.size());
    if (to.role == EndpointRole::Emission) out.passes[to.source_pass].emission_idx = idx;
    if (to.role == EndpointRole::Reception) out.passes[to.source_pass].reception_idx = idx;
    out.points.push_back(to);
  }
  return out;
}

std::pair<std::string, std::string> point_players(const DensifiedSequence& seq, std::size_t idx) {
  const SeqPoint& p = seq.points.at(idx);
  const PassSpan& pass = seq.passes.at(static_cast<std::size_t>(p.source_pass));
  if (p.carried) return {pass.passer_id, pass.passer_id};
  return {pass.passer_id, pass.receiver_id};
}

std::vector<SeqPoint> original_points(const DensifiedSequence& seq) {
  std::vector<SeqPoint> out;
  std::copy_if(seq.points.begin(), seq.points.end(), std::back_inserter(out),
               [](const SeqPoint& p) { return p.kind == PointKind::Original; });
  return out;
}

}  // namespace pitchmotif
