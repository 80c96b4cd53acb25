#include <algorithm>
#include <cmath>
#include <sstream>

#include "pitchmotif/discovery.hpp"
#include "pitchmotif/errors.hpp"
#include "pitchmotif/serialize.hpp"
#include "util/format.hpp"

namespace pitchmotif {

void MatchParams::validate() const {
  if (!(local_threshold > 0.0) || !(global_threshold >= local_threshold)) {
    throw ConfigError("require 0 < local_threshold <= global_threshold");
  }
  if (min_positions < 2) throw ConfigError("min_positions must be >= 2");
  if (max_outlier_run < 0) throw ConfigError("max_outlier_run must be >= 0");
  if (!(max_outlier_fraction >= 0.0 && max_outlier_fraction < 1.0)) {
    throw ConfigError("max_outlier_fraction must be in [0, 1)");
  }
  if (max_stall < 0) throw ConfigError("max_stall must be >= 0");
  if (self_exclusion_band && *self_exclusion_band < 1) {
    throw ConfigError("self_exclusion_band must be >= 1");
  }
  if (!(dedupe_overlap > 0.0 && dedupe_overlap <= 1.0)) {
    throw ConfigError("dedupe_overlap must be in (0, 1]");
  }
}

double local_distance(const SeqPoint& p, const SeqPoint& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return std::sqrt(dx * dx + dy * dy);
}

std::int64_t quantize_distance(double d) { return std::llround(d * 1e6); }

std::vector<int> complete_passes_in(const DensifiedSequence& seq, int start, int end) {
  std::vector<int> out;
  for (std::size_t k = 0; k < seq.passes.size(); ++k) {
    const auto& p = seq.passes[k];
    if (p.emission_idx >= start && p.reception_idx <= end) out.push_back(static_cast<int>(k));
  }
  return out;
}

bool complete_pass_filter(const PatternMatch& m, const DensifiedSequence& a,
                          const DensifiedSequence& b) {
  return !complete_passes_in(a, m.reference.start_idx, m.reference.end_idx).empty() &&
         !complete_passes_in(b, m.found.start_idx, m.found.end_idx).empty();
}

bool path_admissible(std::span<const PathStep> path, const DensifiedSequence& a,
                     const DensifiedSequence& b, const MatchParams& params) {
  if (path.empty()) return false;
  const bool self = a.seq_id == b.seq_id;
  const int n = static_cast<int>(a.points.size());
  const int m = static_cast<int>(b.points.size());

  int run = 0;
  int stall = 0;
  int outliers = 0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto [i, j] = path[k];
    if (i < 0 || j < 0 || i >= n || j >= m) return false;
    if (self && j - i < params.exclusion_band()) return false;
    if (k > 0) {
      const int di = i - path[k - 1].i;
      const int dj = j - path[k - 1].j;
      if (di < 0 || dj < 0 || di > 1 || dj > 1 || di + dj == 0) return false;
      stall = (di == 1 && dj == 1) ? 0 : stall + 1;
      if (stall > params.max_stall) return false;
    }
    const double d = local_distance(a.points[i], b.points[j]);
    if (d > params.global_threshold) return false;
    if (d > params.local_threshold) {
      if (k == 0 || k + 1 == path.size()) return false;
      ++outliers;
      if (++run > params.max_outlier_run) return false;
    } else {
      run = 0;
    }
  }
  return outliers <= params.max_outlier_fraction * static_cast<double>(path.size());
}

void check_match_invariants(const PatternMatch& m, const DensifiedSequence& a,
                            const DensifiedSequence& b, const MatchParams& params) {
  auto fail = [&](const std::string& what) {
    throw InvariantViolation("match " + m.reference.seq_id + "[" +
                             std::to_string(m.reference.start_idx) + "] ~ " + m.found.seq_id +
                             "[" + std::to_string(m.found.start_idx) + "]: " + what);
  };
  if (m.reference.seq_id != a.seq_id || m.found.seq_id != b.seq_id) fail("sequence mismatch");
  if (m.path.empty()) fail("empty path");
  if (m.pair_distances.size() != m.path.size() || m.outlier_mask.size() != m.path.size()) {
    fail("path annotations misaligned");
  }
  if (m.path.front() != PathStep{m.reference.start_idx, m.found.start_idx} ||
      m.path.back() != PathStep{m.reference.end_idx, m.found.end_idx}) {
    fail("path does not span its segments");
  }
  if (m.reference.size() < params.min_positions || m.found.size() < params.min_positions) {
    fail("segment shorter than min_positions");
  }
  if (!path_admissible(m.path, a, b, params)) fail("path not admissible");
  for (std::size_t k = 0; k < m.path.size(); ++k) {
    const double d = local_distance(a.points[m.path[k].i], b.points[m.path[k].j]);
    if (d != m.pair_distances[k]) fail("pair distance mismatch");
    if (m.outlier_mask[k] != (d > params.local_threshold)) fail("outlier mask mismatch");
  }
  if (a.seq_id == b.seq_id && m.reference.end_idx >= m.found.start_idx) {
    fail("self match segments overlap");
  }
  if (m.complete_passes_ref.empty() || m.complete_passes_found.empty()) {
    fail("missing complete pass");
  }
  if (m.complete_passes_ref != complete_passes_in(a, m.reference.start_idx, m.reference.end_idx) ||
      m.complete_passes_found != complete_passes_in(b, m.found.start_idx, m.found.end_idx)) {
    fail("complete pass lists inconsistent");
  }
}

bool canonical_less(const PatternMatch& lhs, const PatternMatch& rhs) {
  return std::tie(lhs.reference.seq_id, lhs.reference.start_idx, lhs.found.seq_id,
                  lhs.found.start_idx, lhs.reference.end_idx, lhs.found.end_idx) <
         std::tie(rhs.reference.seq_id, rhs.reference.start_idx, rhs.found.seq_id,
                  rhs.found.start_idx, rhs.reference.end_idx, rhs.found.end_idx);
}

std::string hash_params(const MatchParams& params) {
  return util::fnv1a_hex(params_to_json(params));
}

std::string hash_sequences(std::span<const DensifiedSequence> seqs) {
  std::vector<DensifiedSequence> sorted(seqs.begin(), seqs.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& l, const auto& r) { return l.seq_id < r.seq_id; });
  return util::fnv1a_hex(sequences_to_json(sorted));
}

}  // namespace pitchmotif
