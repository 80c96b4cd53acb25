#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pitchmotif/preprocess.hpp"

namespace pitchmotif {

/// Gates for the subsequence warping search.
///
/// Aligned pairs closer than `local_threshold` are regular matches. Pairs in
/// (local_threshold, global_threshold] may only be crossed as outliers, in runs
/// of at most `max_outlier_run` and making up at most `max_outlier_fraction`
/// of the path. Pairs beyond `global_threshold` are never aligned.
struct MatchParams {
  double local_threshold = 2.0;
  double global_threshold = 10.0;
  int min_positions = 41;
  int max_outlier_run = 2;
  double max_outlier_fraction = 0.10;
  int max_stall = 3;
  std::optional<int> self_exclusion_band;  // defaults to min_positions
  double dedupe_overlap = 0.8;

  int exclusion_band() const { return self_exclusion_band.value_or(min_positions); }
  void validate() const;

  bool operator==(const MatchParams&) const = default;
};

struct Segment {
  std::string seq_id;
  int start_idx = 0;
  int end_idx = 0;  // inclusive

  int size() const { return end_idx - start_idx + 1; }
  bool operator==(const Segment&) const = default;
};

struct PathStep {
  int i = 0;  // index into the reference sequence
  int j = 0;  // index into the found sequence

  bool operator==(const PathStep&) const = default;
};

struct PatternMatch {
  Segment reference;
  Segment found;
  std::vector<PathStep> path;
  std::vector<double> pair_distances;
  std::vector<bool> outlier_mask;
  double mean_distance = 0.0;
  std::string team_id;
  std::vector<int> complete_passes_ref;
  std::vector<int> complete_passes_found;

  bool operator==(const PatternMatch&) const = default;
};

struct DiscoveryResult {
  std::string team_id;
  std::vector<PatternMatch> matches;
  MatchParams params;
  std::string dataset_hash;
  std::string params_hash;
  int n_sequences = 0;
  int n_team_passes = 0;

  bool operator==(const DiscoveryResult&) const = default;
};

double local_distance(const SeqPoint& p, const SeqPoint& q);

/// Fixed-point accumulation unit for path costs (1e-6 field units). Ranking
/// on integer sums keeps tie-breaking exact and order independent.
std::int64_t quantize_distance(double d);

/// Indices of passes whose emission and reception both lie in [start, end].
std::vector<int> complete_passes_in(const DensifiedSequence& seq, int start, int end);

bool complete_pass_filter(const PatternMatch& m, const DensifiedSequence& a,
                          const DensifiedSequence& b);

/// True when `path` is a structurally admissible warping path between `a`
/// and `b`: unit monotone steps, regular end cells, no walls, bounded outlier
/// runs and fraction, bounded stalls, and outside the self-exclusion band when
/// `a` and `b` are the same sequence. Length and pass filters are not checked.
bool path_admissible(std::span<const PathStep> path, const DensifiedSequence& a,
                     const DensifiedSequence& b, const MatchParams& params);

/// All mutually non-overlapping matches between `a` (reference) and `b` (found).
std::vector<PatternMatch> find_matches(const DensifiedSequence& a, const DensifiedSequence& b,
                                       const MatchParams& params);

/// Mines every unordered pair of `seqs` (each sequence also against itself).
/// Output does not depend on `jobs` or on the order of `seqs`.
DiscoveryResult discover_team(std::span<const DensifiedSequence> seqs, const MatchParams& params,
                              int jobs = 1);

/// Throws InvariantViolation when `m` breaks any structural guarantee.
void check_match_invariants(const PatternMatch& m, const DensifiedSequence& a,
                            const DensifiedSequence& b, const MatchParams& params);

/// Canonical ordering of matches inside a DiscoveryResult.
bool canonical_less(const PatternMatch& lhs, const PatternMatch& rhs);

std::string hash_params(const MatchParams& params);
std::string hash_sequences(std::span<const DensifiedSequence> seqs);

}  // namespace pitchmotif
