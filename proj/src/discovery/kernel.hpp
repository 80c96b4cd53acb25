#pragma once

#include <cstdint>
#include <vector>

#include "pitchmotif/discovery.hpp"

namespace pitchmotif::detail {

/// Coordinates and pass layout of one sequence, laid out for the pair kernel.
struct PreparedSequence {
  const DensifiedSequence* seq = nullptr;
  std::vector<double> x;
  std::vector<double> y;
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  std::vector<int> emission;   // per pass, increasing
  std::vector<int> reception;  // per pass, increasing

  int size() const { return static_cast<int>(x.size()); }
  /// Some pass lies entirely inside [start, end].
  bool has_complete_pass(int start, int end) const;
};

PreparedSequence prepare(const DensifiedSequence& seq);

/// Best admissible path ending at one regular cell.
struct Candidate {
  int start_i = 0, start_j = 0;
  int end_i = 0, end_j = 0;
  int span = 0;   // positions covered on both sides
  int cells = 0;  // path length
  std::int64_t acc = 0;
  std::vector<PathStep> path;  // filled only for extracted candidates
};

/// Necessary condition for any match between `a` and `b`; false means the
/// pair cannot produce a match and the kernel may be skipped.
bool pair_may_match(const PreparedSequence& a, const PreparedSequence& b, bool self,
                    const MatchParams& params);

/// Runs the warping-path recursion over the pair grid and returns, for each
/// regular cell, the best feasible path ending there. Paths are compared by
/// covered positions (more first), quantized accumulated distance, start
/// cell, path length, and finally by their cells read backwards from the end.
/// `path` is left empty; call `trace` on the returned handle to recover it.
class PairKernel {
 public:
  void run(const PreparedSequence& a, const PreparedSequence& b, bool self,
           const MatchParams& params);

  const std::vector<Candidate>& candidates() const { return candidates_; }
  std::vector<PathStep> trace(std::size_t candidate_index) const;

 private:
  struct Label {
    std::int64_t acc;
    std::int32_t span;
    std::int32_t cells;
    std::int32_t outliers;
    std::int32_t start;      // linear cell id
    std::int32_t pred;       // arena index, -1 for a path start
    std::int32_t pred_cell;  // linear cell id, -1 for a path start
    std::int32_t pred_rank;
    std::int32_t rank;
    std::uint8_t run;
    std::uint8_t stall;
  };

  static bool better(const Label& l, const Label& r);

  int m_ = 0;
  std::vector<Label> arena_;
  std::vector<std::int32_t> cell_begin_;
  std::vector<std::int32_t> cell_count_;
  std::vector<Label> scratch_;
  std::vector<Label> kept_;
  std::vector<Candidate> candidates_;
  std::vector<std::int32_t> candidate_label_;
};

}  // namespace pitchmotif::detail

namespace pitchmotif::detail {

/// Greedy extraction of non-overlapping matches from the kernel candidates.
std::vector<PatternMatch> match_prepared(const PreparedSequence& a, const PreparedSequence& b,
                                         const MatchParams& params, PairKernel& kernel);

PatternMatch assemble_match(const DensifiedSequence& a, const DensifiedSequence& b,
                            std::vector<PathStep> path, const MatchParams& params);

}  // namespace pitchmotif::detail
