#include <algorithm>
#include <numeric>

#include "discovery/kernel.hpp"
#include "pitchmotif/discovery.hpp"

namespace pitchmotif {

namespace detail {

PatternMatch assemble_match(const DensifiedSequence& a, const DensifiedSequence& b,
                            std::vector<PathStep> path, const MatchParams& params) {
  PatternMatch m;
  m.team_id = a.team_id;
  m.reference = Segment{a.seq_id, path.front().i, path.back().i};
  m.found = Segment{b.seq_id, path.front().j, path.back().j};
  m.pair_distances.reserve(path.size());
  m.outlier_mask.reserve(path.size());
  double sum = 0.0;
  for (const auto& s : path) {
    const double d = local_distance(a.points[s.i], b.points[s.j]);
    m.pair_distances.push_back(d);
    m.outlier_mask.push_back(d > params.local_threshold);
    sum += d;
  }
  m.mean_distance = sum / static_cast<double>(path.size());
  m.path = std::move(path);
  m.complete_passes_ref = complete_passes_in(a, m.reference.start_idx, m.reference.end_idx);
  m.complete_passes_found = complete_passes_in(b, m.found.start_idx, m.found.end_idx);
  return m;
}

std::vector<PatternMatch> match_prepared(const PreparedSequence& a, const PreparedSequence& b,
                                         const MatchParams& params, PairKernel& kernel) {
  const bool self = a.seq->seq_id == b.seq->seq_id;
  if (!pair_may_match(a, b, self, params)) return {};
  kernel.run(a, b, self, params);

  const auto& cands = kernel.candidates();
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const Candidate& c = cands[k];
    if (c.end_i - c.start_i + 1 < params.min_positions) continue;
    if (c.end_j - c.start_j + 1 < params.min_positions) continue;
    if (self && c.end_i >= c.start_j) continue;
    if (!a.has_complete_pass(c.start_i, c.end_i) || !b.has_complete_pass(c.start_j, c.end_j)) {
      continue;
    }
    order.push_back(k);
  }
  if (order.empty()) return {};

  std::sort(order.begin(), order.end(), [&](std::size_t lk, std::size_t rk) {
    const Candidate& l = cands[lk];
    const Candidate& r = cands[rk];
    if (l.span != r.span) return l.span > r.span;
    const std::int64_t lm = l.acc * r.cells;
    const std::int64_t rm = r.acc * l.cells;
    if (lm != rm) return lm < rm;
    if (l.start_i != r.start_i) return l.start_i < r.start_i;
    if (l.start_j != r.start_j) return l.start_j < r.start_j;
    if (l.end_i != r.end_i) return l.end_i < r.end_i;
    return l.end_j < r.end_j;
  });

  std::vector<std::uint8_t> used_a(static_cast<std::size_t>(a.size()), 0);
  std::vector<std::uint8_t> used_b_storage;
  if (!self) used_b_storage.assign(static_cast<std::size_t>(b.size()), 0);
  std::vector<std::uint8_t>& used_b = self ? used_a : used_b_storage;

  auto free_range = [](const std::vector<std::uint8_t>& used, int lo, int hi) {
    return std::none_of(used.begin() + lo, used.begin() + hi + 1, [](auto u) { return u != 0; });
  };

  std::vector<PatternMatch> out;
  for (std::size_t k : order) {
    const Candidate& c = cands[k];
    if (!free_range(used_a, c.start_i, c.end_i) || !free_range(used_b, c.start_j, c.end_j)) {
      continue;
    }
    std::fill(used_a.begin() + c.start_i, used_a.begin() + c.end_i + 1, 1);
    std::fill(used_b.begin() + c.start_j, used_b.begin() + c.end_j + 1, 1);
    out.push_back(assemble_match(*a.seq, *b.seq, kernel.trace(k), params));
  }
  return out;
}

}  // namespace detail

std::vector<PatternMatch> find_matches(const DensifiedSequence& a, const DensifiedSequence& b,
                                       const MatchParams& params) {
  // Ties are broken in the orientation (smaller seq_id, larger seq_id), which
  // makes the result independent of argument order.
  if (b.seq_id < a.seq_id) {
    auto out = find_matches(b, a, params);
    for (auto& m : out) {
      std::swap(m.reference, m.found);
      std::swap(m.complete_passes_ref, m.complete_passes_found);
      for (auto& s : m.path) std::swap(s.i, s.j);
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
  }
  params.validate();
  const auto pa = detail::prepare(a);
  const auto pb = detail::prepare(b);
  detail::PairKernel kernel;
  auto out = detail::match_prepared(pa, pb, params, kernel);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace pitchmotif
