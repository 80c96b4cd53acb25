#include "discovery/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace pitchmotif::detail {

namespace {

// Slack for the squared-distance screens; the screens must never reject a
// cell that the exact test would admit.
constexpr double kScreenSlack = 1.0 + 1e-9;

// Some window of `min_len` consecutive usable lines contains at most
// `max_bad` lines without a regular cell.
bool has_feasible_window(const std::vector<std::uint8_t>& usable,
                         const std::vector<std::uint8_t>& regular, int min_len, double max_bad) {
  const int n = static_cast<int>(usable.size());
  int run_start = 0;
  int bad = 0;
  for (int k = 0; k < n; ++k) {
    if (!usable[k]) {
      run_start = k + 1;
      bad = 0;
      continue;
    }
    bad += regular[k] ? 0 : 1;
    if (k - run_start + 1 > min_len) {
      bad -= regular[k - min_len] ? 0 : 1;
    }
    if (k - run_start + 1 >= min_len && bad <= max_bad) return true;
  }
  return false;
}

}  // namespace

bool PreparedSequence::has_complete_pass(int start, int end) const {
  // Emissions increase with the pass index, and so do receptions.
  const auto it = std::lower_bound(emission.begin(), emission.end(), start);
  if (it == emission.end()) return false;
  return reception[static_cast<std::size_t>(it - emission.begin())] <= end;
}

PreparedSequence prepare(const DensifiedSequence& seq) {
  PreparedSequence p;
  p.seq = &seq;
  p.x.reserve(seq.points.size());
  p.y.reserve(seq.points.size());
  for (const auto& pt : seq.points) {
    p.x.push_back(pt.x);
    p.y.push_back(pt.y);
  }
  if (!p.x.empty()) {
    const auto [mnx, mxx] = std::minmax_element(p.x.begin(), p.x.end());
    const auto [mny, mxy] = std::minmax_element(p.y.begin(), p.y.end());
    p.min_x = *mnx;
    p.max_x = *mxx;
    p.min_y = *mny;
    p.max_y = *mxy;
  }
  for (const auto& pass : seq.passes) {
    p.emission.push_back(pass.emission_idx);
    p.reception.push_back(pass.reception_idx);
  }
  return p;
}

bool pair_may_match(const PreparedSequence& a, const PreparedSequence& b, bool self,
                    const MatchParams& params) {
  const int n = a.size();
  const int m = b.size();
  const int min_len = params.min_positions;
  if (n < min_len || m < min_len) return false;

  const double g2 = params.global_threshold * params.global_threshold * kScreenSlack;
  const double l2 = params.local_threshold * params.local_threshold * kScreenSlack;

  if (!self) {
    const double gx = std::max({0.0, a.min_x - b.max_x, b.min_x - a.max_x});
    const double gy = std::max({0.0, a.min_y - b.max_y, b.min_y - a.max_y});
    if (gx * gx + gy * gy > g2) return false;
  }

  std::vector<std::uint8_t> row_usable(n, 0), row_regular(n, 0);
  std::vector<std::uint8_t> col_usable(m, 0), col_regular(m, 0);
  const int band = self ? params.exclusion_band() : 0;
  for (int i = 0; i < n; ++i) {
    const double ax = a.x[i];
    const double ay = a.y[i];
    const int j0 = self ? std::min(m, i + band) : 0;
    std::uint8_t ru = 0, rr = 0;
    for (int j = j0; j < m; ++j) {
      const double dx = ax - b.x[j];
      const double dy = ay - b.y[j];
      const double d2 = dx * dx + dy * dy;
      const std::uint8_t u = d2 <= g2;
      const std::uint8_t r = d2 <= l2;
      ru |= u;
      rr |= r;
      col_usable[j] |= u;
      col_regular[j] |= r;
    }
    row_usable[i] = ru;
    row_regular[i] = rr;
  }

  // A row without a regular cell costs at least one outlier on the path.
  const double max_bad = params.max_outlier_fraction * static_cast<double>(n + m - 1);
  return has_feasible_window(row_usable, row_regular, min_len, max_bad) &&
         has_feasible_window(col_usable, col_regular, min_len, max_bad);
}

bool PairKernel::better(const Label& l, const Label& r) {
  if (l.span != r.span) return l.span > r.span;
  if (l.acc != r.acc) return l.acc < r.acc;
  if (l.start != r.start) return l.start < r.start;
  if (l.cells != r.cells) return l.cells < r.cells;
  if (l.pred_cell != r.pred_cell) return l.pred_cell < r.pred_cell;
  return l.pred_rank < r.pred_rank;
}

void PairKernel::run(const PreparedSequence& a, const PreparedSequence& b, bool self,
                     const MatchParams& params) {
  const int n = a.size();
  const int m = b.size();
  m_ = m;
  const std::size_t n_cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
  cell_begin_.assign(n_cells, 0);
  cell_count_.assign(n_cells, 0);
  arena_.clear();
  candidates_.clear();
  candidate_label_.clear();

  const double local = params.local_threshold;
  const double global = params.global_threshold;
  const double fraction = params.max_outlier_fraction;
  const int max_run = params.max_outlier_run;
  const int max_stall = params.max_stall;
  const int band = params.exclusion_band();
  const int n_states_stall = max_stall + 1;

  struct Pred {
    int di, dj;
    bool diag;
  };
  constexpr Pred kPreds[3] = {{1, 1, true}, {1, 0, false}, {0, 1, false}};

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (self && j - i < band) continue;
      const double dx = a.x[i] - b.x[j];
      const double dy = a.y[i] - b.y[j];
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d > global) continue;
      const bool regular = d <= local;
      const std::int64_t q = quantize_distance(d);
      const std::int32_t cell = i * m + j;
      const double remaining = static_cast<double>((n - 1 - i) + (m - 1 - j));

      scratch_.clear();
      if (regular) {
        scratch_.push_back(Label{q, 2, 1, 0, cell, -1, -1, 0, 0, 0, 0});
      }
      for (const auto& p : kPreds) {
        const int pi = i - p.di;
        const int pj = j - p.dj;
        if (pi < 0 || pj < 0) continue;
        const std::int32_t pc = pi * m + pj;
        const std::int32_t begin = cell_begin_[pc];
        const std::int32_t end = begin + cell_count_[pc];
        for (std::int32_t li = begin; li < end; ++li) {
          const Label& prev = arena_[li];
          const int stall = p.diag ? 0 : prev.stall + 1;
          if (stall > max_stall) continue;
          const int run = regular ? 0 : prev.run + 1;
          if (run > max_run) continue;
          const int outliers = prev.outliers + (regular ? 0 : 1);
          const int cells = prev.cells + 1;
          if (outliers > fraction * (cells + remaining)) continue;
          scratch_.push_back(Label{prev.acc + q, prev.span + (p.diag ? 2 : 1), cells, outliers,
                                   prev.start, li, pc, prev.rank, 0,
                                   static_cast<std::uint8_t>(run),
                                   static_cast<std::uint8_t>(stall)});
        }
      }
      if (scratch_.empty()) continue;

      // Within one (run, stall) state a label is redundant when another is
      // ranked ahead of it with no more outliers and no fewer cells.
      std::sort(scratch_.begin(), scratch_.end(), [&](const Label& l, const Label& r) {
        const int ls = l.run * n_states_stall + l.stall;
        const int rs = r.run * n_states_stall + r.stall;
        if (ls != rs) return ls < rs;
        return better(l, r);
      });
      kept_.clear();
      std::size_t group_begin = 0;
      for (std::size_t k = 0; k < scratch_.size(); ++k) {
        const Label& l = scratch_[k];
        if (k > 0 && (l.run != scratch_[k - 1].run || l.stall != scratch_[k - 1].stall)) {
          group_begin = kept_.size();
        }
        bool dominated = false;
        for (std::size_t g = group_begin; g < kept_.size(); ++g) {
          if (kept_[g].outliers <= l.outliers && kept_[g].cells >= l.cells) {
            dominated = true;
            break;
          }
        }
        if (!dominated) kept_.push_back(l);
      }
      std::sort(kept_.begin(), kept_.end(), better);

      cell_begin_[cell] = static_cast<std::int32_t>(arena_.size());
      cell_count_[cell] = static_cast<std::int32_t>(kept_.size());
      for (std::size_t k = 0; k < kept_.size(); ++k) {
        kept_[k].rank = static_cast<std::int32_t>(k);
        arena_.push_back(kept_[k]);
      }

      if (!regular) continue;
      for (std::size_t k = 0; k < kept_.size(); ++k) {
        const Label& l = kept_[k];
        if (l.outliers > fraction * l.cells) continue;
        Candidate c;
        c.start_i = l.start / m;
        c.start_j = l.start % m;
        c.end_i = i;
        c.end_j = j;
        c.span = l.span;
        c.cells = l.cells;
        c.acc = l.acc;
        candidates_.push_back(std::move(c));
        candidate_label_.push_back(cell_begin_[cell] + static_cast<std::int32_t>(k));
        break;
      }
    }
  }
}

std::vector<PathStep> PairKernel::trace(std::size_t candidate_index) const {
  const Candidate& c = candidates_.at(candidate_index);
  std::vector<PathStep> path;
  path.reserve(static_cast<std::size_t>(c.cells));
  path.push_back({c.end_i, c.end_j});
  const Label* l = &arena_[candidate_label_[candidate_index]];
  while (l->pred >= 0) {
    path.push_back({l->pred_cell / m_, l->pred_cell % m_});
    l = &arena_[l->pred];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace pitchmotif::detail
