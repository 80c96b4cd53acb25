#include "pitchmotif/oracle.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <tuple>

#include "pitchmotif/errors.hpp"

namespace pitchmotif {

namespace {

constexpr long kMaxCells = 10000;

enum class Cell : signed char { Blocked = -1, Outlier = 0, Regular = 1 };

struct Path {
  int span = 0;
  std::int64_t acc = 0;
  int start = 0;
  std::vector<int> cells;  // linear ids, start first
};

// Strict "p ranks ahead of q" for two paths ending at the same cell.
bool ranks_ahead(const Path& p, const Path& q) {
  if (p.span != q.span) return p.span > q.span;
  if (p.acc != q.acc) return p.acc < q.acc;
  if (p.start != q.start) return p.start < q.start;
  if (p.cells.size() != q.cells.size()) return p.cells.size() < q.cells.size();
  for (auto pi = p.cells.rbegin(), qi = q.cells.rbegin(); pi != p.cells.rend(); ++pi, ++qi) {
    if (*pi != *qi) return *pi < *qi;
  }
  return false;
}

// Exhaustive search over path prefixes. Two prefixes that reach the same cell
// with the same (outlier run, stall, outlier count, cell count) admit exactly
// the same continuations, and any common continuation preserves their order,
// so only the better one of each such pair is kept.
class Enumerator {
 public:
  Enumerator(const DensifiedSequence& a, const DensifiedSequence& b, const MatchParams& params)
      : params_(params),
        n_(static_cast<int>(a.points.size())), m_(static_cast<int>(b.points.size())),
        kind_(static_cast<std::size_t>(n_ * m_), Cell::Blocked),
        q_(static_cast<std::size_t>(n_ * m_), 0),
        best_(static_cast<std::size_t>(n_ * m_)),
        has_best_(static_cast<std::size_t>(n_ * m_), false) {
    const bool self = a.seq_id == b.seq_id;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < m_; ++j) {
        if (self && j - i < params.exclusion_band()) continue;
        const double d = local_distance(a.points[i], b.points[j]);
        if (d > params.global_threshold) continue;
        kind_[id(i, j)] = d <= params.local_threshold ? Cell::Regular : Cell::Outlier;
        q_[id(i, j)] = quantize_distance(d);
      }
    }
  }

  void run() {
    std::vector<std::map<Key, Path>> prefixes(static_cast<std::size_t>(n_ * m_));
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < m_; ++j) {
        const int c = id(i, j);
        if (kind_[c] == Cell::Blocked) continue;
        const bool regular = kind_[c] == Cell::Regular;
        auto& here = prefixes[c];

        auto offer = [&](Key key, Path p) {
          auto [it, inserted] = here.try_emplace(key, p);
          if (!inserted && ranks_ahead(p, it->second)) it->second = std::move(p);
        };
        if (regular) offer(Key{0, 0, 0, 1}, Path{2, q_[c], c, {c}});

        auto extend = [&](int pi, int pj, bool diag) {
          if (pi < 0 || pj < 0) return;
          for (const auto& [key, p] : prefixes[id(pi, pj)]) {
            Key k = key;
            k.run = regular ? 0 : key.run + 1;
            k.stall = diag ? 0 : key.stall + 1;
            k.outliers = key.outliers + (regular ? 0 : 1);
            k.cells = key.cells + 1;
            if (k.run > params_.max_outlier_run || k.stall > params_.max_stall) continue;
            Path next = p;
            next.span += diag ? 2 : 1;
            next.acc += q_[c];
            next.cells.push_back(c);
            offer(k, std::move(next));
          }
        };
        extend(i - 1, j - 1, true);
        extend(i - 1, j, false);
        extend(i, j - 1, false);

        if (!regular) continue;
        for (const auto& [key, p] : here) {
          if (key.outliers > params_.max_outlier_fraction * key.cells) continue;
          if (!has_best_[c] || ranks_ahead(p, best_[c])) {
            best_[c] = p;
            has_best_[c] = true;
          }
        }
      }
    }
  }

  const std::vector<Path>& best() const { return best_; }
  const std::vector<bool>& has_best() const { return has_best_; }
  int cols() const { return m_; }

 private:
  struct Key {
    int run, stall, outliers, cells;
    auto operator<=>(const Key&) const = default;
  };

  int id(int i, int j) const { return i * m_ + j; }

  const MatchParams& params_;
  int n_, m_;
  std::vector<Cell> kind_;
  std::vector<std::int64_t> q_;
  std::vector<Path> best_;
  std::vector<bool> has_best_;
};

bool contains_full_pass(const DensifiedSequence& s, int lo, int hi) {
  return std::any_of(s.passes.begin(), s.passes.end(), [&](const PassSpan& p) {
    return p.emission_idx >= lo && p.reception_idx <= hi;
  });
}

}  // namespace

std::vector<PatternMatch> brute_force_oracle(const DensifiedSequence& a, const DensifiedSequence& b,
                                             const MatchParams& params) {
  if (b.seq_id < a.seq_id) {
    auto out = brute_force_oracle(b, a, params);
    for (auto& mt : out) {
      std::swap(mt.reference, mt.found);
      std::swap(mt.complete_passes_ref, mt.complete_passes_found);
      for (auto& s : mt.path) std::swap(s.i, s.j);
    }
    std::sort(out.begin(), out.end(), [](const PatternMatch& l, const PatternMatch& r) {
      return std::tie(l.reference.seq_id, l.reference.start_idx, l.found.seq_id, l.found.start_idx,
                      l.reference.end_idx, l.found.end_idx) <
             std::tie(r.reference.seq_id, r.reference.start_idx, r.found.seq_id, r.found.start_idx,
                      r.reference.end_idx, r.found.end_idx);
    });
    return out;
  }
  params.validate();
  const long n = static_cast<long>(a.points.size());
  const long m = static_cast<long>(b.points.size());
  if (n * m > kMaxCells) {
    throw SizeError("brute_force_oracle: " + std::to_string(n) + "x" + std::to_string(m) +
                    " grid exceeds " + std::to_string(kMaxCells) + " cells");
  }
  if (n == 0 || m == 0) return {};

  Enumerator e(a, b, params);
  e.run();
  const int cols = e.cols();
  const bool self = a.seq_id == b.seq_id;

  struct Pick {
    const Path* path;
    int i0, j0, i1, j1;
  };
  std::vector<Pick> picks;
  for (std::size_t c = 0; c < e.best().size(); ++c) {
    if (!e.has_best()[c]) continue;
    const Path& p = e.best()[c];
    const int i0 = p.cells.front() / cols, j0 = p.cells.front() % cols;
    const int i1 = p.cells.back() / cols, j1 = p.cells.back() % cols;
    if (i1 - i0 + 1 < params.min_positions || j1 - j0 + 1 < params.min_positions) continue;
    if (self && i1 >= j0) continue;
    if (!contains_full_pass(a, i0, i1) || !contains_full_pass(b, j0, j1)) continue;
    picks.push_back({&p, i0, j0, i1, j1});
  }

  std::sort(picks.begin(), picks.end(), [](const Pick& l, const Pick& r) {
    if (l.path->span != r.path->span) return l.path->span > r.path->span;
    const auto lc = static_cast<std::int64_t>(l.path->cells.size());
    const auto rc = static_cast<std::int64_t>(r.path->cells.size());
    if (l.path->acc * rc != r.path->acc * lc) return l.path->acc * rc < r.path->acc * lc;
    return std::tie(l.i0, l.j0, l.i1, l.j1) < std::tie(r.i0, r.j0, r.i1, r.j1);
  });

  // Positions of one sequence are claimed at most once; a self pair shares them.
  std::vector<bool> taken_a(static_cast<std::size_t>(n), false);
  std::vector<bool> taken_b(static_cast<std::size_t>(m), false);
  auto& taken_found = self ? taken_a : taken_b;

  std::vector<PatternMatch> out;
  for (const Pick& pk : picks) {
    bool clash = false;
    for (int i = pk.i0; i <= pk.i1 && !clash; ++i) clash = taken_a[i];
    for (int j = pk.j0; j <= pk.j1 && !clash; ++j) clash = taken_found[j];
    if (clash) continue;
    for (int i = pk.i0; i <= pk.i1; ++i) taken_a[i] = true;
    for (int j = pk.j0; j <= pk.j1; ++j) taken_found[j] = true;

    PatternMatch mt;
    mt.team_id = a.team_id;
    mt.reference = {a.seq_id, pk.i0, pk.i1};
    mt.found = {b.seq_id, pk.j0, pk.j1};
    double total = 0.0;
    for (int c : pk.path->cells) {
      const int i = c / cols, j = c % cols;
      const double d = local_distance(a.points[i], b.points[j]);
      mt.path.push_back({i, j});
      mt.pair_distances.push_back(d);
      mt.outlier_mask.push_back(d > params.local_threshold);
      total += d;
    }
    mt.mean_distance = total / static_cast<double>(mt.path.size());
    for (std::size_t k = 0; k < a.passes.size(); ++k) {
      if (a.passes[k].emission_idx >= pk.i0 && a.passes[k].reception_idx <= pk.i1) {
        mt.complete_passes_ref.push_back(static_cast<int>(k));
      }
    }
    for (std::size_t k = 0; k < b.passes.size(); ++k) {
      if (b.passes[k].emission_idx >= pk.j0 && b.passes[k].reception_idx <= pk.j1) {
        mt.complete_passes_found.push_back(static_cast<int>(k));
      }
    }
    out.push_back(std::move(mt));
  }

  std::sort(out.begin(), out.end(), [](const PatternMatch& l, const PatternMatch& r) {
    return std::tie(l.reference.seq_id, l.reference.start_idx, l.found.seq_id, l.found.start_idx) <
           std::tie(r.reference.seq_id, r.reference.start_idx, r.found.seq_id, r.found.start_idx);
  });
  return out;
}

}  // namespace pitchmotif
