#include "pitchmotif/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "pitchmotif/errors.hpp"

namespace pitchmotif {

namespace {

struct SideRef {
  const DensifiedSequence& seq;
  const Segment& seg;
  const std::vector<int>& complete;
};

SideRef side_of(const MatchView& m, Side side) {
  if (side == Side::Reference) return {m.ref, m.match.reference, m.match.complete_passes_ref};
  return {m.found, m.match.found, m.match.complete_passes_found};
}

const SeqPoint& first_point(const SideRef& s) { return s.seq.points.at(s.seg.start_idx); }
const SeqPoint& last_point(const SideRef& s) { return s.seq.points.at(s.seg.end_idx); }

std::set<std::string> involved_players(const SideRef& s) {
  std::set<std::string> players;
  for (int k : s.complete) {
    const auto& pass = s.seq.passes.at(static_cast<std::size_t>(k));
    if (!pass.passer_id.empty()) players.insert(pass.passer_id);
    if (!pass.receiver_id.empty()) players.insert(pass.receiver_id);
  }
  return players;
}

std::vector<Side> sides_for(Accounting accounting) {
  if (accounting == Accounting::Reference) return {Side::Reference};
  return {Side::Reference, Side::Found};
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

TeamSeason::TeamSeason(DiscoveryResult r, std::vector<DensifiedSequence> seqs)
    : result(std::move(r)), sequences(std::move(seqs)) {
  std::sort(sequences.begin(), sequences.end(),
            [](const auto& l, const auto& rr) { return l.seq_id < rr.seq_id; });
}

const DensifiedSequence& TeamSeason::sequence(const std::string& seq_id) const {
  const auto it = std::lower_bound(sequences.begin(), sequences.end(), seq_id,
                                   [](const DensifiedSequence& s, const std::string& id) {
                                     return s.seq_id < id;
                                   });
  if (it == sequences.end() || it->seq_id != seq_id) {
    throw Error("unknown sequence " + seq_id + " for team " + result.team_id);
  }
  return *it;
}

MatchView view_match(const TeamSeason& season, std::size_t match_index) {
  const PatternMatch& m = season.result.matches.at(match_index);
  return MatchView{m, season.sequence(m.reference.seq_id), season.sequence(m.found.seq_id)};
}

std::string match_id(std::size_t match_index) {
  std::string n = std::to_string(match_index);
  if (n.size() < 4) n.insert(0, 4 - n.size(), '0');
  return "m" + n;
}

int count_passes_in(const PatternMatch& m, Side side) {
  return static_cast<int>(side == Side::Reference ? m.complete_passes_ref.size()
                                                  : m.complete_passes_found.size());
}

bool is_final_third_entry(const MatchView& m, Side side) {
  const auto s = side_of(m, side);
  return first_point(s).x < kFinalThirdX && last_point(s).x >= kFinalThirdX;
}

Spread spatial_spread(const MatchView& m, Side side) {
  const auto s = side_of(m, side);
  return Spread{last_point(s).x - first_point(s).x, std::abs(last_point(s).y - first_point(s).y)};
}

double duration_seconds(const MatchView& m, Side side) {
  const auto s = side_of(m, side);
  return last_point(s).t - first_point(s).t;
}

double path_length_units(const MatchView& m, Side side) {
  const auto s = side_of(m, side);
  double total = 0.0;
  for (int k = s.seg.start_idx; k < s.seg.end_idx; ++k) {
    total += std::hypot(s.seq.points[k + 1].x - s.seq.points[k].x,
                        s.seq.points[k + 1].y - s.seq.points[k].y);
  }
  return total;
}

double to_meters(double dx_units, double dy_units, const FieldSpec& field) {
  return std::hypot(dx_units * field.length_m / 100.0, dy_units * field.width_m / 100.0);
}

double path_length_meters(const MatchView& m, const FieldSpec& field, Side side) {
  const auto s = side_of(m, side);
  double total = 0.0;
  for (int k = s.seg.start_idx; k < s.seg.end_idx; ++k) {
    total += to_meters(s.seq.points[k + 1].x - s.seq.points[k].x,
                       s.seq.points[k + 1].y - s.seq.points[k].y, field);
  }
  return total;
}

double PatternCluster::overlap_fraction() const {
  const auto it = overlap_profile.find(occurrences);
  return it == overlap_profile.end() ? 0.0 : it->second;
}

std::vector<PatternCluster> cluster_occurrences(const DiscoveryResult& result) {
  const auto& matches = result.matches;
  const std::size_t n_nodes = matches.size() * 2;
  auto segment_of = [&](std::size_t node) -> const Segment& {
    const auto& m = matches[node / 2];
    return node % 2 == 0 ? m.reference : m.found;
  };

  // Segment graph: the two sides of a match, plus overlapping segments of one sequence.
  DisjointSets segments(n_nodes);
  for (std::size_t k = 0; k < matches.size(); ++k) segments.unite(2 * k, 2 * k + 1);
  std::vector<std::size_t> by_position(n_nodes);
  std::iota(by_position.begin(), by_position.end(), 0);
  std::sort(by_position.begin(), by_position.end(), [&](std::size_t l, std::size_t r) {
    const auto& sl = segment_of(l);
    const auto& sr = segment_of(r);
    return std::tie(sl.seq_id, sl.start_idx, sl.end_idx, l) <
           std::tie(sr.seq_id, sr.start_idx, sr.end_idx, r);
  });
  for (std::size_t k = 1; k < by_position.size(); ++k) {
    // Sweep: compare against the furthest-reaching earlier segment of the same sequence.
    const auto& cur = segment_of(by_position[k]);
    for (std::size_t p = k; p-- > 0;) {
      const auto& prev = segment_of(by_position[p]);
      if (prev.seq_id != cur.seq_id) break;
      if (prev.end_idx >= cur.start_idx) segments.unite(by_position[p], by_position[k]);
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t node = 0; node < n_nodes; ++node) components[segments.find(node)].push_back(node);

  std::vector<PatternCluster> clusters;
  for (const auto& [root, nodes] : components) {
    if (nodes.size() < 2) continue;
    PatternCluster c;
    c.team_id = result.team_id;

    std::set<std::size_t> match_set;
    for (auto node : nodes) {
      c.segments.push_back(segment_of(node));
      match_set.insert(node / 2);
    }
    c.match_indices.assign(match_set.begin(), match_set.end());
    std::sort(c.segments.begin(), c.segments.end(), [](const Segment& l, const Segment& r) {
      return std::tie(l.seq_id, l.start_idx, l.end_idx) < std::tie(r.seq_id, r.start_idx, r.end_idx);
    });

    // Occurrences: merged position ranges per sequence. Each covered position
    // gets a dense id.
    struct Occurrence {
      std::string seq_id;
      int lo, hi;
      std::size_t first_id;
    };
    std::vector<Occurrence> occ;
    std::size_t n_positions = 0;
    for (const auto& s : c.segments) {
      if (!occ.empty() && occ.back().seq_id == s.seq_id && s.start_idx <= occ.back().hi) {
        occ.back().hi = std::max(occ.back().hi, s.end_idx);
      } else {
        occ.push_back({s.seq_id, s.start_idx, s.end_idx, 0});
      }
    }
    for (auto& o : occ) {
      o.first_id = n_positions;
      n_positions += static_cast<std::size_t>(o.hi - o.lo + 1);
    }
    auto locate = [&](const std::string& seq_id, int idx) {
      for (std::size_t k = 0; k < occ.size(); ++k) {
        if (occ[k].seq_id == seq_id && idx >= occ[k].lo && idx <= occ[k].hi) {
          return std::pair{k, occ[k].first_id + static_cast<std::size_t>(idx - occ[k].lo)};
        }
      }
      throw InvariantViolation("cluster position outside its occurrences");
    };
    std::vector<std::size_t> occurrence_of(n_positions);
    for (std::size_t k = 0; k < occ.size(); ++k) {
      std::fill_n(occurrence_of.begin() + static_cast<std::ptrdiff_t>(occ[k].first_id),
                  occ[k].hi - occ[k].lo + 1, k);
    }

    // Positions aligned by a warping path describe the same part of the pattern.
    DisjointSets aligned(n_positions);
    for (auto mi : c.match_indices) {
      const auto& m = matches[mi];
      for (const auto& step : m.path) {
        aligned.unite(locate(m.reference.seq_id, step.i).second,
                      locate(m.found.seq_id, step.j).second);
      }
    }
    std::map<std::size_t, std::set<std::size_t>> occ_per_root;
    for (std::size_t p = 0; p < n_positions; ++p) occ_per_root[aligned.find(p)].insert(occurrence_of[p]);
    std::map<int, std::size_t> tally;
    for (std::size_t p = 0; p < n_positions; ++p) {
      ++tally[static_cast<int>(occ_per_root[aligned.find(p)].size())];
    }
    for (const auto& [k, count] : tally) {
      c.overlap_profile[k] = static_cast<double>(count) / static_cast<double>(n_positions);
    }
    c.occurrences = static_cast<int>(occ.size());
    clusters.push_back(std::move(c));
  }

  std::sort(clusters.begin(), clusters.end(), [](const PatternCluster& l, const PatternCluster& r) {
    const auto& a = l.segments.front();
    const auto& b = r.segments.front();
    return std::tie(a.seq_id, a.start_idx, a.end_idx) < std::tie(b.seq_id, b.start_idx, b.end_idx);
  });
  for (std::size_t k = 0; k < clusters.size(); ++k) clusters[k].cluster_id = static_cast<int>(k);
  return clusters;
}

PlayerOverlapRecord player_overlap(const MatchView& m) {
  const auto ref = involved_players(side_of(m, Side::Reference));
  const auto found = involved_players(side_of(m, Side::Found));
  std::vector<std::string> common;
  std::set_intersection(ref.begin(), ref.end(), found.begin(), found.end(),
                        std::back_inserter(common));
  return PlayerOverlapRecord{static_cast<int>(std::max(ref.size(), found.size())),
                             static_cast<int>(common.size())};
}

TeamSeasonStats team_stats(const TeamSeason& season, Accounting accounting) {
  TeamSeasonStats s;
  s.team_id = season.result.team_id;
  s.n_patterns = static_cast<int>(season.result.matches.size());
  s.n_team_passes = season.result.n_team_passes;
  s.no_patterns = s.n_patterns == 0;
  if (s.no_patterns) return s;

  std::vector<double> counts;
  for (std::size_t k = 0; k < season.result.matches.size(); ++k) {
    const auto view = view_match(season, k);
    for (Side side : sides_for(accounting)) {
      counts.push_back(count_passes_in(view.match, side));
      if (is_final_third_entry(view, side)) ++s.n_fte;
    }
  }
  const double n = static_cast<double>(counts.size());
  s.mean_passes = std::accumulate(counts.begin(), counts.end(), 0.0) / n;
  double ss = 0.0;
  for (double c : counts) ss += (c - s.mean_passes) * (c - s.mean_passes);
  s.std_passes = std::sqrt(ss / n);
  s.n_clusters = static_cast<int>(cluster_occurrences(season.result).size());
  return s;
}

std::vector<TeamSeasonStats> table1(std::span<const TeamSeason> seasons, Accounting accounting) {
  std::vector<TeamSeasonStats> rows;
  for (const auto& s : seasons) rows.push_back(team_stats(s, accounting));
  std::sort(rows.begin(), rows.end(),
            [](const auto& l, const auto& r) { return l.team_id < r.team_id; });
  return rows;
}

int PlayerOverlapTable::total() const {
  int t = 0;
  for (const auto& [key, count] : counts) t += count;
  return t;
}

int PlayerOverlapTable::at(int n_involved, int n_overlap) const {
  const auto it = counts.find({n_involved, n_overlap});
  return it == counts.end() ? 0 : it->second;
}

PlayerOverlapTable table2(std::span<const TeamSeason> seasons) {
  PlayerOverlapTable t;
  for (const auto& s : seasons) {
    for (std::size_t k = 0; k < s.result.matches.size(); ++k) {
      const auto r = player_overlap(view_match(s, k));
      ++t.counts[{r.n_involved, r.n_overlap}];
    }
  }
  return t;
}

double regression_r2(std::span<const TeamSeasonStats> stats) {
  if (stats.size() < 2) throw DegenerateInput("regression needs at least two teams");
  const double n = static_cast<double>(stats.size());
  double mx = 0.0, my = 0.0;
  for (const auto& s : stats) {
    mx += s.n_team_passes;
    my += s.n_patterns;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& s : stats) {
    const double dx = s.n_team_passes - mx;
    const double dy = s.n_patterns - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw DegenerateInput("all teams have the same pass count");
  if (syy == 0.0) return 1.0;  // a flat line fits exactly
  return (sxy * sxy) / (sxx * syy);
}

std::vector<SpreadRow> spread_rows(const TeamSeason& season, const FieldSpec& field,
                                   Accounting accounting) {
  std::vector<SpreadRow> rows;
  for (std::size_t k = 0; k < season.result.matches.size(); ++k) {
    const auto view = view_match(season, k);
    for (Side side : sides_for(accounting)) {
      const auto spread = spatial_spread(view, side);
      rows.push_back(SpreadRow{season.result.team_id, match_id(k), spread.dx, spread.dy,
                               duration_seconds(view, side),
                               path_length_meters(view, field, side),
                               is_final_third_entry(view, side)});
    }
  }
  return rows;
}

}  // namespace pitchmotif
