#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pitchmotif/discovery.hpp"
#include "pitchmotif/event_model.hpp"
#include "pitchmotif/preprocess.hpp"

namespace pitchmotif::testing {

struct Node {
  double x = 0.0;
  double y = 0.0;
};

inline PassEvent make_pass(const std::string& game, const std::string& team, Node from, Node to,
                           double t0, double t1, const std::string& passer,
                           const std::string& receiver) {
  PassEvent e;
  e.game_id = game;
  e.team_id = team;
  e.period = 1;
  e.t_start = t0;
  e.t_end = t1;
  e.x_start = from.x;
  e.y_start = from.y;
  e.x_end = to.x;
  e.y_end = to.y;
  e.passer_id = passer;
  e.receiver_id = receiver;
  e.completed = true;
  return e;
}

/// Possession whose passes chain the given nodes in normalized units; the
/// ball moves at 10 units/s and each reception is the next emission.
inline PossessionSequence chain(const std::string& seq_id, const std::vector<Node>& nodes,
                                const std::string& team = "T",
                                const std::vector<std::string>& players = {}) {
  PossessionSequence s;
  s.seq_id = seq_id;
  s.game_id = "g";
  s.team_id = team;
  double t = 0.0;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double d = std::hypot(nodes[k + 1].x - nodes[k].x, nodes[k + 1].y - nodes[k].y);
    const std::string passer = players.empty() ? "p" + std::to_string(k % 11)
                                               : players[k % players.size()];
    const std::string receiver = players.empty() ? "p" + std::to_string((k + 1) % 11)
                                                 : players[(k + 1) % players.size()];
    s.passes.push_back(make_pass("g", team, nodes[k], nodes[k + 1], t, t + d / 10.0, passer, receiver));
    t += d / 10.0;
  }
  return s;
}

inline DensifiedSequence dense_chain(const std::string& seq_id, const std::vector<Node>& nodes,
                                     const std::string& team = "T",
                                     const std::vector<std::string>& players = {}) {
  return densify(chain(seq_id, nodes, team, players));
}

/// Same passes with every point moved by (dx, dy).
inline DensifiedSequence translated(const DensifiedSequence& s, const std::string& seq_id, double dx,
                                    double dy) {
  DensifiedSequence out = s;
  out.seq_id = seq_id;
  for (auto& p : out.points) {
    p.x += dx;
    p.y += dy;
  }
  return out;
}

/// Path of roughly `points` densified positions running mostly along +y with
/// gentle turns; never doubles back on itself.
inline std::vector<Node> meander(std::mt19937_64& rng, int points, Node start = {30.0, 5.0}) {
  std::uniform_real_distribution<double> len(6.0, 11.0);
  std::uniform_real_distribution<double> turn(-0.5, 0.5);
  std::vector<Node> nodes{start};
  int total = 0;
  double heading = std::numbers::pi / 2;
  while (total < points) {
    const double l = len(rng);
    heading = std::numbers::pi / 2 + turn(rng);
    nodes.push_back({nodes.back().x + l * std::cos(heading), nodes.back().y + l * std::sin(heading)});
    total += 1 + segments_for_gap(l, 2.0);
  }
  return nodes;
}

/// Small instance for exhaustive comparison: `b` shares a noisy stretch with
/// `a` and is otherwise unrelated. Both stay under `max_points` positions.
struct SmallPair {
  DensifiedSequence a;
  DensifiedSequence b;
};

inline std::vector<Node> short_walk(std::mt19937_64& rng, Node start, int n_passes) {
  std::uniform_real_distribution<double> len(2.5, 6.0);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::vector<Node> nodes{start};
  for (int k = 0; k < n_passes; ++k) {
    const double l = len(rng);
    const double a = ang(rng);
    nodes.push_back({nodes.back().x + l * std::cos(a), nodes.back().y + l * std::sin(a)});
  }
  return nodes;
}

/// Positions of `dense_chain(nodes)`: each pass contributes its own endpoints.
inline int dense_size(const std::vector<Node>& nodes) {
  int n = 0;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    n += 1 + segments_for_gap(std::hypot(nodes[k + 1].x - nodes[k].x, nodes[k + 1].y - nodes[k].y), 2.0);
  }
  return n;
}

inline SmallPair small_pair(std::mt19937_64& rng, int max_points = 30, double jitter = 0.9) {
  std::uniform_real_distribution<double> noise(-jitter, jitter);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Node> a_nodes;
  do {
    a_nodes = short_walk(rng, {50.0, 50.0}, 4 + static_cast<int>(coin(rng) * 4));
  } while (dense_size(a_nodes) > max_points);

  std::vector<Node> b_nodes;
  do {
    // Copy a random stretch of `a` with noise, optionally with unrelated passes around it.
    const int n = static_cast<int>(a_nodes.size());
    const int lo = static_cast<int>(coin(rng) * (n - 2));
    const int hi = std::min(n - 1, lo + 2 + static_cast<int>(coin(rng) * (n - lo - 1)));
    b_nodes.clear();
    if (coin(rng) < 0.4) {
      auto pre = short_walk(rng, {a_nodes[lo].x + 15.0, a_nodes[lo].y}, 1);
      b_nodes.push_back(pre.back());
    }
    for (int k = lo; k <= hi; ++k) {
      b_nodes.push_back({a_nodes[k].x + noise(rng), a_nodes[k].y + noise(rng)});
    }
    if (coin(rng) < 0.4) {
      auto post = short_walk(rng, b_nodes.back(), 1);
      b_nodes.push_back(post.back());
    }
  } while (dense_size(b_nodes) > max_points || b_nodes.size() < 2);

  return {dense_chain("a", a_nodes), dense_chain("b", b_nodes)};
}

inline MatchParams small_params() {
  MatchParams p;
  p.min_positions = 5;
  return p;
}

/// Swaps roles in every match so results of (b, a) can be compared to (a, b).
inline std::vector<PatternMatch> swap_roles(std::vector<PatternMatch> ms) {
  for (auto& m : ms) {
    std::swap(m.reference, m.found);
    std::swap(m.complete_passes_ref, m.complete_passes_found);
    for (auto& s : m.path) std::swap(s.i, s.j);
  }
  std::sort(ms.begin(), ms.end(), canonical_less);
  return ms;
}

}  // namespace pitchmotif::testing

namespace pitchmotif {

inline void PrintTo(const PatternMatch& m, std::ostream* os) {
  *os << "{" << m.reference.seq_id << "[" << m.reference.start_idx << "," << m.reference.end_idx
      << "] " << m.found.seq_id << "[" << m.found.start_idx << "," << m.found.end_idx << "] path";
  for (const auto& s : m.path) *os << " " << s.i << ":" << s.j;
  *os << "}";
}

}  // namespace pitchmotif
