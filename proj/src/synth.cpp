#include "pitchmotif/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "pitchmotif/errors.hpp"

namespace pitchmotif {

namespace {

constexpr double kLo = 2.0;
constexpr double kHi = 98.0;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0,1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) { return std::min(n - 1, static_cast<int>(uniform() * n)); }

 private:
  std::mt19937_64 engine_;
};

struct Pt {
  double x = 0.0;
  double y = 0.0;
};

struct RawPass {
  Pt from;
  Pt to;
};

bool inside(Pt p) { return p.x >= kLo && p.x <= kHi && p.y >= kLo && p.y <= kHi; }

Pt step_from(Pt p, double len, double angle) {
  return {p.x + len * std::cos(angle), p.y + len * std::sin(angle)};
}

Pt random_step(Rng& rng, Pt p, double min_len, double max_len, double heading) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double len = rng.uniform(min_len, max_len);
    const double spread = rng.uniform() < 0.6 ? std::numbers::pi / 2 : std::numbers::pi;
    const Pt q = step_from(p, len, heading + rng.uniform(-spread, spread));
    if (inside(q)) return q;
  }
  // Fall back toward the centre of the pitch.
  return step_from(p, min_len, std::atan2(50.0 - p.y, 50.0 - p.x));
}

// A walk of passes starting at `start`. Receptions are sometimes followed by a
// short carry before the next emission.
std::vector<RawPass> random_walk(Rng& rng, Pt start, int n_passes, double heading) {
  std::vector<RawPass> passes;
  Pt at = start;
  for (int k = 0; k < n_passes; ++k) {
    if (k > 0 && rng.uniform() < 0.5) at = random_step(rng, at, 0.5, 4.0, heading);
    const Pt to = random_step(rng, at, 8.0, 20.0, heading);
    passes.push_back({at, to});
    at = to;
  }
  return passes;
}

std::vector<RawPass> reversed_walk(Rng& rng, Pt end, int n_passes) {
  auto walk = random_walk(rng, end, n_passes, std::numbers::pi);
  std::reverse(walk.begin(), walk.end());
  for (auto& p : walk) std::swap(p.from, p.to);
  return walk;
}

// Node chain whose densified form has exactly `points` positions: odd pass
// lengths keep the segment count stable under sub-unit jitter.
std::vector<Pt> make_template(Rng& rng, int points) {
  std::vector<int> segments;
  for (int remaining = points - 1; remaining > 0; remaining -= segments.back()) {
    segments.push_back(std::min(remaining, 7));
  }
  for (int attempt = 0;; ++attempt) {
    std::vector<Pt> nodes{{rng.uniform(10.0, 40.0), rng.uniform(15.0, 85.0)}};
    bool ok = true;
    for (int n : segments) {
      const double len = 2.0 * n - 1.0;
      Pt next{};
      bool placed = false;
      for (int tries = 0; tries < 50 && !placed; ++tries) {
        next = step_from(nodes.back(), len, rng.uniform(-0.6 * std::numbers::pi, 0.6 * std::numbers::pi));
        placed = next.x >= kLo + 2 && next.x <= kHi - 2 && next.y >= kLo + 2 && next.y <= kHi - 2;
      }
      if (!placed) {
        ok = false;
        break;
      }
      nodes.push_back(next);
    }
    if (ok || attempt > 1000) return nodes;
  }
}

std::string team_name(int t) {
  std::string n = std::to_string(t + 1);
  if (n.size() < 2) n.insert(0, "0");
  return "T" + n;
}

std::string game_name(int g) {
  std::string n = std::to_string(g + 1);
  if (n.size() < 2) n.insert(0, "0");
  return "g" + n;
}

std::string player_name(const std::string& team, int k) {
  return team + "p" + std::to_string(k + 1);
}

}  // namespace

void SynthParams::validate() const {
  if (n_teams < 1 || n_games < 1 || possessions_per_game < 1) {
    throw ConfigError("synth needs at least one team, game and possession");
  }
  if (min_passes < 1 || max_passes < min_passes) throw ConfigError("synth pass range is invalid");
  if (planted_teams < 0 || planted_teams > n_teams) throw ConfigError("synth.planted_teams out of range");
  if (plant_copies < 0 || plant_copies > n_games * possessions_per_game) {
    throw ConfigError("synth.plant_copies exceeds the possessions of a team");
  }
  if (!(jitter >= 0.0 && jitter < 1.0)) throw ConfigError("synth.jitter must be in [0, 1)");
  if (template_points < 2) throw ConfigError("synth.template_points must be >= 2");
  if (!(length_m > 0.0 && width_m > 0.0)) throw ConfigError("synth field must be positive");
  if (null_season) {
    if (!(null_separation > 0.0)) throw ConfigError("null separation must be > 0");
    const int per_team = n_games * possessions_per_game;
    if ((per_team - 1) * null_separation > kHi - kLo) {
      throw ConfigError("null season: too many possessions per team for the band separation");
    }
  }
}

SynthSeason generate_season(const SynthParams& p) {
  p.validate();
  Rng rng(p.seed);
  SynthSeason season;
  season.truth.seed = p.seed;

  const int per_team = p.n_games * p.possessions_per_game;
  const bool plant = !p.null_season && p.plant_copies > 0;

  std::vector<Pt> tmpl;
  std::vector<std::vector<bool>> hosts(p.n_teams, std::vector<bool>(per_team, false));
  if (plant) {
    tmpl = make_template(rng, p.template_points);
    for (int t = 0; t < p.planted_teams; ++t) {
      std::vector<int> order(per_team);
      for (int k = 0; k < per_team; ++k) order[k] = k;
      for (int k = per_team - 1; k > 0; --k) std::swap(order[k], order[rng.below(k + 1)]);
      for (int c = 0; c < p.plant_copies; ++c) hosts[t][order[c]] = true;
    }
  }

  const double sx = p.length_m / 100.0;
  const double sy = p.width_m / 100.0;
  const int first_half = (p.possessions_per_game + 1) / 2;

  for (int g = 0; g < p.n_games; ++g) {
    const std::string game = game_name(g);
    double clock = 0.0;
    for (int s = 0; s < p.possessions_per_game; ++s) {
      const int period = s < first_half ? 1 : 2;
      if (s == first_half) clock = 0.0;
      for (int t = 0; t < p.n_teams; ++t) {
        const std::string team = team_name(t);
        const int q = g * p.possessions_per_game + s;
        const int n_passes = p.min_passes + rng.below(p.max_passes - p.min_passes + 1);

        std::vector<RawPass> passes;
        int plant_first = -1;
        int plant_last = -1;
        if (p.null_season) {
          const double y = kLo + q * p.null_separation;
          Pt at{rng.uniform(kLo, kLo + 4.0), y};
          while (true) {
            const double len = rng.uniform(8.0, 16.0);
            if (at.x + len > kHi) break;
            passes.push_back({at, {at.x + len, y}});
            at = passes.back().to;
          }
        } else if (hosts[t][q]) {
          std::vector<Pt> nodes = tmpl;
          const double jj = p.jitter / std::numbers::sqrt2;
          for (auto& n : nodes) {
            n.x += rng.uniform(-jj, jj);
            n.y += rng.uniform(-jj, jj);
          }
          const int template_passes = static_cast<int>(nodes.size()) - 1;
          const int extra = std::max(2, n_passes - template_passes);
          const int before = 1 + rng.below(extra - 1);
          passes = reversed_walk(rng, nodes.front(), before);
          plant_first = static_cast<int>(passes.size());
          for (std::size_t k = 0; k + 1 < nodes.size(); ++k) passes.push_back({nodes[k], nodes[k + 1]});
          plant_last = static_cast<int>(passes.size()) - 1;
          const auto after = random_walk(rng, nodes.back(), extra - before, 0.0);
          passes.insert(passes.end(), after.begin(), after.end());
        } else {
          passes = random_walk(rng, {rng.uniform(10.0, 90.0), rng.uniform(10.0, 90.0)}, n_passes, 0.0);
        }

        std::vector<std::string> players;
        for (int k = 0; k < 11; ++k) players.push_back(player_name(team, k));
        int holder = rng.below(11);
        const std::string possession = game + "-" + team + "-" + std::to_string(s);
        double time = clock;
        for (std::size_t k = 0; k < passes.size(); ++k) {
          const auto& rp = passes[k];
          if (k > 0) {
            const Pt prev = passes[k - 1].to;
            const double carry = std::hypot((rp.from.x - prev.x) * sx, (rp.from.y - prev.y) * sy);
            time += 0.5 + carry / 5.0;
          }
          const double len_m = std::hypot((rp.to.x - rp.from.x) * sx, (rp.to.y - rp.from.y) * sy);
          const double duration = len_m / rng.uniform(10.0, 18.0);
          int receiver = rng.below(10);
          if (receiver >= holder) ++receiver;
          PassEvent e;
          e.game_id = game;
          e.team_id = team;
          e.period = period;
          e.t_start = time;
          e.t_end = time + duration;
          e.x_start = rp.from.x * sx;
          e.y_start = rp.from.y * sy;
          e.x_end = rp.to.x * sx;
          e.y_end = rp.to.y * sy;
          e.passer_id = players[holder];
          e.receiver_id = players[receiver];
          e.possession_id = possession;
          e.completed = true;
          season.events.push_back(std::move(e));
          time += duration;
          holder = receiver;
        }
        clock = time + rng.uniform(20.0, 40.0);

        if (plant_first >= 0) {
          season.truth.plants.push_back(
              {team, make_seq_id(game, team, static_cast<std::size_t>(s)), plant_first, plant_last});
        }
      }
    }
  }

  auto& plants = season.truth.plants;
  std::stable_sort(plants.begin(), plants.end(), [](const PlantRecord& a, const PlantRecord& b) {
    return std::tie(a.team_id, a.seq_id) < std::tie(b.team_id, b.seq_id);
  });
  for (std::size_t a = 0; a < plants.size(); ++a) {
    for (std::size_t b = a + 1; b < plants.size(); ++b) {
      if (plants[a].team_id == plants[b].team_id) {
        season.truth.pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return season;
}

std::string ground_truth_to_json(const GroundTruth& truth) {
  using nlohmann::json;
  json j;
  j["seed"] = truth.seed;
  json plants = json::array();
  for (const auto& p : truth.plants) {
    plants.push_back({{"team_id", p.team_id},
                      {"seq_id", p.seq_id},
                      {"first_pass", p.first_pass},
                      {"last_pass", p.last_pass}});
  }
  j["plants"] = std::move(plants);
  json pairs = json::array();
  for (const auto& [a, b] : truth.pairs) pairs.push_back(json::array({a, b}));
  j["pairs"] = std::move(pairs);
  return j.dump(1) + "\n";
}

GroundTruth ground_truth_from_json(std::string_view text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    GroundTruth truth;
    truth.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& p : j.at("plants")) {
      truth.plants.push_back({p.at("team_id").get<std::string>(), p.at("seq_id").get<std::string>(),
                              p.at("first_pass").get<int>(), p.at("last_pass").get<int>()});
    }
    for (const auto& pr : j.at("pairs")) truth.pairs.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
    return truth;
  } catch (const json::exception& e) {
    throw SchemaError(0, std::string("ground truth: ") + e.what());
  }
}

}  // namespace pitchmotif
