#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "discovery/kernel.hpp"
#include "pitchmotif/discovery.hpp"
#include "pitchmotif/errors.hpp"

namespace pitchmotif {

namespace {

double overlap_ratio(const Segment& l, const Segment& r) {
  if (l.seq_id != r.seq_id) return 0.0;
  const int lo = std::max(l.start_idx, r.start_idx);
  const int hi = std::min(l.end_idx, r.end_idx);
  if (hi < lo) return 0.0;
  return static_cast<double>(hi - lo + 1) / std::min(l.size(), r.size());
}

bool duplicates(const PatternMatch& l, const PatternMatch& r, double threshold) {
  const bool straight = overlap_ratio(l.reference, r.reference) >= threshold &&
                        overlap_ratio(l.found, r.found) >= threshold;
  const bool crossed = overlap_ratio(l.reference, r.found) >= threshold &&
                       overlap_ratio(l.found, r.reference) >= threshold;
  return straight || crossed;
}

// Keeps the longer (then closer) of any two matches whose segment pairs
// overlap by at least `threshold`.
std::vector<PatternMatch> dedupe(std::vector<PatternMatch> matches, double threshold) {
  std::sort(matches.begin(), matches.end(), [](const PatternMatch& l, const PatternMatch& r) {
    const int ls = l.reference.size() + l.found.size();
    const int rs = r.reference.size() + r.found.size();
    if (ls != rs) return ls > rs;
    if (l.mean_distance != r.mean_distance) return l.mean_distance < r.mean_distance;
    return canonical_less(l, r);
  });
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> kept_by_pair;
  std::vector<PatternMatch> out;
  for (auto& m : matches) {
    auto key = std::minmax(m.reference.seq_id, m.found.seq_id);
    auto& kept = kept_by_pair[{key.first, key.second}];
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return duplicates(out[k], m, threshold);
    });
    if (dup) continue;
    kept.push_back(out.size());
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

DiscoveryResult discover_team(std::span<const DensifiedSequence> seqs, const MatchParams& params,
                              int jobs) {
  params.validate();
  DiscoveryResult result;
  result.params = params;
  result.params_hash = hash_params(params);
  result.dataset_hash = hash_sequences(seqs);
  result.n_sequences = static_cast<int>(seqs.size());
  if (!seqs.empty()) result.team_id = seqs.front().team_id;
  for (const auto& s : seqs) {
    if (s.team_id != result.team_id) {
      throw Error("discover_team: sequences of teams " + result.team_id + " and " + s.team_id +
                  " mixed");
    }
    result.n_team_passes += static_cast<int>(s.n_passes());
  }

  std::vector<const DensifiedSequence*> sorted;
  for (const auto& s : seqs) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* l, const auto* r) { return l->seq_id < r->seq_id; });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k]->seq_id == sorted[k - 1]->seq_id) {
      throw Error("discover_team: duplicate seq_id " + sorted[k]->seq_id);
    }
  }

  std::vector<detail::PreparedSequence> prepared;
  prepared.reserve(sorted.size());
  for (const auto* s : sorted) prepared.push_back(detail::prepare(*s));

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  const auto n = static_cast<std::uint32_t>(prepared.size());
  pairs.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (std::uint32_t p = 0; p < n; ++p) {
    for (std::uint32_t q = p; q < n; ++q) pairs.emplace_back(p, q);
  }

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(1, pairs.size()))));
  std::vector<std::vector<PatternMatch>> partial(static_cast<std::size_t>(workers));
  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 64;

  auto work = [&](int w) {
    detail::PairKernel kernel;
    auto& sink = partial[static_cast<std::size_t>(w)];
    while (true) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= pairs.size()) break;
      const std::size_t end = std::min(pairs.size(), begin + kChunk);
      for (std::size_t k = begin; k < end; ++k) {
        auto found = detail::match_prepared(prepared[pairs[k].first], prepared[pairs[k].second],
                                            params, kernel);
        std::move(found.begin(), found.end(), std::back_inserter(sink));
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  std::vector<PatternMatch> all;
  for (auto& part : partial) std::move(part.begin(), part.end(), std::back_inserter(all));
  all = dedupe(std::move(all), params.dedupe_overlap);
  std::sort(all.begin(), all.end(), canonical_less);
  result.matches = std::move(all);
  return result;
}

}  // namespace pitchmotif
