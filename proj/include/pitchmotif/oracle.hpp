#pragma once

#include <vector>

#include "pitchmotif/discovery.hpp"

namespace pitchmotif {

/// Reference implementation of find_matches by exhaustive enumeration of
/// every admissible warping path. Throws SizeError when |a|*|b| > 10000.
std::vector<PatternMatch> brute_force_oracle(const DensifiedSequence& a, const DensifiedSequence& b,
                                             const MatchParams& params);

}  // namespace pitchmotif
