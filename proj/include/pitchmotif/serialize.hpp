#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pitchmotif/discovery.hpp"
#include "pitchmotif/preprocess.hpp"

namespace pitchmotif {

// Stable JSON documents exchanged between pipeline stages. Keys are sorted
// and numbers use the shortest round-trip representation, so equal inputs
// give byte-identical files.

std::string discovery_to_json(const DiscoveryResult& result);
DiscoveryResult discovery_from_json(std::string_view text);

std::string sequences_to_json(std::span<const DensifiedSequence> seqs);
std::vector<DensifiedSequence> sequences_from_json(std::string_view text);

std::string params_to_json(const MatchParams& params);

}  // namespace pitchmotif
