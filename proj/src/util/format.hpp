#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pitchmotif::util {

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// Fixed-point with `digits` decimals, independent of the global locale.
std::string format_fixed(double v, int digits);

std::vector<std::string_view> split(std::string_view line, char sep);
std::string_view trim(std::string_view s);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view data);

}  // namespace pitchmotif::util
