#pragma once

#include <bit>
#include <cstdint>

#include "vcsim/core/types.hpp"

namespace vcsim::edge {

/// Average hash: box-average onto an 8x8 grid (integer floor), then bit = 1
/// for cells >= the 64-cell mean, packed row-major MSB first.
std::uint64_t phash(const GeoFrame& frame);

inline int hamming(std::uint64_t a, std::uint64_t b) noexcept { return std::popcount(a ^ b); }

} // namespace vcsim::edge
