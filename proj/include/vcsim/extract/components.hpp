#pragma once

#include <cstdint>
#include <vector>

#include "vcsim/core/types.hpp"

namespace vcsim::extract {

struct BoundingBox {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    double aspect() const noexcept { return h > 0 ? static_cast<double>(w) / h : 0.0; }
    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct Component {
    int label = 0;
    std::size_t pixels = 0;
    BoundingBox raw;  // extent of every pixel in the component
    BoundingBox box;  // extent after trimming sparse edge rows/columns
};

/// 4-connected components of pixels >= threshold. Components whose raw box
/// is smaller than min_side on either axis are skipped. Each reported box
/// has sparse edge rows/columns (under a quarter of the opposite extent)
/// peeled off, so isolated noise touching a solid outline does not widen it.
std::vector<Component> find_components(const GeoFrame& frame, std::uint8_t threshold, int min_side);

/// Fraction of pixels >= threshold inside the `thickness`-wide ring that
/// starts `offset` pixels in from the edge of box.
double ring_fill(const GeoFrame& frame, const BoundingBox& box, int offset, int thickness, std::uint8_t threshold);

/// Majority vote over a w x h block: true when at least half the pixels are
/// >= threshold.
bool block_majority(const GeoFrame& frame, int x, int y, int w, int h, std::uint8_t threshold);

} // namespace vcsim::extract
