#include "vcsim/edge/phash.hpp"

#include <algorithm>
#include <array>
#include <span>

#include "vcsim/kernels/kernels.hpp"

namespace vcsim::edge {

namespace {
constexpr int kGrid = 8;

// Cell i spans [i*n/8, (i+1)*n/8), widened to one pixel when n < 8.
std::pair<int, int> cell_span(int i, int n) {
    int lo = i * n / kGrid;
    int hi = (i + 1) * n / kGrid;
    if (hi <= lo) {
        lo = std::min(lo, n - 1);
        hi = lo + 1;
    }
    return {lo, hi};
}
} // namespace

std::uint64_t phash(const GeoFrame& frame) {
    std::array<std::uint64_t, kGrid * kGrid> cells{};
    const std::span<const std::uint8_t> pixels(frame.pixels);
    for (int cy = 0; cy < kGrid; ++cy) {
        const auto [y0, y1] = cell_span(cy, frame.height);
        for (int cx = 0; cx < kGrid; ++cx) {
            const auto [x0, x1] = cell_span(cx, frame.width);
            std::uint64_t sum = 0;
            for (int y = y0; y < y1; ++y) {
                sum += kernels::sum_u8(pixels.subspan(static_cast<std::size_t>(y) * frame.width + x0,
                                                      static_cast<std::size_t>(x1 - x0)));
            }
            cells[static_cast<std::size_t>(cy * kGrid + cx)] =
                sum / static_cast<std::uint64_t>((y1 - y0) * (x1 - x0));
        }
    }
    std::uint64_t total = 0;
    for (auto c : cells) {
        total += c;
    }
    // c >= total/64 without rounding the mean.
    std::uint64_t hash = 0;
    for (auto c : cells) {
        hash = (hash << 1) | (c * kGrid * kGrid >= total ? 1u : 0u);
    }
    return hash;
}

} // namespace vcsim::edge
