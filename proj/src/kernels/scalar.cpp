#include "vcsim/kernels/kernels.hpp"

namespace vcsim::kernels::scalar {

std::uint64_t sum_u8(std::span<const std::uint8_t> src) noexcept {
    std::uint64_t total = 0;
    for (auto v : src) {
        total += v;
    }
    return total;
}

std::size_t count_at_least(std::span<const std::uint8_t> src, std::uint8_t threshold) noexcept {
    std::size_t n = 0;
    for (auto v : src) {
        n += v >= threshold ? 1 : 0;
    }
    return n;
}

void binarize(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst, std::uint8_t threshold) noexcept {
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = src[i] >= threshold ? 1 : 0;
    }
}

} // namespace vcsim::kernels::scalar
