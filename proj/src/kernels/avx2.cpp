// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "vcsim/kernels/kernels.hpp"

namespace vcsim::kernels::avx2 {

namespace {
constexpr std::size_t kLanes = 32;

inline __m256i load(const std::uint8_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

// 0xFF where v >= t (unsigned), else 0x00.
inline __m256i ge_mask(__m256i v, __m256i t) {
    return _mm256_cmpeq_epi8(_mm256_max_epu8(v, t), v);
}
} // namespace

std::uint64_t sum_u8(std::span<const std::uint8_t> src) noexcept {
    const std::uint8_t* p = src.data();
    const std::size_t n = src.size();
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = zero;
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(load(p + i), zero));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) {
        total += p[i];
    }
    return total;
}

std::size_t count_at_least(std::span<const std::uint8_t> src, std::uint8_t threshold) noexcept {
    const std::uint8_t* p = src.data();
    const std::size_t n = src.size();
    const __m256i t = _mm256_set1_epi8(static_cast<char>(threshold));
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const auto bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(ge_mask(load(p + i), t)));
        count += static_cast<std::size_t>(std::popcount(bits));
    }
    for (; i < n; ++i) {
        count += p[i] >= threshold ? 1 : 0;
    }
    return count;
}

void binarize(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst, std::uint8_t threshold) noexcept {
    const std::uint8_t* p = src.data();
    std::uint8_t* q = dst.data();
    const std::size_t n = src.size();
    const __m256i t = _mm256_set1_epi8(static_cast<char>(threshold));
    const __m256i one = _mm256_set1_epi8(1);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256i m = _mm256_and_si256(ge_mask(load(p + i), t), one);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(q + i), m);
    }
    for (; i < n; ++i) {
        q[i] = p[i] >= threshold ? 1 : 0;
    }
}

} // namespace vcsim::kernels::avx2
