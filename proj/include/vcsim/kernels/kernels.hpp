#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Byte-image inner loops shared by the perceptual hash and the extractors.
// Every kernel has a scalar reference in vcsim::kernels::scalar; the
// top-level functions dispatch to the widest variant the CPU supports.
namespace vcsim::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;
/// Variant used by the dispatching entry points.
Isa active_isa() noexcept;
/// Pins dispatch to `isa`; returns false (and changes nothing) if unsupported.
bool force_isa(Isa isa) noexcept;
/// Back to automatic selection.
void reset_isa() noexcept;

/// Sum of all bytes.
std::uint64_t sum_u8(std::span<const std::uint8_t> src) noexcept;
/// Number of bytes >= threshold.
std::size_t count_at_least(std::span<const std::uint8_t> src, std::uint8_t threshold) noexcept;
/// dst[i] = src[i] >= threshold ? 1 : 0. dst.size() must be >= src.size().
void binarize(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst, std::uint8_t threshold) noexcept;

namespace scalar {
std::uint64_t sum_u8(std::span<const std::uint8_t> src) noexcept;
std::size_t count_at_least(std::span<const std::uint8_t> src, std::uint8_t threshold) noexcept;
void binarize(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst, std::uint8_t threshold) noexcept;
} // namespace scalar

#if defined(VCSIM_HAVE_AVX2)
namespace avx2 {
std::uint64_t sum_u8(std::span<const std::uint8_t> src) noexcept;
std::size_t count_at_least(std::span<const std::uint8_t> src, std::uint8_t threshold) noexcept;
void binarize(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst, std::uint8_t threshold) noexcept;
} // namespace avx2
#endif

} // namespace vcsim::kernels
