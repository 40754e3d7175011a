#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vcsim/core/error.hpp"
#include "vcsim/core/types.hpp"

namespace vcsim {

// GFRM container, little-endian:
//   0 magic "GFRM" | 4 version u8 | 5 flags u8 (bit0 has_gps) | 6 vehicle_id u64
//   14 timestamp_ms u64 | 22 lat_e7 i32 | 26 lon_e7 i32 | 30 width u16
//   32 height u16 | 34 pixels
inline constexpr std::size_t kFrameHeaderSize = 34;
inline constexpr std::uint8_t kFrameVersion = 1;
inline constexpr std::uint8_t kFlagHasGps = 0x01;

enum class FrameErrc { BadMagic, BadVersion, Truncated, OutOfRange, InvalidFrame };
using FrameError = Error<FrameErrc>;

constexpr std::size_t encoded_frame_size(std::size_t width, std::size_t height) noexcept {
    return kFrameHeaderSize + width * height;
}

/// Throws FrameError{InvalidFrame} if the frame violates its invariants.
std::vector<std::uint8_t> encode_frame(const GeoFrame& frame);

/// Bytes past the pixel block are ignored.
GeoFrame decode_frame(std::span<const std::uint8_t> bytes);

} // namespace vcsim
