#include "vcsim/core/frame_codec.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <limits>

namespace vcsim {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'G', 'F', 'R', 'M'};

template <typename T>
void put_le(std::uint8_t* out, T value) {
    auto u = static_cast<std::make_unsigned_t<T>>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out[i] = static_cast<std::uint8_t>(u >> (8 * i));
    }
}

template <typename T>
T get_le(const std::uint8_t* in) {
    std::make_unsigned_t<T> u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        u |= static_cast<std::make_unsigned_t<T>>(in[i]) << (8 * i);
    }
    return static_cast<T>(u);
}

} // namespace

std::vector<std::uint8_t> encode_frame(const GeoFrame& frame) {
    if (!frame.valid()) {
        throw FrameError(FrameErrc::InvalidFrame, "encode_frame: frame invariants violated");
    }
    std::vector<std::uint8_t> out(encoded_frame_size(frame.width, frame.height));
    std::copy(kMagic.begin(), kMagic.end(), out.begin());
    out[4] = kFrameVersion;
    out[5] = frame.has_gps ? kFlagHasGps : 0;
    put_le<std::uint64_t>(&out[6], frame.vehicle_id);
    put_le<std::uint64_t>(&out[14], static_cast<std::uint64_t>(frame.fix.timestamp_ms));
    put_le<std::int32_t>(&out[22], frame.fix.lat_e7);
    put_le<std::int32_t>(&out[26], frame.fix.lon_e7);
    put_le<std::uint16_t>(&out[30], frame.width);
    put_le<std::uint16_t>(&out[32], frame.height);
    std::copy(frame.pixels.begin(), frame.pixels.end(), out.begin() + kFrameHeaderSize);
    return out;
}

GeoFrame decode_frame(std::span<const std::uint8_t> bytes) {
    if (bytes.size() >= kMagic.size() && !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
        throw FrameError(FrameErrc::BadMagic, "decode_frame: bad magic");
    }
    if (bytes.size() < kFrameHeaderSize) {
        throw FrameError(FrameErrc::Truncated, "decode_frame: shorter than header");
    }
    if (bytes[4] != kFrameVersion) {
        throw FrameError(FrameErrc::BadVersion, "decode_frame: unsupported version");
    }
    const std::uint8_t flags = bytes[5];
    if ((flags & ~kFlagHasGps) != 0) {
        throw FrameError(FrameErrc::OutOfRange, "decode_frame: reserved flag bits set");
    }

    GeoFrame frame;
    frame.has_gps = (flags & kFlagHasGps) != 0;
    frame.vehicle_id = get_le<std::uint64_t>(&bytes[6]);
    const auto ts = get_le<std::uint64_t>(&bytes[14]);
    if (ts > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        throw FrameError(FrameErrc::OutOfRange, "decode_frame: timestamp out of range");
    }
    frame.fix.timestamp_ms = static_cast<std::int64_t>(ts);
    frame.fix.lat_e7 = get_le<std::int32_t>(&bytes[22]);
    frame.fix.lon_e7 = get_le<std::int32_t>(&bytes[26]);
    frame.width = get_le<std::uint16_t>(&bytes[30]);
    frame.height = get_le<std::uint16_t>(&bytes[32]);
    if (!frame.fix.valid()) {
        throw FrameError(FrameErrc::OutOfRange, "decode_frame: coordinates out of range");
    }
    if (frame.width < 1 || frame.width > kMaxFrameSide || frame.height < 1 || frame.height > kMaxFrameSide) {
        throw FrameError(FrameErrc::OutOfRange, "decode_frame: dimensions out of range");
    }
    const std::size_t need = encoded_frame_size(frame.width, frame.height);
    if (bytes.size() < need) {
        throw FrameError(FrameErrc::Truncated, "decode_frame: pixel block truncated");
    }
    frame.pixels.assign(bytes.begin() + kFrameHeaderSize, bytes.begin() + static_cast<std::ptrdiff_t>(need));
    return frame;
}

} // namespace vcsim
