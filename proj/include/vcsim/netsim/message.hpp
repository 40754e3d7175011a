#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vcsim/core/error.hpp"

namespace vcsim::netsim {

// Wire framing, little-endian: u32 body length | u8 type | body.
inline constexpr std::size_t kFramingBytes = 5;

enum class MessageType : std::uint8_t { FrameUpload = 1, DetectionRecord = 2, Ack = 3, Control = 4 };

std::string_view to_string(MessageType t) noexcept;

enum class WireErrc { Truncated, BadType, TrailingBytes, UnknownLink, UnknownNode, BadTopology };
using WireError = Error<WireErrc>;

struct Message {
    MessageType type = MessageType::Control;
    std::vector<std::uint8_t> body;

    std::size_t wire_size() const noexcept { return kFramingBytes + body.size(); }
    friend bool operator==(const Message&, const Message&) = default;
};

std::vector<std::uint8_t> encode_message(const Message& msg);
/// Exactly one framed message; throws WireError.
Message decode_message(std::span<const std::uint8_t> bytes);

} // namespace vcsim::netsim
