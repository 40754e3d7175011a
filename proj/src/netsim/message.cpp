#include "vcsim/netsim/message.hpp"

namespace vcsim::netsim {

std::string_view to_string(MessageType t) noexcept {
    switch (t) {
    case MessageType::FrameUpload: return "FRAME_UPLOAD";
    case MessageType::DetectionRecord: return "DETECTION_RECORD";
    case MessageType::Ack: return "ACK";
    case MessageType::Control: return "CONTROL";
    }
    return "UNKNOWN";
}

std::vector<std::uint8_t> encode_message(const Message& msg) {
    std::vector<std::uint8_t> out;
    out.reserve(msg.wire_size());
    const auto len = static_cast<std::uint32_t>(msg.body.size());
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
    }
    out.push_back(static_cast<std::uint8_t>(msg.type));
    out.insert(out.end(), msg.body.begin(), msg.body.end());
    return out;
}

Message decode_message(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kFramingBytes) {
        throw WireError(WireErrc::Truncated, "message shorter than framing header");
    }
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i) {
        len |= static_cast<std::uint32_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
    }
    const std::uint8_t type = bytes[4];
    if (type < 1 || type > 4) {
        throw WireError(WireErrc::BadType, "unknown message type " + std::to_string(type));
    }
    if (bytes.size() < kFramingBytes + len) {
        throw WireError(WireErrc::Truncated, "message body truncated");
    }
    if (bytes.size() > kFramingBytes + len) {
        throw WireError(WireErrc::TrailingBytes, "bytes after message body");
    }
    Message msg;
    msg.type = static_cast<MessageType>(type);
    msg.body.assign(bytes.begin() + kFramingBytes, bytes.end());
    return msg;
}

} // namespace vcsim::netsim
