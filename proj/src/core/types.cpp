#include "vcsim/core/types.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "vcsim/core/digest.hpp"
#include "vcsim/core/frame_codec.hpp"

namespace vcsim {

GpsFix GpsFix::from_degrees(double lat, double lon, std::int64_t timestamp_ms) {
    return GpsFix{static_cast<std::int32_t>(std::llround(lat * 1e7)),
                  static_cast<std::int32_t>(std::llround(lon * 1e7)), timestamp_ms};
}

bool GpsFix::valid() const noexcept {
    return std::abs(static_cast<std::int64_t>(lat_e7)) <= kMaxLatE7 &&
           std::abs(static_cast<std::int64_t>(lon_e7)) <= kMaxLonE7 && timestamp_ms >= 0;
}

std::string FrameId::hex() const { return to_hex64(value); }
std::string BlobDigest::hex() const { return to_hex64(value); }

bool GeoFrame::valid() const noexcept {
    return width >= 1 && width <= kMaxFrameSide && height >= 1 && height <= kMaxFrameSide &&
           pixels.size() == static_cast<std::size_t>(width) * height && fix.valid();
}

FrameId GeoFrame::frame_id() const { return FrameId{fnv1a64(encode_frame(*this))}; }

bool PlateCode::valid_char(char c) noexcept {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

std::optional<PlateCode> PlateCode::parse(std::string_view text) {
    if (text.size() != kLength) {
        return std::nullopt;
    }
    for (char c : text) {
        if (!valid_char(c)) {
            return std::nullopt;
        }
    }
    return PlateCode(std::string(text));
}

std::optional<FaceCode> FaceCode::make(long long code) {
    if (code < 0 || code >= kLimit) {
        return std::nullopt;
    }
    return FaceCode(static_cast<std::uint16_t>(code));
}

std::string_view to_string(DetectionKind kind) noexcept {
    switch (kind) {
    case DetectionKind::Plate: return "plate";
    case DetectionKind::Face: return "face";
    case DetectionKind::Gps: return "gps";
    }
    return "gps";
}

std::optional<DetectionKind> parse_detection_kind(std::string_view text) noexcept {
    if (text == "plate") return DetectionKind::Plate;
    if (text == "face") return DetectionKind::Face;
    if (text == "gps") return DetectionKind::Gps;
    return std::nullopt;
}

DetectionKind kind_of(const TargetValue& v) noexcept {
    return std::holds_alternative<PlateCode>(v) ? DetectionKind::Plate : DetectionKind::Face;
}

DetectionKind kind_of(const DetectionValue& v) noexcept {
    if (std::holds_alternative<PlateCode>(v)) return DetectionKind::Plate;
    if (std::holds_alternative<FaceCode>(v)) return DetectionKind::Face;
    return DetectionKind::Gps;
}

std::string value_string(const TargetValue& v) {
    if (auto* p = std::get_if<PlateCode>(&v)) {
        return p->str();
    }
    return std::to_string(std::get<FaceCode>(v).value());
}

std::string value_string(const DetectionValue& v) {
    if (auto* p = std::get_if<PlateCode>(&v)) {
        return p->str();
    }
    if (auto* f = std::get_if<FaceCode>(&v)) {
        return std::to_string(f->value());
    }
    return {};
}

DetectionValue to_detection_value(const TargetValue& v) {
    return std::visit([](const auto& x) -> DetectionValue { return x; }, v);
}

std::optional<TargetValue> parse_target_value(DetectionKind kind, std::string_view text) {
    switch (kind) {
    case DetectionKind::Plate:
        if (auto p = PlateCode::parse(text)) return TargetValue{*p};
        return std::nullopt;
    case DetectionKind::Face: {
        long long code = -1;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), code);
        if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
        if (auto f = FaceCode::make(code)) return TargetValue{*f};
        return std::nullopt;
    }
    case DetectionKind::Gps:
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace vcsim
