#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vcsim {

inline constexpr std::int32_t kMaxLatE7 = 900'000'000;
inline constexpr std::int32_t kMaxLonE7 = 1'800'000'000;

/// Position in degrees x 1e7 plus Unix epoch milliseconds.
struct GpsFix {
    std::int32_t lat_e7 = 0;
    std::int32_t lon_e7 = 0;
    std::int64_t timestamp_ms = 0;

    static GpsFix from_degrees(double lat, double lon, std::int64_t timestamp_ms);
    double lat_deg() const noexcept { return lat_e7 / 1e7; }
    double lon_deg() const noexcept { return lon_e7 / 1e7; }
    bool valid() const noexcept;

    friend bool operator==(const GpsFix&, const GpsFix&) = default;
};

/// Content digest of an encoded frame.
struct FrameId {
    std::uint64_t value = 0;
    std::string hex() const;
    friend auto operator<=>(const FrameId&, const FrameId&) = default;
};

/// Content digest of a stored blob.
struct BlobDigest {
    std::uint64_t value = 0;
    std::string hex() const;
    friend auto operator<=>(const BlobDigest&, const BlobDigest&) = default;
};

inline constexpr int kMaxFrameSide = 4096;

/// One captured grayscale image with its geotag.
struct GeoFrame {
    std::uint64_t vehicle_id = 0;
    bool has_gps = true;
    GpsFix fix;
    std::uint16_t width = 0;
    std::uint16_t height = 0;
    std::vector<std::uint8_t> pixels; // row-major, top-left origin

    bool valid() const noexcept;
    std::uint8_t at(int x, int y) const noexcept { return pixels[static_cast<std::size_t>(y) * width + x]; }
    /// FNV-1a of the encoded GFRM bytes.
    FrameId frame_id() const;

    friend bool operator==(const GeoFrame&, const GeoFrame&) = default;
};

/// Seven characters from [A-Z0-9].
class PlateCode {
public:
    static constexpr std::size_t kLength = 7;
    static std::optional<PlateCode> parse(std::string_view text);
    static bool valid_char(char c) noexcept;

    PlateCode() : code_(kLength, '0') {}

    const std::string& str() const noexcept { return code_; }
    friend auto operator<=>(const PlateCode&, const PlateCode&) = default;

private:
    explicit PlateCode(std::string code) : code_(std::move(code)) {}
    std::string code_;
};

/// 12-bit synthetic face code.
class FaceCode {
public:
    static constexpr int kLimit = 4096;
    static std::optional<FaceCode> make(long long code);

    FaceCode() = default;

    std::uint16_t value() const noexcept { return code_; }
    friend auto operator<=>(const FaceCode&, const FaceCode&) = default;

private:
    explicit FaceCode(std::uint16_t code) : code_(code) {}
    std::uint16_t code_ = 0;
};

enum class DetectionKind : std::uint8_t { Plate, Face, Gps };

std::string_view to_string(DetectionKind kind) noexcept;
std::optional<DetectionKind> parse_detection_kind(std::string_view text) noexcept;

/// Something a watchlist entry or scene item can carry.
using TargetValue = std::variant<PlateCode, FaceCode>;
/// Detection payload; monostate for kind=gps.
using DetectionValue = std::variant<std::monostate, PlateCode, FaceCode>;

DetectionKind kind_of(const TargetValue& v) noexcept;
DetectionKind kind_of(const DetectionValue& v) noexcept;
/// Canonical text form: the plate string, the decimal face code, or "".
std::string value_string(const TargetValue& v);
std::string value_string(const DetectionValue& v);
DetectionValue to_detection_value(const TargetValue& v);
/// Parses a value in the domain of `kind` (plate or face).
std::optional<TargetValue> parse_target_value(DetectionKind kind, std::string_view text);

struct Detection {
    std::uint64_t detection_id = 0; // assigned by the store; 0 until persisted
    DetectionValue value;
    GpsFix fix;
    FrameId source_frame;
    std::optional<BlobDigest> crop_blob;
    std::string worker_id;
    std::int64_t detected_at_ms = 0;

    DetectionKind kind() const noexcept { return kind_of(value); }
    friend bool operator==(const Detection&, const Detection&) = default;
};

struct WatchlistEntry {
    std::uint64_t entry_id = 0;
    TargetValue value;
    std::string label;
    std::int64_t created_at_ms = 0;

    DetectionKind kind() const noexcept { return kind_of(value); }
    friend bool operator==(const WatchlistEntry&, const WatchlistEntry&) = default;
};

struct MatchEvent {
    std::uint64_t match_id = 0; // position in the global match sequence, from 1
    std::uint64_t entry_id = 0;
    std::uint64_t detection_id = 0;
    GpsFix fix;
    std::int64_t matched_at_ms = 0;

    friend bool operator==(const MatchEvent&, const MatchEvent&) = default;
};

} // namespace vcsim
