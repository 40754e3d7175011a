#include "vcsim/core/json_io.hpp"

#include <stdexcept>

#include "vcsim/core/digest.hpp"

namespace vcsim {

using nlohmann::json;

namespace {

std::uint64_t hex_field(const json& j, const char* key) {
    auto v = parse_hex64(j.at(key).get<std::string>());
    if (!v) {
        throw std::invalid_argument(std::string("bad hex digest in field ") + key);
    }
    return *v;
}

DetectionValue detection_value_from_json(DetectionKind kind, const json& j) {
    if (kind == DetectionKind::Gps) {
        return std::monostate{};
    }
    auto v = target_value_from_json(kind, j);
    if (!v) {
        throw std::invalid_argument("detection value outside its kind's domain");
    }
    return to_detection_value(*v);
}

} // namespace

void to_json(json& j, const GpsFix& fix) {
    j = json{{"lat_e7", fix.lat_e7}, {"lon_e7", fix.lon_e7}, {"timestamp_ms", fix.timestamp_ms}};
}

void from_json(const json& j, GpsFix& fix) {
    fix.lat_e7 = j.at("lat_e7").get<std::int32_t>();
    fix.lon_e7 = j.at("lon_e7").get<std::int32_t>();
    fix.timestamp_ms = j.at("timestamp_ms").get<std::int64_t>();
}

json value_to_json(const DetectionValue& v) {
    if (auto* p = std::get_if<PlateCode>(&v)) return p->str();
    if (auto* f = std::get_if<FaceCode>(&v)) return f->value();
    return "";
}

std::optional<TargetValue> target_value_from_json(DetectionKind kind, const json& value) {
    if (kind == DetectionKind::Face && value.is_number_integer()) {
        if (auto f = FaceCode::make(value.get<long long>())) return TargetValue{*f};
        return std::nullopt;
    }
    if (!value.is_string()) {
        return std::nullopt;
    }
    return parse_target_value(kind, value.get<std::string>());
}

void to_json(json& j, const Detection& d) {
    j = json{{"detection_id", d.detection_id},
             {"kind", to_string(d.kind())},
             {"value", value_to_json(d.value)},
             {"fix", d.fix},
             {"source_frame", d.source_frame.hex()},
             {"crop_blob", d.crop_blob ? json(d.crop_blob->hex()) : json(nullptr)},
             {"worker_id", d.worker_id},
             {"detected_at_ms", d.detected_at_ms}};
}

void from_json(const json& j, Detection& d) {
    auto kind = parse_detection_kind(j.at("kind").get<std::string>());
    if (!kind) {
        throw std::invalid_argument("unknown detection kind");
    }
    d.detection_id = j.value("detection_id", std::uint64_t{0});
    d.value = detection_value_from_json(*kind, j.at("value"));
    d.fix = j.at("fix").get<GpsFix>();
    d.source_frame = FrameId{hex_field(j, "source_frame")};
    d.crop_blob.reset();
    if (auto it = j.find("crop_blob"); it != j.end() && !it->is_null()) {
        d.crop_blob = BlobDigest{hex_field(j, "crop_blob")};
    }
    d.worker_id = j.value("worker_id", std::string{});
    d.detected_at_ms = j.value("detected_at_ms", std::int64_t{0});
}

void to_json(json& j, const WatchlistEntry& e) {
    j = json{{"entry_id", e.entry_id},
             {"kind", to_string(e.kind())},
             {"value", value_to_json(to_detection_value(e.value))},
             {"label", e.label},
             {"created_at_ms", e.created_at_ms}};
}

void from_json(const json& j, WatchlistEntry& e) {
    auto kind = parse_detection_kind(j.at("kind").get<std::string>());
    if (!kind || *kind == DetectionKind::Gps) {
        throw std::invalid_argument("watchlist kind must be plate or face");
    }
    auto v = target_value_from_json(*kind, j.at("value"));
    if (!v) {
        throw std::invalid_argument("watchlist value outside its kind's domain");
    }
    e.entry_id = j.value("entry_id", std::uint64_t{0});
    e.value = *v;
    e.label = j.value("label", std::string{});
    e.created_at_ms = j.value("created_at_ms", std::int64_t{0});
}

void to_json(json& j, const MatchEvent& m) {
    j = json{{"match_id", m.match_id},
             {"entry_id", m.entry_id},
             {"detection_id", m.detection_id},
             {"fix", m.fix},
             {"matched_at_ms", m.matched_at_ms}};
}

void from_json(const json& j, MatchEvent& m) {
    m.match_id = j.at("match_id").get<std::uint64_t>();
    m.entry_id = j.at("entry_id").get<std::uint64_t>();
    m.detection_id = j.at("detection_id").get<std::uint64_t>();
    m.fix = j.at("fix").get<GpsFix>();
    m.matched_at_ms = j.at("matched_at_ms").get<std::int64_t>();
}

} // namespace vcsim
