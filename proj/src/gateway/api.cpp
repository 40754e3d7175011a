#include "vcsim/gateway/api.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include "vcsim/core/digest.hpp"
#include "vcsim/core/json_io.hpp"

namespace vcsim::gateway {

using nlohmann::json;

namespace {

constexpr std::string_view kPrefix = "/api/v1/";

ApiResponse json_response(int status, const json& body) { return ApiResponse{status, "application/json", body.dump()}; }

ApiResponse error_response(int status, std::string_view message) {
    return json_response(status, json{{"error", message}});
}

template <typename Int>
std::optional<Int> parse_int(std::string_view text) {
    Int v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        return std::nullopt;
    }
    return v;
}

std::vector<std::string_view> split_path(std::string_view path) {
    std::vector<std::string_view> parts;
    while (!path.empty()) {
        const auto slash = path.find('/');
        parts.push_back(path.substr(0, slash));
        if (slash == std::string_view::npos) break;
        path.remove_prefix(slash + 1);
    }
    return parts;
}

std::optional<std::int32_t> degrees_to_e7(std::string_view text, std::int32_t limit) {
    double v = 0;
    std::istringstream in{std::string(text)};
    in >> v;
    if (!in || !in.eof() || !std::isfinite(v)) {
        return std::nullopt;
    }
    const long long e7 = std::llround(v * 1e7);
    if (e7 < -limit || e7 > limit) {
        return std::nullopt;
    }
    return static_cast<std::int32_t>(e7);
}

} // namespace

std::optional<store::GeoBox> parse_bbox(std::string_view text) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto comma = text.find(',');
        parts.push_back(text.substr(0, comma));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (parts.size() != 4) {
        return std::nullopt;
    }
    auto min_lat = degrees_to_e7(parts[0], kMaxLatE7);
    auto min_lon = degrees_to_e7(parts[1], kMaxLonE7);
    auto max_lat = degrees_to_e7(parts[2], kMaxLatE7);
    auto max_lon = degrees_to_e7(parts[3], kMaxLonE7);
    if (!min_lat || !min_lon || !max_lat || !max_lon) {
        return std::nullopt;
    }
    return store::GeoBox{*min_lat, *min_lon, *max_lat, *max_lon};
}

Api::Api(Services& services, std::size_t web_workers, MetricsFn metrics, ClockFn now_ms)
    : services_(services), balancer_(web_workers), metrics_(std::move(metrics)), now_ms_(std::move(now_ms)) {
    for (std::size_t i = 0; i < web_workers; ++i) {
        worker_mu_.push_back(std::make_unique<std::mutex>());
    }
}

std::int64_t Api::now_ms() const {
    if (now_ms_) {
        return now_ms_();
    }
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

ApiResponse Api::handle(const ApiRequest& request) {
    std::size_t worker = 0;
    try {
        worker = balancer_.route();
    } catch (const GatewayError& e) {
        return error_response(503, e.what());
    }
    std::lock_guard lock(*worker_mu_[worker]);
    try {
        return dispatch(request);
    } catch (const store::StoreError& e) {
        switch (e.code()) {
        case store::StoreErrc::BadFilter:
        case store::StoreErrc::BadValue: return error_response(400, e.what());
        case store::StoreErrc::NotFound:
        case store::StoreErrc::UnknownEntry: return error_response(404, e.what());
        case store::StoreErrc::DuplicateEntry: return error_response(409, e.what());
        case store::StoreErrc::BadSnapshot: break;
        }
        return error_response(500, e.what());
    } catch (const std::exception& e) {
        return error_response(500, e.what());
    }
}

ApiResponse Api::dispatch(const ApiRequest& req) {
    std::string_view path = req.path;
    if (!path.starts_with(kPrefix)) {
        return error_response(404, "not found");
    }
    path.remove_prefix(kPrefix.size());
    const auto parts = split_path(path);
    const auto& m = req.method;

    if (parts[0] == "watchlist") {
        if (parts.size() == 1) {
            if (m == "POST") return post_watchlist(req);
            if (m == "GET") return json_response(200, services_.watchlist.list());
            return error_response(405, "method not allowed");
        }
        const auto id = parse_int<std::uint64_t>(parts[1]);
        if (!id) {
            return error_response(400, "watchlist id must be an integer");
        }
        if (parts.size() == 2 && m == "DELETE") {
            services_.watchlist.remove(*id);
            return json_response(200, json{{"entry_id", *id}});
        }
        if (parts.size() == 3 && parts[2] == "rescan" && m == "POST") {
            return json_response(200, json{{"new_matches", rescan_entry(services_, *id, now_ms())}});
        }
        return error_response(parts.size() <= 3 ? 405 : 404, "unsupported watchlist operation");
    }
    if (m != "GET") {
        return error_response(405, "method not allowed");
    }
    if (parts[0] == "detections" && parts.size() == 1) {
        return get_detections(req);
    }
    if ((parts[0] == "matches" || parts[0] == "events") && parts.size() == 1) {
        std::uint64_t since = 0;
        if (auto it = req.query.find("since"); it != req.query.end()) {
            auto v = parse_int<std::uint64_t>(it->second);
            if (!v) return error_response(400, "since must be a non-negative integer");
            since = *v;
        }
        const auto events = services_.matches.since(since);
        if (parts[0] == "matches") {
            return json_response(200, events);
        }
        // Non-streaming snapshot of the push stream; the HTTP server keeps
        // the connection open instead.
        std::string body;
        for (const auto& e : events) {
            body += json(e).dump();
            body += '\n';
        }
        return ApiResponse{200, kStreamContentType, std::move(body)};
    }
    if (parts[0] == "blobs" && parts.size() == 2) {
        const auto digest = parse_hex64(parts[1]);
        if (!digest) {
            return error_response(400, "blob digest must be hex");
        }
        const auto bytes = services_.blobs.get(BlobDigest{*digest});
        return ApiResponse{200, kBlobContentType, std::string(bytes.begin(), bytes.end())};
    }
    if (parts[0] == "metrics" && parts.size() == 1) {
        return json_response(200, metrics_ ? metrics_() : json::object());
    }
    return error_response(404, "not found");
}

ApiResponse Api::post_watchlist(const ApiRequest& req) {
    json body;
    try {
        body = json::parse(req.body);
    } catch (const json::exception&) {
        return error_response(400, "body must be JSON");
    }
    if (!body.is_object() || !body.contains("kind") || !body.contains("value") || !body["kind"].is_string()) {
        return error_response(400, "expected {\"kind\",\"value\",\"label\"}");
    }
    const auto kind = parse_detection_kind(body["kind"].get<std::string>());
    if (!kind || *kind == DetectionKind::Gps) {
        return error_response(400, "kind must be plate or face");
    }
    const auto value = target_value_from_json(*kind, body["value"]);
    if (!value) {
        return error_response(400, "value outside the kind's domain");
    }
    const std::string label = body.contains("label") && body["label"].is_string() ? body["label"].get<std::string>() : "";
    const auto entry = services_.watchlist.add(*value, label, now_ms());
    return json_response(201, json{{"entry_id", entry.entry_id}});
}

ApiResponse Api::get_detections(const ApiRequest& req) {
    store::DetectionFilter filter;
    const auto& q = req.query;
    if (auto it = q.find("kind"); it != q.end()) {
        filter.kind = parse_detection_kind(it->second);
        if (!filter.kind) return error_response(400, "unknown kind");
    }
    if (auto it = q.find("value"); it != q.end()) {
        filter.value = it->second;
    }
    if (auto it = q.find("from"); it != q.end()) {
        filter.t_from = parse_int<std::int64_t>(it->second);
        if (!filter.t_from) return error_response(400, "from must be an integer (ms)");
    }
    if (auto it = q.find("to"); it != q.end()) {
        filter.t_to = parse_int<std::int64_t>(it->second);
        if (!filter.t_to) return error_response(400, "to must be an integer (ms)");
    }
    if (auto it = q.find("bbox"); it != q.end()) {
        filter.bbox = parse_bbox(it->second);
        if (!filter.bbox) return error_response(400, "bbox must be minLat,minLon,maxLat,maxLon");
    }
    return json_response(200, services_.detections.query(filter));
}

} // namespace vcsim::gateway
