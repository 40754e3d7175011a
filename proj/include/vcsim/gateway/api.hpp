#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vcsim/gateway/load_balancer.hpp"
#include "vcsim/gateway/services.hpp"

namespace vcsim::gateway {

struct ApiRequest {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

inline constexpr const char* kBlobContentType = "image/x-portable-graymap";
inline constexpr const char* kStreamContentType = "application/x-ndjson";

/// Parses "minLat,minLon,maxLat,maxLon" in degrees.
std::optional<store::GeoBox> parse_bbox(std::string_view text);

// REST surface over the storage tier. Each request is routed by the load
// balancer to one of W web workers, which serve one request at a time.
class Api {
public:
    using MetricsFn = std::function<nlohmann::json()>;
    using ClockFn = std::function<std::int64_t()>;

    Api(Services& services, std::size_t web_workers, MetricsFn metrics = {}, ClockFn now_ms = {});

    ApiResponse handle(const ApiRequest& request);
    /// Cursor-based reader for the live event stream.
    Subscription subscribe(std::uint64_t since) const { return Subscription(services_.matches, since); }

    const LoadBalancer& balancer() const noexcept { return balancer_; }
    Services& services() noexcept { return services_; }

private:
    ApiResponse dispatch(const ApiRequest& request);
    ApiResponse post_watchlist(const ApiRequest& request);
    ApiResponse get_detections(const ApiRequest& request);
    std::int64_t now_ms() const;

    Services& services_;
    LoadBalancer balancer_;
    std::vector<std::unique_ptr<std::mutex>> worker_mu_;
    MetricsFn metrics_;
    ClockFn now_ms_;
};

} // namespace vcsim::gateway
