#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace vcsim::harness {

inline constexpr std::array<std::string_view, 10> kStageNames = {
    "upload_v2i", "dedup",   "dispatch", "transfer_rsu_cloud", "extract_face",
    "extract_plate", "extract_gps", "persist", "match", "end_to_end"};

struct StageStats {
    std::size_t count = 0;
    double mean_s = 0.0;
    double p50_s = 0.0;
    double p95_s = 0.0;
};

/// Nearest-rank percentile of sorted samples: element ceil(p/100 * n), 1-based.
double nearest_rank(const std::vector<double>& sorted, double p);
StageStats summarize(std::vector<double> samples);

struct MetricsReport {
    std::map<std::string, StageStats> stages; // one entry per kStageNames
    std::uint64_t frames_captured = 0;
    std::uint64_t frames_forwarded = 0;
    std::uint64_t dedup_suppressed = 0;
    std::uint64_t drops = 0;
    std::uint64_t detections_persisted = 0;
    std::uint64_t frames_persisted = 0; // distinct source frames with a persisted detection
    std::uint64_t matches = 0;
    std::map<std::string, std::uint64_t> bytes_sent;
    std::map<std::string, std::uint64_t> worker_frames;
    std::string event_log_digest;
};

nlohmann::json to_json(const MetricsReport& report);
/// Pretty-printed JSON, the form written by `vcsim run`.
std::string report_text(const MetricsReport& report);

// Raw per-stage samples, in arrival order.
class MetricsCollector {
public:
    void add(std::string_view stage, double seconds);
    std::map<std::string, StageStats> summarize() const;
    std::size_t count(std::string_view stage) const;

private:
    std::map<std::string, std::vector<double>, std::less<>> samples_;
};

} // namespace vcsim::harness
