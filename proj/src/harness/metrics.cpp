#include "vcsim/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vcsim::harness {

double nearest_rank(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) {
        throw std::invalid_argument("nearest_rank of no samples");
    }
    const auto n = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

StageStats summarize(std::vector<double> samples) {
    StageStats s;
    s.count = samples.size();
    if (samples.empty()) {
        return s;
    }
    double sum = 0.0;
    for (double v : samples) sum += v;
    s.mean_s = sum / static_cast<double>(samples.size());
    std::sort(samples.begin(), samples.end());
    s.p50_s = nearest_rank(samples, 50);
    s.p95_s = nearest_rank(samples, 95);
    return s;
}

nlohmann::json to_json(const MetricsReport& r) {
    nlohmann::json stages = nlohmann::json::object();
    for (auto name : kStageNames) {
        StageStats s;
        if (auto it = r.stages.find(std::string(name)); it != r.stages.end()) s = it->second;
        stages[std::string(name)] = {{"count", s.count}, {"mean_s", s.mean_s}, {"p50_s", s.p50_s}, {"p95_s", s.p95_s}};
    }
    return {{"stages", stages},
            {"frames_captured", r.frames_captured},
            {"frames_forwarded", r.frames_forwarded},
            {"dedup_suppressed", r.dedup_suppressed},
            {"drops", r.drops},
            {"detections_persisted", r.detections_persisted},
            {"frames_persisted", r.frames_persisted},
            {"matches", r.matches},
            {"bytes_sent", r.bytes_sent},
            {"worker_frames", r.worker_frames},
            {"event_log_digest", r.event_log_digest}};
}

std::string report_text(const MetricsReport& r) { return to_json(r).dump(2) + "\n"; }

void MetricsCollector::add(std::string_view stage, double seconds) {
    auto it = samples_.find(stage);
    if (it == samples_.end()) {
        it = samples_.emplace(std::string(stage), std::vector<double>{}).first;
    }
    it->second.push_back(seconds);
}

std::map<std::string, StageStats> MetricsCollector::summarize() const {
    std::map<std::string, StageStats> out;
    for (auto name : kStageNames) {
        auto it = samples_.find(name);
        out[std::string(name)] = it == samples_.end() ? StageStats{} : harness::summarize(it->second);
    }
    return out;
}

std::size_t MetricsCollector::count(std::string_view stage) const {
    auto it = samples_.find(stage);
    return it == samples_.end() ? 0 : it->second.size();
}

} // namespace vcsim::harness
