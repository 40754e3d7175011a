#include "vcsim/edge/dedup.hpp"

#include <cstdlib>
#include <limits>

#include "vcsim/core/geo.hpp"
#include "vcsim/edge/phash.hpp"

namespace vcsim::edge {

Deduplicator::Deduplicator(DedupConfig config) : config_(config) {}

DedupDecision Deduplicator::check(const GeoFrame& frame) { return check(frame.vehicle_id, phash(frame), frame.fix); }

DedupDecision Deduplicator::check(std::uint64_t vehicle_id, std::uint64_t hash, const GpsFix& fix) {
    auto& window = windows_[vehicle_id];
    DedupDecision best;
    best.matched_distance_m = std::numeric_limits<double>::infinity();
    // Newest first, so ties resolve to the most recent frame.
    for (auto it = window.rbegin(); it != window.rend(); ++it) {
        const int hd = hamming(hash, it->hash);
        const double dm = haversine_m(fix, it->fix);
        const std::int64_t dt = std::llabs(fix.timestamp_ms - it->fix.timestamp_ms);
        if (hd <= config_.max_hash_distance && dm <= config_.max_distance_m && dt <= config_.max_dt_ms) {
            best = DedupDecision{true, hd, dm, dt};
            break;
        }
        if (hd < best.matched_hash_distance) {
            best = DedupDecision{false, hd, dm, dt};
        }
    }
    window.push_back(DedupEntry{hash, fix});
    while (window.size() > config_.window) {
        window.pop_front();
    }
    return best;
}

std::size_t Deduplicator::window_size(std::uint64_t vehicle_id) const {
    auto it = windows_.find(vehicle_id);
    return it == windows_.end() ? 0 : it->second.size();
}

} // namespace vcsim::edge
