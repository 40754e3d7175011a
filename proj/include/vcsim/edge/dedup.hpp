#pragma once

#include <cstdint>
#include <deque>
#include <map>

#include "vcsim/core/types.hpp"

namespace vcsim::edge {

struct DedupConfig {
    int max_hash_distance = 5;
    double max_distance_m = 15.0;
    std::int64_t max_dt_ms = 10'000;
    std::size_t window = 100; // per vehicle

    friend bool operator==(const DedupConfig&, const DedupConfig&) = default;
};

struct DedupDecision {
    bool duplicate = false;
    // Closest window entry: the matching one for duplicates, otherwise the
    // one with the smallest hash distance (64 / infinity / 0 when empty).
    int matched_hash_distance = 64;
    double matched_distance_m = 0.0;  // +inf when the window was empty
    std::int64_t matched_dt_ms = 0;
};

struct DedupEntry {
    std::uint64_t hash = 0;
    GpsFix fix;
};

// Streaming redundancy filter. A frame is a duplicate when some recent frame
// from the same vehicle is close in hash, space and time simultaneously.
// Every checked frame enters the window, duplicate or not.
class Deduplicator {
public:
    explicit Deduplicator(DedupConfig config = {});

    DedupDecision check(const GeoFrame& frame);
    DedupDecision check(std::uint64_t vehicle_id, std::uint64_t hash, const GpsFix& fix);

    const DedupConfig& config() const noexcept { return config_; }
    std::size_t window_size(std::uint64_t vehicle_id) const;

private:
    DedupConfig config_;
    std::map<std::uint64_t, std::deque<DedupEntry>> windows_;
};

} // namespace vcsim::edge
