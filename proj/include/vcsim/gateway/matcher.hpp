#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vcsim/core/types.hpp"

namespace vcsim::gateway {

struct MatchConfig {
    /// Largest Hamming distance between 12-bit face codes that still matches.
    int t_face = 0;
};

/// Plates match on exact string equality, faces within t_face bits;
/// gps detections never match.
bool matches(const Detection& d, const WatchlistEntry& entry, int t_face) noexcept;

/// One event per matching entry, stamped with the detection's fix and
/// `now_ms`. match_id is left 0 for the log to assign.
std::vector<MatchEvent> match_detection(const Detection& d, std::span<const WatchlistEntry> watchlist, int t_face,
                                        std::int64_t now_ms);

} // namespace vcsim::gateway
