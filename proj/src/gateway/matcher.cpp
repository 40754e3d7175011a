#include "vcsim/gateway/matcher.hpp"

#include <bit>

namespace vcsim::gateway {

bool matches(const Detection& d, const WatchlistEntry& entry, int t_face) noexcept {
    if (const auto* plate = std::get_if<PlateCode>(&d.value)) {
        const auto* want = std::get_if<PlateCode>(&entry.value);
        return want != nullptr && *want == *plate;
    }
    if (const auto* face = std::get_if<FaceCode>(&d.value)) {
        const auto* want = std::get_if<FaceCode>(&entry.value);
        return want != nullptr && std::popcount(static_cast<unsigned>(want->value() ^ face->value())) <= t_face;
    }
    return false;
}

std::vector<MatchEvent> match_detection(const Detection& d, std::span<const WatchlistEntry> watchlist, int t_face,
                                        std::int64_t now_ms) {
    std::vector<MatchEvent> out;
    for (const auto& entry : watchlist) {
        if (matches(d, entry, t_face)) {
            out.push_back(MatchEvent{0, entry.entry_id, d.detection_id, d.fix, now_ms});
        }
    }
    return out;
}

} // namespace vcsim::gateway
