#include "vcsim/gateway/services.hpp"

namespace vcsim::gateway {

std::vector<MatchEvent> match_persisted(Services& services, const Detection& persisted, std::int64_t now_ms) {
    if (persisted.kind() == DetectionKind::Gps) {
        return {};
    }
    const auto watchlist = services.watchlist.list();
    return services.matches.append(match_detection(persisted, watchlist, services.match_config.t_face, now_ms));
}

std::vector<MatchEvent> rescan_entry(Services& services, std::uint64_t entry_id, std::int64_t now_ms) {
    const auto entry = services.watchlist.get(entry_id);
    if (!entry) {
        throw store::StoreError(store::StoreErrc::UnknownEntry, "no watchlist entry " + std::to_string(entry_id));
    }
    std::vector<MatchEvent> found;
    for (const auto& d : services.detections.all()) {
        if (matches(d, *entry, services.match_config.t_face)) {
            found.push_back(MatchEvent{0, entry->entry_id, d.detection_id, d.fix, now_ms});
        }
    }
    return services.matches.append(std::move(found));
}

} // namespace vcsim::gateway
