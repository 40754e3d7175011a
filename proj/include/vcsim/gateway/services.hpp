#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vcsim/gateway/match_log.hpp"
#include "vcsim/gateway/matcher.hpp"
#include "vcsim/store/blob_store.hpp"
#include "vcsim/store/detection_store.hpp"
#include "vcsim/store/watchlist_store.hpp"

namespace vcsim::gateway {

/// The shared storage tier behind the workers and the web API.
struct Services {
    store::DetectionStore detections;
    store::BlobStore blobs;
    store::WatchlistStore watchlist;
    MatchLog matches;
    MatchConfig match_config;
};

/// Persist-time matching against the live watchlist.
std::vector<MatchEvent> match_persisted(Services& services, const Detection& persisted, std::int64_t now_ms);

/// Replays the detection log against one entry and records any pair not
/// matched before. Throws store::StoreError{UnknownEntry}.
std::vector<MatchEvent> rescan_entry(Services& services, std::uint64_t entry_id, std::int64_t now_ms);

} // namespace vcsim::gateway
