#pragma once

#include <filesystem>
#include <iosfwd>

#include "vcsim/store/detection_store.hpp"
#include "vcsim/store/watchlist_store.hpp"

namespace vcsim::store {

inline constexpr const char* kDetectionsFile = "detections.jsonl";
inline constexpr const char* kWatchlistFile = "watchlist.jsonl";

// JSON Lines, one object per line in append (id) order.
void write_detections(std::ostream& out, const DetectionStore& store);
void read_detections(std::istream& in, DetectionStore& store);
void write_watchlist(std::ostream& out, const WatchlistStore& store);
void read_watchlist(std::istream& in, WatchlistStore& store);

/// Writes detections.jsonl and watchlist.jsonl into dir (created if needed).
void save_snapshot(const std::filesystem::path& dir, const DetectionStore& detections, const WatchlistStore& watchlist);
/// Replays whichever of the two files exist. Throws StoreError{BadSnapshot}.
void load_snapshot(const std::filesystem::path& dir, DetectionStore& detections, WatchlistStore& watchlist);

} // namespace vcsim::store
