#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "vcsim/core/types.hpp"
#include "vcsim/store/errors.hpp"

namespace vcsim::store {

// Operator watchlist. Ids are handed out from a counter that never goes
// back, even after removals.
class WatchlistStore {
public:
    /// Throws DuplicateEntry if (kind, value) is already listed.
    WatchlistEntry add(const TargetValue& value, std::string label, std::int64_t created_at_ms = 0);
    /// Parses `value` in the domain of `kind`; throws BadValue, DuplicateEntry.
    WatchlistEntry add(DetectionKind kind, std::string_view value, std::string label, std::int64_t created_at_ms = 0);
    /// Snapshot replay, keeping the entry's id.
    void restore(const WatchlistEntry& entry);
    /// Throws UnknownEntry.
    void remove(std::uint64_t entry_id);

    std::optional<WatchlistEntry> get(std::uint64_t entry_id) const;
    /// Ordered by id.
    std::vector<WatchlistEntry> list() const;
    std::size_t size() const;
    /// Bumped on every change.
    std::uint64_t version() const;

private:
    bool listed_locked(const TargetValue& value) const;

    mutable std::shared_mutex mu_;
    std::map<std::uint64_t, WatchlistEntry> entries_;
    std::uint64_t next_id_ = 1;
    std::uint64_t version_ = 0;
};

} // namespace vcsim::store
