#include "vcsim/store/watchlist_store.hpp"

#include <algorithm>
#include <mutex>

namespace vcsim::store {

bool WatchlistStore::listed_locked(const TargetValue& value) const {
    for (const auto& [id, e] : entries_) {
        if (e.value == value) {
            return true;
        }
    }
    return false;
}

WatchlistEntry WatchlistStore::add(const TargetValue& value, std::string label, std::int64_t created_at_ms) {
    std::unique_lock lock(mu_);
    if (listed_locked(value)) {
        throw StoreError(StoreErrc::DuplicateEntry,
                         std::string(to_string(kind_of(value))) + " " + value_string(value) + " already listed");
    }
    WatchlistEntry e{next_id_++, value, std::move(label), created_at_ms};
    entries_.emplace(e.entry_id, e);
    ++version_;
    return e;
}

WatchlistEntry WatchlistStore::add(DetectionKind kind, std::string_view value, std::string label,
                                   std::int64_t created_at_ms) {
    auto parsed = parse_target_value(kind, value);
    if (!parsed) {
        throw StoreError(StoreErrc::BadValue, "'" + std::string(value) + "' is not a valid " +
                                                  std::string(to_string(kind)) + " value");
    }
    return add(*parsed, std::move(label), created_at_ms);
}

void WatchlistStore::restore(const WatchlistEntry& entry) {
    std::unique_lock lock(mu_);
    if (entries_.contains(entry.entry_id) || listed_locked(entry.value)) {
        throw StoreError(StoreErrc::BadSnapshot, "duplicate watchlist entry in snapshot");
    }
    entries_.emplace(entry.entry_id, entry);
    next_id_ = std::max(next_id_, entry.entry_id + 1);
    ++version_;
}

void WatchlistStore::remove(std::uint64_t entry_id) {
    std::unique_lock lock(mu_);
    if (entries_.erase(entry_id) == 0) {
        throw StoreError(StoreErrc::UnknownEntry, "no watchlist entry " + std::to_string(entry_id));
    }
    ++version_;
}

std::optional<WatchlistEntry> WatchlistStore::get(std::uint64_t entry_id) const {
    std::shared_lock lock(mu_);
    auto it = entries_.find(entry_id);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::vector<WatchlistEntry> WatchlistStore::list() const {
    std::shared_lock lock(mu_);
    std::vector<WatchlistEntry> out;
    out.reserve(entries_.size());
    for (const auto& [id, e] : entries_) {
        out.push_back(e);
    }
    return out;
}

std::size_t WatchlistStore::size() const {
    std::shared_lock lock(mu_);
    return entries_.size();
}

std::uint64_t WatchlistStore::version() const {
    std::shared_lock lock(mu_);
    return version_;
}

} // namespace vcsim::store
