#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <set>
#include <utility>
#include <vector>

#include "vcsim/core/types.hpp"

namespace vcsim::gateway {

inline constexpr std::size_t kDefaultMaxBacklog = 10'000;

// The global match sequence. Appends are serialized; each (entry,
// detection) pair is recorded at most once. match_id is the 1-based
// position in the sequence, so a cursor is simply the last id seen.
class MatchLog {
public:
    explicit MatchLog(std::size_t max_backlog = kDefaultMaxBacklog) : max_backlog_(max_backlog) {}

    /// Assigns ids and appends the events whose pair is new; returns those.
    std::vector<MatchEvent> append(std::vector<MatchEvent> events);
    /// Events with match_id > cursor, in order.
    std::vector<MatchEvent> since(std::uint64_t cursor, std::size_t limit = SIZE_MAX) const;
    std::size_t size() const;
    bool contains(std::uint64_t entry_id, std::uint64_t detection_id) const;

    /// Waits until the log grows past `cursor`, it is closed, or the timeout
    /// passes. Returns true if there is something to read.
    bool wait_beyond(std::uint64_t cursor, std::chrono::milliseconds timeout) const;
    /// Wakes every waiter; subsequent waits return immediately.
    void close();
    bool closed() const;

    std::size_t max_backlog() const noexcept { return max_backlog_; }

private:
    mutable std::mutex mu_;
    mutable std::condition_variable cv_;
    std::vector<MatchEvent> events_;
    std::set<std::pair<std::uint64_t, std::uint64_t>> pairs_;
    std::size_t max_backlog_;
    bool closed_ = false;
};

// A reader's position in the match sequence.
class Subscription {
public:
    enum class Status { Ok, Disconnected, Closed };

    Subscription(const MatchLog& log, std::uint64_t since) : log_(&log), cursor_(since) {}

    /// Fills `out` with the next events, waiting up to `timeout` when there
    /// are none. Disconnected once the reader lags more than the log's
    /// max_backlog events behind.
    Status next(std::vector<MatchEvent>& out, std::chrono::milliseconds timeout);
    std::uint64_t cursor() const noexcept { return cursor_; }

private:
    const MatchLog* log_;
    std::uint64_t cursor_;
};

} // namespace vcsim::gateway
