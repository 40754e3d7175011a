#include "vcsim/gateway/match_log.hpp"

namespace vcsim::gateway {

std::vector<MatchEvent> MatchLog::append(std::vector<MatchEvent> events) {
    std::vector<MatchEvent> added;
    {
        std::lock_guard lock(mu_);
        for (auto& e : events) {
            if (!pairs_.emplace(e.entry_id, e.detection_id).second) {
                continue;
            }
            e.match_id = events_.size() + 1;
            events_.push_back(e);
            added.push_back(e);
        }
    }
    if (!added.empty()) {
        cv_.notify_all();
    }
    return added;
}

std::vector<MatchEvent> MatchLog::since(std::uint64_t cursor, std::size_t limit) const {
    std::lock_guard lock(mu_);
    std::vector<MatchEvent> out;
    for (std::size_t i = cursor; i < events_.size() && out.size() < limit; ++i) {
        out.push_back(events_[i]);
    }
    return out;
}

std::size_t MatchLog::size() const {
    std::lock_guard lock(mu_);
    return events_.size();
}

bool MatchLog::contains(std::uint64_t entry_id, std::uint64_t detection_id) const {
    std::lock_guard lock(mu_);
    return pairs_.contains({entry_id, detection_id});
}

bool MatchLog::wait_beyond(std::uint64_t cursor, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mu_);
    cv_.wait_for(lock, timeout, [&] { return closed_ || events_.size() > cursor; });
    return events_.size() > cursor;
}

void MatchLog::close() {
    {
        std::lock_guard lock(mu_);
        closed_ = true;
    }
    cv_.notify_all();
}

bool MatchLog::closed() const {
    std::lock_guard lock(mu_);
    return closed_;
}

Subscription::Status Subscription::next(std::vector<MatchEvent>& out, std::chrono::milliseconds timeout) {
    out.clear();
    if (log_->size() > cursor_ + log_->max_backlog()) {
        return Status::Disconnected;
    }
    if (!log_->wait_beyond(cursor_, timeout)) {
        return log_->closed() ? Status::Closed : Status::Ok;
    }
    out = log_->since(cursor_);
    if (!out.empty()) {
        cursor_ = out.back().match_id;
    }
    return Status::Ok;
}

} // namespace vcsim::gateway
