#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcsim/core/error.hpp"
#include "vcsim/edge/dedup.hpp"
#include "vcsim/netsim/message.hpp"

namespace vcsim::edge {

enum class EdgeErrc { NoWorkers, TraceExhausted, BadMessage };
using EdgeError = Error<EdgeErrc>;

enum class DispatchPolicy { RoundRobin, LeastLoaded };

std::string_view to_string(DispatchPolicy p) noexcept;
std::optional<DispatchPolicy> parse_dispatch_policy(std::string_view text) noexcept;

struct UploadOutcome {
    GeoFrame frame;
    DedupDecision dedup;
    std::optional<std::size_t> worker; // empty when suppressed
};

// Road-side unit: drops redundant frames, then spreads the rest over the
// cloud workers.
class RsuNode {
public:
    RsuNode(std::string rsu_id, std::size_t workers, DispatchPolicy policy = DispatchPolicy::RoundRobin,
            DedupConfig dedup = {});

    const std::string& id() const noexcept { return id_; }
    std::size_t worker_count() const noexcept { return in_flight_.size(); }

    /// Checks the frame against the window (and adds it); counts suppressions.
    DedupDecision is_duplicate(const GeoFrame& frame);

    /// Picks a worker and counts the frame as in flight there. Throws NoWorkers.
    std::size_t dispatch();
    /// A worker reported a finished item.
    void complete(std::size_t worker);

    /// Decode, dedup, then dispatch unless suppressed. Throws EdgeError{BadMessage}.
    UploadOutcome on_frame_upload(const netsim::Message& msg);

    std::size_t rr_cursor() const noexcept { return rr_cursor_; }
    std::size_t in_flight(std::size_t worker) const { return in_flight_.at(worker); }
    const std::vector<std::uint64_t>& dispatch_counts() const noexcept { return dispatched_; }
    std::uint64_t suppressed() const noexcept { return suppressed_; }

private:
    std::string id_;
    DispatchPolicy policy_;
    Deduplicator dedup_;
    std::size_t rr_cursor_ = 0;
    std::vector<std::size_t> in_flight_;
    std::vector<std::uint64_t> dispatched_;
    std::uint64_t suppressed_ = 0;
};

} // namespace vcsim::edge
