#include "vcsim/edge/rsu.hpp"

#include <algorithm>

#include "vcsim/core/frame_codec.hpp"

namespace vcsim::edge {

std::string_view to_string(DispatchPolicy p) noexcept {
    return p == DispatchPolicy::RoundRobin ? "round_robin" : "least_loaded";
}

std::optional<DispatchPolicy> parse_dispatch_policy(std::string_view text) noexcept {
    if (text == "round_robin") return DispatchPolicy::RoundRobin;
    if (text == "least_loaded") return DispatchPolicy::LeastLoaded;
    return std::nullopt;
}

RsuNode::RsuNode(std::string rsu_id, std::size_t workers, DispatchPolicy policy, DedupConfig dedup)
    : id_(std::move(rsu_id)), policy_(policy), dedup_(dedup), in_flight_(workers, 0), dispatched_(workers, 0) {}

DedupDecision RsuNode::is_duplicate(const GeoFrame& frame) {
    auto d = dedup_.check(frame);
    if (d.duplicate) {
        ++suppressed_;
    }
    return d;
}

std::size_t RsuNode::dispatch() {
    if (in_flight_.empty()) {
        throw EdgeError(EdgeErrc::NoWorkers, "RSU " + id_ + " has no workers");
    }
    std::size_t w = 0;
    if (policy_ == DispatchPolicy::RoundRobin) {
        w = rr_cursor_;
        rr_cursor_ = (rr_cursor_ + 1) % in_flight_.size();
    } else {
        w = static_cast<std::size_t>(std::min_element(in_flight_.begin(), in_flight_.end()) - in_flight_.begin());
    }
    ++in_flight_[w];
    ++dispatched_[w];
    return w;
}

void RsuNode::complete(std::size_t worker) {
    auto& n = in_flight_.at(worker);
    if (n > 0) {
        --n;
    }
}

UploadOutcome RsuNode::on_frame_upload(const netsim::Message& msg) {
    if (msg.type != netsim::MessageType::FrameUpload) {
        throw EdgeError(EdgeErrc::BadMessage, "expected FRAME_UPLOAD");
    }
    UploadOutcome out;
    try {
        out.frame = decode_frame(msg.body);
    } catch (const FrameError& e) {
        throw EdgeError(EdgeErrc::BadMessage, std::string("undecodable frame: ") + e.what());
    }
    out.dedup = is_duplicate(out.frame);
    if (!out.dedup.duplicate) {
        out.worker = dispatch();
    }
    return out;
}

} // namespace vcsim::edge
