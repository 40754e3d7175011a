#include "vcsim/netsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace vcsim::netsim {

SimTime from_seconds(double s) noexcept { return SimTime{std::llround(s * 1e9)}; }

double to_seconds(SimTime t) noexcept { return static_cast<double>(t.count()) / 1e9; }

SimTime from_ms(std::int64_t ms) noexcept { return std::chrono::milliseconds{ms}; }

std::int64_t to_ms(SimTime t) noexcept {
    return std::chrono::floor<std::chrono::milliseconds>(t).count();
}

VirtualClock::VirtualClock(ClockMode mode, SimTime start, double time_scale)
    : mode_(mode), now_(start), origin_(start), time_scale_(time_scale > 0 ? time_scale : 1.0),
      wall_origin_(std::chrono::steady_clock::now()) {}

void VirtualClock::advance_to(SimTime t) {
    if (t <= now_) {
        return;
    }
    if (mode_ == ClockMode::Realtime) {
        const double wall_s = to_seconds(t - origin_) / time_scale_;
        const auto target = wall_origin_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                               std::chrono::duration<double>(wall_s));
        std::this_thread::sleep_until(target);
    }
    now_ = t;
}

std::string_view to_string(EventKind k) noexcept {
    switch (k) {
    case EventKind::Delivery: return "delivery";
    case EventKind::Drop: return "drop";
    case EventKind::Timer: return "timer";
    }
    return "timer";
}

namespace {
// std heap functions build a max-heap; invert for earliest-first.
bool later(const SimEvent& a, const SimEvent& b) {
    return a.due != b.due ? a.due > b.due : a.seq > b.seq;
}
} // namespace

Simulator::Simulator(ClockMode mode, std::uint64_t seed, SimTime start, double time_scale)
    : clock_(mode, start, time_scale), loss_rng_(seed) {}

void Simulator::add_node(std::string id, Handler handler) {
    if (nodes_.contains(id)) {
        throw WireError(WireErrc::BadTopology, "duplicate node id " + id);
    }
    nodes_.emplace(std::move(id), std::move(handler));
}

void Simulator::add_link(LinkParams params) {
    if (!params.valid()) {
        throw WireError(WireErrc::BadTopology, "invalid link parameters for '" + params.link_id + "'");
    }
    if (links_.contains(params.link_id)) {
        throw WireError(WireErrc::BadTopology, "duplicate link id " + params.link_id);
    }
    bytes_sent_[params.link_id] = 0;
    std::string id = params.link_id;
    links_.emplace(std::move(id), LinkState{std::move(params), SimTime{0}});
}

bool Simulator::has_node(std::string_view id) const { return nodes_.find(id) != nodes_.end(); }

const LinkParams& Simulator::link(std::string_view link_id) const {
    auto it = links_.find(link_id);
    if (it == links_.end()) {
        throw WireError(WireErrc::UnknownLink, "unknown link " + std::string(link_id));
    }
    return it->second.params;
}

void Simulator::push(SimEvent ev) {
    ev.seq = next_seq_++;
    queue_.push_back(std::move(ev));
    std::push_heap(queue_.begin(), queue_.end(), later);
}

SimEvent Simulator::schedule_send(std::string_view link_id, Message msg) {
    auto it = links_.find(link_id);
    if (it == links_.end()) {
        throw WireError(WireErrc::UnknownLink, "unknown link " + std::string(link_id));
    }
    LinkState& state = it->second;
    const LinkParams& p = state.params;
    if (!has_node(p.dst)) {
        throw WireError(WireErrc::UnknownNode, "link " + p.link_id + " targets unknown node " + p.dst);
    }
    const std::size_t bytes = msg.wire_size();
    const SimTime tx_start = std::max(clock_.now(), state.busy_until);
    const SimTime tx_end = tx_start + from_seconds(static_cast<double>(bytes) / p.bandwidth_Bps);
    state.busy_until = tx_end;
    bytes_sent_[p.link_id] += bytes;

    SimEvent ev;
    ev.due = tx_end + from_seconds(p.base_latency_s);
    ev.kind = (p.loss_prob > 0.0 && loss_rng_.chance(p.loss_prob)) ? EventKind::Drop : EventKind::Delivery;
    ev.target_node = p.dst;
    ev.link_id = p.link_id;
    ev.sent_at = clock_.now();
    ev.payload = std::move(msg);
    push(ev);
    ev.seq = next_seq_ - 1;
    return ev;
}

void Simulator::schedule_timer(std::string_view node, SimTime delay, std::uint64_t tag) {
    schedule_timer_at(node, clock_.now() + std::max(delay, SimTime{0}), tag);
}

void Simulator::schedule_timer_at(std::string_view node, SimTime at, std::uint64_t tag) {
    if (!has_node(node)) {
        throw WireError(WireErrc::UnknownNode, "timer for unknown node " + std::string(node));
    }
    SimEvent ev;
    ev.due = std::max(at, clock_.now());
    ev.kind = EventKind::Timer;
    ev.target_node = std::string(node);
    ev.sent_at = clock_.now();
    ev.timer_tag = tag;
    push(std::move(ev));
}

std::vector<ProcessedEvent> Simulator::run_until(SimTime t_end) {
    std::vector<ProcessedEvent> log;
    while (!queue_.empty() && !stop_.load()) {
        if (queue_.front().due > t_end) {
            break;
        }
        std::pop_heap(queue_.begin(), queue_.end(), later);
        SimEvent ev = std::move(queue_.back());
        queue_.pop_back();
        clock_.advance_to(ev.due);

        ProcessedEvent rec{ev.due,
                           ev.seq,
                           ev.kind,
                           ev.target_node,
                           ev.link_id,
                           ev.payload.type,
                           ev.kind == EventKind::Timer ? 0 : ev.payload.wire_size(),
                           fnv1a64(ev.payload.body),
                           ev.timer_tag};
        digest_.update_u64(static_cast<std::uint64_t>(rec.due.count()));
        digest_.update_u64(rec.seq);
        digest_.update_u64(static_cast<std::uint64_t>(rec.kind));
        digest_.update(rec.target_node);
        digest_.update(rec.link_id);
        digest_.update_u64(static_cast<std::uint64_t>(rec.type));
        digest_.update_u64(rec.wire_bytes);
        digest_.update_u64(rec.body_digest);
        digest_.update_u64(rec.timer_tag);
        log.push_back(std::move(rec));

        if (ev.kind == EventKind::Drop) {
            if (on_drop_) {
                on_drop_(ev);
            }
            continue;
        }
        auto node = nodes_.find(ev.target_node);
        if (node != nodes_.end() && node->second) {
            node->second(ev);
        }
    }
    stop_.store(false);
    return log;
}

} // namespace vcsim::netsim
