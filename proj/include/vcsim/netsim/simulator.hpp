#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vcsim/core/digest.hpp"
#include "vcsim/netsim/link.hpp"
#include "vcsim/netsim/message.hpp"
#include "vcsim/synth/rng.hpp"

namespace vcsim::netsim {

/// Simulation time: nanoseconds on the Unix epoch axis.
using SimTime = std::chrono::nanoseconds;

SimTime from_seconds(double s) noexcept;
double to_seconds(SimTime t) noexcept;
SimTime from_ms(std::int64_t ms) noexcept;
/// Floor to whole milliseconds.
std::int64_t to_ms(SimTime t) noexcept;

enum class ClockMode { Virtual, Realtime };

class VirtualClock {
public:
    explicit VirtualClock(ClockMode mode = ClockMode::Virtual, SimTime start = SimTime{0}, double time_scale = 1.0);

    SimTime now() const noexcept { return now_; }
    ClockMode mode() const noexcept { return mode_; }
    /// Never moves backwards. In realtime mode, blocks until the wall clock
    /// (scaled by time_scale simulated seconds per wall second) reaches t.
    void advance_to(SimTime t);

private:
    ClockMode mode_;
    SimTime now_;
    SimTime origin_;
    double time_scale_;
    std::chrono::steady_clock::time_point wall_origin_;
};

enum class EventKind : std::uint8_t { Delivery, Drop, Timer };

std::string_view to_string(EventKind k) noexcept;

struct SimEvent {
    SimTime due{0};
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Timer;
    std::string target_node;
    std::string link_id; // empty for timers
    SimTime sent_at{0};
    Message payload;
    std::uint64_t timer_tag = 0;
};

/// Compact record of an event after it fired; the event log.
struct ProcessedEvent {
    SimTime due{0};
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Timer;
    std::string target_node;
    std::string link_id;
    MessageType type = MessageType::Control;
    std::size_t wire_bytes = 0;
    std::uint64_t body_digest = 0;
    std::uint64_t timer_tag = 0;

    friend bool operator==(const ProcessedEvent&, const ProcessedEvent&) = default;
};

// Single-threaded discrete-event scheduler over point-to-point links.
// Events are totally ordered by (due, seq); handlers run one at a time.
class Simulator {
public:
    using Handler = std::function<void(const SimEvent&)>;
    using DropListener = std::function<void(const SimEvent&)>;

    Simulator(ClockMode mode, std::uint64_t seed, SimTime start = SimTime{0}, double time_scale = 1.0);

    void add_node(std::string id, Handler handler);
    void add_link(LinkParams params);
    bool has_node(std::string_view id) const;
    const LinkParams& link(std::string_view link_id) const;

    /// Queues a delivery (or, with probability loss_prob, a Drop record).
    /// Transmission is serialized per link, so deliveries keep send order.
    SimEvent schedule_send(std::string_view link_id, Message msg);
    void schedule_timer(std::string_view node, SimTime delay, std::uint64_t tag);
    void schedule_timer_at(std::string_view node, SimTime at, std::uint64_t tag);

    /// Processes events with due <= t_end in order, including any the
    /// handlers create. Returns the events processed by this call.
    std::vector<ProcessedEvent> run_until(SimTime t_end);
    std::vector<ProcessedEvent> run_all() { return run_until(SimTime::max()); }

    /// Thread-safe; makes the current (or next) run_until return after the
    /// event in progress.
    void request_stop() noexcept { stop_.store(true); }

    SimTime now() const noexcept { return clock_.now(); }
    ClockMode mode() const noexcept { return clock_.mode(); }
    std::size_t pending() const noexcept { return queue_.size(); }
    /// Running FNV-1a over every processed event so far.
    std::uint64_t log_digest() const noexcept { return digest_.value(); }
    const std::map<std::string, std::uint64_t, std::less<>>& bytes_sent() const noexcept { return bytes_sent_; }

    void set_drop_listener(DropListener listener) { on_drop_ = std::move(listener); }

private:
    struct LinkState {
        LinkParams params;
        SimTime busy_until{0};
    };

    void push(SimEvent ev);

    VirtualClock clock_;
    synth::Rng loss_rng_;
    std::uint64_t next_seq_ = 0;
    std::vector<SimEvent> queue_; // min-heap on (due, seq)
    std::map<std::string, Handler, std::less<>> nodes_;
    std::map<std::string, LinkState, std::less<>> links_;
    std::map<std::string, std::uint64_t, std::less<>> bytes_sent_;
    DropListener on_drop_;
    Fnv1a64 digest_;
    std::atomic<bool> stop_{false};
};

} // namespace vcsim::netsim
