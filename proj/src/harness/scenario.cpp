#include "vcsim/harness/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <set>

#include "vcsim/core/digest.hpp"
#include "vcsim/core/frame_codec.hpp"
#include "vcsim/edge/vehicle.hpp"
#include "vcsim/extract/record.hpp"
#include "vcsim/synth/rng.hpp"

namespace vcsim::harness {

using netsim::Message;
using netsim::MessageType;
using netsim::SimEvent;
using netsim::SimTime;

std::string vehicle_node(std::uint64_t vehicle_id) { return "vehicle-" + std::to_string(vehicle_id); }
std::string rsu_node(int index) { return "rsu-" + std::to_string(index + 1); }
std::string worker_node(int index) { return "worker-" + std::to_string(index + 1); }
std::string link_name(std::string_view src, std::string_view dst) {
    return std::string(src) + "->" + std::string(dst);
}

namespace {

netsim::LinkParams make_link(const netsim::LinkParams& calibrated, const LinkOverride& o, std::string src,
                             std::string dst) {
    netsim::LinkParams l = calibrated;
    l.link_id = link_name(src, dst);
    l.src = std::move(src);
    l.dst = std::move(dst);
    if (o.base_latency_s) l.base_latency_s = *o.base_latency_s;
    if (o.bandwidth_Bps) l.bandwidth_Bps = *o.bandwidth_Bps;
    if (o.loss_prob) l.loss_prob = *o.loss_prob;
    return l;
}

// Wall-clock stopwatch that reads zero in virtual mode, where host work
// costs no simulated time.
class Stopwatch {
public:
    explicit Stopwatch(bool active) : active_(active), start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        if (!active_) return 0.0;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    bool active_;
    std::chrono::steady_clock::time_point start_;
};

struct FrameTrack {
    SimTime captured{0};
    SimTime last_persist{0};
    bool persisted = false;
    int stages_left = 0;
    int rsu = 0;
    int worker = -1;
};

struct PendingStage {
    FrameId frame;
    int worker = 0;
    extract::StageResult result;
};

} // namespace

struct ScenarioRunner::Impl {
    ScenarioConfig config;
    gateway::Services& services;
    std::vector<synth::Trace> traces;
    netsim::Simulator sim;
    bool realtime;

    std::vector<edge::VehicleNode> vehicles;
    std::vector<int> vehicle_rsu;
    std::vector<edge::RsuNode> rsus;
    std::vector<extract::WorkerNode> workers;

    mutable std::mutex mu; // guards everything below
    MetricsCollector metrics;
    MetricsReport counts;
    std::map<FrameId, FrameTrack> frames;
    std::map<std::uint64_t, PendingStage> pending;
    std::uint64_t next_tag = 1;
    bool running = false;
    bool ran = false;
    // Copies of simulator state for snapshots taken while it runs.
    std::map<std::string, std::uint64_t, std::less<>> bytes_seen;
    std::uint64_t digest_seen = 0;
    std::atomic<std::int64_t> now_ms{0};

    Impl(ScenarioConfig cfg, gateway::Services& svc)
        : config(std::move(cfg)), services(svc), traces(resolve_traces(config)),
          sim(config.mode, config.seed, start_time(traces), config.time_scale),
          realtime(config.mode == netsim::ClockMode::Realtime) {
        services.match_config.t_face = config.t_face;
        now_ms.store(netsim::to_ms(sim.now()));
        seed_watchlist();
        build();
    }

    static SimTime start_time(const std::vector<synth::Trace>& traces) {
        std::optional<std::int64_t> first;
        for (const auto& t : traces) {
            if (!t.steps.empty() && (!first || t.steps.front().t_ms < *first)) first = t.steps.front().t_ms;
        }
        return netsim::from_ms(first.value_or(0));
    }

    void seed_watchlist() {
        const std::int64_t now = netsim::to_ms(sim.now());
        for (const auto& w : config.watchlist) {
            try {
                services.watchlist.add(w.kind, w.value, w.label, now);
            } catch (const store::StoreError& e) {
                if (e.code() != store::StoreErrc::DuplicateEntry) throw;
            }
        }
        if (config.random_watchlist == 0) {
            return;
        }
        std::set<std::pair<int, std::string>> seen;
        std::vector<TargetValue> values;
        for (const auto& t : traces) {
            for (const auto& step : t.steps) {
                for (const auto& item : step.scene.items) {
                    if (seen.emplace(static_cast<int>(item.kind()), value_string(item.value)).second) {
                        values.push_back(item.value);
                    }
                }
            }
        }
        std::sort(values.begin(), values.end(), [](const TargetValue& a, const TargetValue& b) {
            return std::pair(static_cast<int>(kind_of(a)), value_string(a)) <
                   std::pair(static_cast<int>(kind_of(b)), value_string(b));
        });
        synth::Rng rng(synth::mix_seed(config.seed, 0x77617463686c6973ULL));
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[rng.below(i)]);
        }
        const auto n = std::min(config.random_watchlist, values.size());
        for (std::size_t i = 0; i < n; ++i) {
            try {
                services.watchlist.add(values[i], "auto-" + std::to_string(i + 1), now);
            } catch (const store::StoreError& e) {
                if (e.code() != store::StoreErrc::DuplicateEntry) throw;
            }
        }
    }

    void build() {
        const auto cal = netsim::calibrate_table1();
        for (int r = 0; r < config.rsus; ++r) {
            rsus.emplace_back(rsu_node(r), static_cast<std::size_t>(config.workers), config.dispatch, config.dedup);
            sim.add_node(rsu_node(r), synced([this, r](const SimEvent& ev) { on_rsu(r, ev); }));
        }
        for (int w = 0; w < config.workers; ++w) {
            workers.emplace_back(worker_node(w), config.modeled_times, extract::ExtractConfig{},
                                 config.concurrent_stages);
            sim.add_node(worker_node(w), synced([this, w](const SimEvent& ev) { on_worker(w, ev); }));
            for (int r = 0; r < config.rsus; ++r) {
                sim.add_link(make_link(cal.rsu_cloud, config.rsu_cloud, rsu_node(r), worker_node(w)));
                sim.add_link(make_link(cal.rsu_cloud, config.rsu_cloud, worker_node(w), rsu_node(r)));
            }
        }
        for (std::size_t i = 0; i < traces.size(); ++i) {
            const int r = static_cast<int>(i % static_cast<std::size_t>(config.rsus));
            const auto node = vehicle_node(traces[i].vehicle_id);
            auto uplink = make_link(cal.vehicle_rsu, config.vehicle_rsu, node, rsu_node(r));
            edge::VehicleConfig vc;
            vc.offload = config.offload;
            vc.local_extract_enabled = config.local_extract_enabled;
            vc.noise_level = config.noise_level;
            vc.noise_seed = synth::mix_seed(config.seed, 0x6e6f697365ULL);
            vc.frame_width = config.frame_width;
            vc.frame_height = config.frame_height;
            vc.uplink = uplink;
            sim.add_link(std::move(uplink));
            vehicles.emplace_back(traces[i], vc);
            vehicle_rsu.push_back(r);
            sim.add_node(node, synced([this, i](const SimEvent& ev) { on_vehicle(i, ev); }));
            for (std::size_t s = 0; s < traces[i].steps.size(); ++s) {
                sim.schedule_timer_at(node, netsim::from_ms(traces[i].steps[s].t_ms), s);
            }
        }
        sim.set_drop_listener([this](const SimEvent&) {
            std::lock_guard lock(mu);
            ++counts.drops;
        });
    }

    template <typename Fn>
    netsim::Simulator::Handler synced(Fn fn) {
        return [this, fn = std::move(fn)](const SimEvent& ev) {
            fn(ev);
            now_ms.store(netsim::to_ms(sim.now()));
            std::lock_guard lock(mu);
            bytes_seen = sim.bytes_sent();
            digest_seen = sim.log_digest();
        };
    }

    void on_vehicle(std::size_t i, const SimEvent& ev) {
        if (ev.kind != netsim::EventKind::Timer) return;
        auto& v = vehicles[i];
        auto capture = v.capture_tick();
        const auto node = vehicle_node(v.vehicle_id());
        const auto link = link_name(node, rsu_node(vehicle_rsu[i]));
        {
            std::lock_guard lock(mu);
            ++counts.frames_captured;
            auto& track = frames[capture.frame_id];
            track.captured = sim.now();
            track.rsu = vehicle_rsu[i];
        }
        for (auto& m : capture.messages) {
            sim.schedule_send(link, std::move(m));
        }
    }

    void on_rsu(int r, const SimEvent& ev) {
        if (ev.kind != netsim::EventKind::Delivery) return;
        auto& rsu = rsus[static_cast<std::size_t>(r)];
        switch (ev.payload.type) {
        case MessageType::FrameUpload: {
            const auto frame = decode_frame(ev.payload.body);
            Stopwatch dedup_watch(realtime);
            const auto decision = rsu.is_duplicate(frame);
            const double dedup_s = dedup_watch.seconds();
            {
                std::lock_guard lock(mu);
                metrics.add("upload_v2i", netsim::to_seconds(ev.due - ev.sent_at));
                metrics.add("dedup", dedup_s);
                if (decision.duplicate) {
                    ++counts.dedup_suppressed;
                    return;
                }
            }
            Stopwatch dispatch_watch(realtime);
            const auto w = static_cast<int>(rsu.dispatch());
            const double dispatch_s = dispatch_watch.seconds();
            {
                std::lock_guard lock(mu);
                metrics.add("dispatch", dispatch_s);
                ++counts.frames_forwarded;
                frames[frame.frame_id()].worker = w;
            }
            sim.schedule_send(link_name(rsu.id(), worker_node(w)), ev.payload);
            break;
        }
        case MessageType::DetectionRecord: {
            auto record = extract::decode_detection_record(ev.payload);
            persist(std::move(record.detection), record.crop);
            break;
        }
        case MessageType::Ack: {
            const auto w = ev.payload.body.empty() ? 0 : ev.payload.body[0];
            rsu.complete(w);
            break;
        }
        case MessageType::Control: break;
        }
    }

    void on_worker(int w, const SimEvent& ev) {
        auto& worker = workers[static_cast<std::size_t>(w)];
        if (ev.kind == netsim::EventKind::Delivery && ev.payload.type == MessageType::FrameUpload) {
            const auto frame = decode_frame(ev.payload.body);
            auto plan = worker.process(frame, realtime);
            {
                std::lock_guard lock(mu);
                metrics.add("transfer_rsu_cloud", netsim::to_seconds(ev.due - ev.sent_at));
                frames[plan.frame_id].stages_left = static_cast<int>(extract::kStageCount);
            }
            for (auto& stage : plan.stages) {
                std::uint64_t tag = 0;
                {
                    std::lock_guard lock(mu);
                    metrics.add("extract_" + std::string(extract::to_string(stage.stage)), stage.offset_s);
                    tag = next_tag++;
                    const auto delay = netsim::from_seconds(stage.offset_s);
                    pending.emplace(tag, PendingStage{plan.frame_id, w, std::move(stage)});
                    sim.schedule_timer(worker.id(), delay, tag);
                }
            }
            return;
        }
        if (ev.kind != netsim::EventKind::Timer) return;
        PendingStage st;
        {
            std::lock_guard lock(mu);
            auto it = pending.find(ev.timer_tag);
            if (it == pending.end()) return;
            st = std::move(it->second);
            pending.erase(it);
        }
        for (auto& e : st.result.extractions) {
            e.detection.worker_id = worker.id();
            e.detection.detected_at_ms = netsim::to_ms(sim.now());
            persist(std::move(e.detection), e.crop);
        }
        bool done = false;
        int rsu = 0;
        {
            std::lock_guard lock(mu);
            auto& track = frames[st.frame];
            done = --track.stages_left == 0;
            rsu = track.rsu;
        }
        if (done) {
            Message ack{MessageType::Ack, {static_cast<std::uint8_t>(w)}};
            sim.schedule_send(link_name(worker.id(), rsu_node(rsu)), std::move(ack));
        }
    }

    void persist(Detection d, const std::vector<std::uint8_t>& crop) {
        Stopwatch persist_watch(realtime);
        if (!crop.empty()) {
            d.crop_blob = services.blobs.put(crop);
        }
        d.detection_id = services.detections.put(d);
        const double persist_s = persist_watch.seconds();
        Stopwatch match_watch(realtime);
        const auto matched = gateway::match_persisted(services, d, netsim::to_ms(sim.now()));
        const double match_s = match_watch.seconds();

        std::lock_guard lock(mu);
        metrics.add("persist", persist_s);
        metrics.add("match", match_s);
        ++counts.detections_persisted;
        counts.matches += matched.size();
        auto& track = frames[d.source_frame];
        track.persisted = true;
        track.last_persist = sim.now();
    }

    MetricsReport report_locked() const {
        MetricsReport r = counts;
        MetricsCollector m = metrics;
        for (const auto& [id, track] : frames) {
            if (track.persisted) {
                ++r.frames_persisted;
                m.add("end_to_end", netsim::to_seconds(track.last_persist - track.captured));
            }
        }
        r.stages = m.summarize();
        for (const auto& [link, bytes] : running ? bytes_seen : sim.bytes_sent()) {
            r.bytes_sent[link] = bytes;
        }
        for (const auto& w : workers) {
            r.worker_frames[w.id()] = w.frames_processed();
        }
        r.event_log_digest = to_hex64(running ? digest_seen : sim.log_digest());
        return r;
    }
};

ScenarioRunner::ScenarioRunner(ScenarioConfig config, gateway::Services& services) {
    config.validate();
    impl_ = std::make_unique<Impl>(std::move(config), services);
}

ScenarioRunner::~ScenarioRunner() = default;

ScenarioResult ScenarioRunner::run() {
    if (impl_->ran) {
        throw std::logic_error("ScenarioRunner::run called twice");
    }
    impl_->ran = true;
    {
        std::lock_guard lock(impl_->mu);
        impl_->running = true;
    }
    ScenarioResult out;
    const auto t_end = impl_->config.t_end_ms ? netsim::from_ms(*impl_->config.t_end_ms) : SimTime::max();
    out.events = impl_->sim.run_until(t_end);
    std::lock_guard lock(impl_->mu);
    impl_->running = false;
    out.report = impl_->report_locked();
    out.log_digest = impl_->sim.log_digest();
    return out;
}

MetricsReport ScenarioRunner::snapshot() const {
    std::lock_guard lock(impl_->mu);
    return impl_->report_locked();
}

std::int64_t ScenarioRunner::sim_time_ms() const { return impl_->now_ms.load(); }

void ScenarioRunner::stop() { impl_->sim.request_stop(); }

const std::vector<synth::Trace>& ScenarioRunner::traces() const { return impl_->traces; }

ScenarioResult run_scenario(const ScenarioConfig& config, gateway::Services& services) {
    ScenarioRunner runner(config, services);
    return runner.run();
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
    gateway::Services services;
    return run_scenario(config, services);
}

} // namespace vcsim::harness
