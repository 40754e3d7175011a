#include <doctest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include <json.hpp>

#include "vcsim/harness/config.hpp"
#include "vcsim/harness/metrics.hpp"
#include "vcsim/harness/scenario.hpp"
#include "vcsim/synth/trace.hpp"

using namespace vcsim;
using namespace vcsim::harness;
using nlohmann::json;

namespace {

HarnessErrc harness_error_of(auto&& fn) {
    try {
        fn();
    } catch (const HarnessError& e) {
        return e.code();
    }
    FAIL("no HarnessError thrown");
    return HarnessErrc::ConfigInvalid;
}

ScenarioConfig small(int vehicles, int steps, double repeat = 0.0) {
    ScenarioConfig c;
    c.seed = 7;
    c.generated.count = vehicles;
    c.generated.steps = steps;
    c.generated.step_ms = 2000;
    c.generated.repeat_prob = repeat;
    return c;
}

std::uint64_t conserved(const MetricsReport& r) { return r.dedup_suppressed + r.drops + r.frames_persisted; }

} // namespace

TEST_CASE("config parsing") {
    auto c = config_from_json(json::parse(R"({
        "mode": "virtual", "seed": 3, "vehicles": {"count": 2, "steps": 4, "repeat_prob": 0.5},
        "workers": 3, "dedup": {"max_hash_distance": 4}, "offload": {"policy": "adaptive", "threshold_s": 1.0},
        "watchlist": [{"kind": "plate", "value": "AB123CD", "label": "x"}],
        "links": {"vehicle_rsu": {"loss_prob": 0.1}}
    })"));
    CHECK(c.seed == 3);
    CHECK(c.generated.count == 2);
    CHECK(c.generated.repeat_prob == 0.5);
    CHECK(c.workers == 3);
    CHECK(c.dedup.max_hash_distance == 4);
    CHECK(c.offload.kind == edge::OffloadPolicyKind::Adaptive);
    REQUIRE(c.watchlist.size() == 1);
    CHECK(c.vehicle_rsu.loss_prob == 0.1);
    // Round trip through JSON.
    CHECK(config_to_json(config_from_json(config_to_json(c))) == config_to_json(c));
    CHECK(config_from_json(json::parse(R"({"watchlist": 5})")).random_watchlist == 5);

    for (std::string bad : {R"({"workers": 0})", R"({"workers": 256})", R"({"mode": "fast"})",
                            R"({"vehicles": {"count": "two"}})", R"({"offload": {"policy": "sometimes"}})",
                            R"({"links": {"vehicle_rsu": {"loss_prob": 2}}})"}) {
        CAPTURE(bad);
        CHECK(harness_error_of([&] { config_from_json(json::parse(bad)); }) == HarnessErrc::ConfigInvalid);
    }
    CHECK(harness_error_of([] { load_config("/nonexistent/config.json"); }) == HarnessErrc::ConfigInvalid);

    ScenarioConfig missing;
    missing.trace_files = {"/nonexistent/trace.jsonl"};
    CHECK(harness_error_of([&] { resolve_traces(missing); }) == HarnessErrc::TraceNotFound);
}

TEST_CASE("default scenario shape") {
    const auto c = default_scenario();
    CHECK(c.seed == 42);
    CHECK(c.generated.count == 3);
    CHECK(c.generated.steps == 100);
    CHECK(c.workers == 2);
    CHECK(c.random_watchlist == 20);
    const auto traces = resolve_traces(c);
    REQUIRE(traces.size() == 3);
    for (std::size_t i = 0; i < traces.size(); ++i) {
        CHECK(traces[i].vehicle_id == i + 1);
        CHECK(traces[i].steps.size() == 100);
    }
    CHECK(resolve_traces(c) == traces);
}

TEST_CASE("nearest-rank percentiles") {
    const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(nearest_rank(v, 50) == 5);
    CHECK(nearest_rank(v, 95) == 10);
    CHECK(nearest_rank(v, 10) == 1);
    CHECK(nearest_rank({3.5}, 95) == 3.5);
    const auto s = summarize({4, 1, 3, 2});
    CHECK(s.count == 4);
    CHECK(s.mean_s == 2.5);
    CHECK(s.p50_s == 2);
    CHECK(s.p95_s == 4);
    CHECK(summarize({}).count == 0);
}

TEST_CASE("single frame end to end") {
    auto c = small(1, 1);
    const auto r = run_scenario(c).report;
    CHECK(r.frames_captured == 1);
    CHECK(r.frames_persisted == 1);
    CHECK(r.stages.at("upload_v2i").p50_s == doctest::Approx(1.33).epsilon(1e-9));
    CHECK(r.stages.at("transfer_rsu_cloud").p50_s == doctest::Approx(1.12).epsilon(1e-9));
    CHECK(std::abs(r.stages.at("end_to_end").p50_s - 5.74) < 1e-6);
    CHECK(r.bytes_sent.at(link_name(vehicle_node(1), rsu_node(0))) >= 16'500);
}

TEST_CASE("dedup in the pipeline") {
    synth::TraceParams p;
    p.seed = 4;
    p.n_steps = 10;
    p.step_ms = 2000;
    p.start_fix = GpsFix::from_degrees(45.0, 4.0, 1'700'000'000'000);
    p.plate_pool = synth::random_plates(11, 50);
    p.face_pool = synth::random_faces(12, 50);
    p.repeat_prob = 1.0;
    ScenarioConfig c;
    c.traces = {synth::gen_trace(p)};
    auto r = run_scenario(c).report;
    CHECK(r.frames_forwarded == 1);
    CHECK(r.dedup_suppressed == 9);

    p.repeat_prob = 0.0;
    c.traces = {synth::gen_trace(p)};
    r = run_scenario(c).report;
    CHECK(r.frames_forwarded == 10);
    CHECK(r.dedup_suppressed == 0);
}

TEST_CASE("every captured frame is accounted for") {
    for (double repeat : {0.0, 0.3}) {
        for (int workers : {1, 2, 3}) {
            auto c = small(2, 30, repeat);
            c.workers = workers;
            const auto r = run_scenario(c).report;
            CHECK(r.frames_captured == 60);
            CHECK(r.drops == 0);
            CHECK(conserved(r) == r.frames_captured);
            CHECK(r.frames_forwarded + r.dedup_suppressed == r.frames_captured);
            std::uint64_t sum = 0;
            for (const auto& [w, n] : r.worker_frames) sum += n;
            CHECK(sum == r.frames_forwarded);
            for (const auto& [name, s] : r.stages) {
                CAPTURE(name);
                CHECK(s.p50_s <= s.p95_s);
                CHECK(s.p50_s >= 0.0);
            }
        }
    }
}

TEST_CASE("runs are reproducible") {
    auto c = small(2, 20, 0.2);
    c.random_watchlist = 10;
    const auto a = run_scenario(c);
    const auto b = run_scenario(c);
    CHECK(a.log_digest == b.log_digest);
    CHECK(to_json(a.report) == to_json(b.report));
    c.seed += 1;
    CHECK(run_scenario(c).log_digest != a.log_digest);
}

TEST_CASE("watchlist matches equal a brute-force join") {
    auto c = small(3, 40, 0.1);
    c.random_watchlist = 20;
    gateway::Services s;
    const auto r = run_scenario(c, s).report;
    std::set<std::pair<std::uint64_t, std::uint64_t>> want;
    for (const auto& e : s.watchlist.list()) {
        for (const auto& d : s.detections.all()) {
            if (e.kind() == DetectionKind::Plate && d.kind() == DetectionKind::Plate &&
                std::get<PlateCode>(e.value).str() == std::get<PlateCode>(d.value).str())
                want.emplace(e.entry_id, d.detection_id);
            if (e.kind() == DetectionKind::Face && d.kind() == DetectionKind::Face &&
                std::get<FaceCode>(e.value).value() == std::get<FaceCode>(d.value).value())
                want.emplace(e.entry_id, d.detection_id);
        }
    }
    std::set<std::pair<std::uint64_t, std::uint64_t>> got;
    for (const auto& m : s.matches.since(0)) got.emplace(m.entry_id, m.detection_id);
    CHECK(s.watchlist.list().size() == 20);
    CHECK(got == want);
    CHECK(r.matches == got.size());
    CHECK(!got.empty());
}

TEST_CASE("local offload persists at the RSU") {
    auto c = small(1, 10);
    c.offload = {edge::OffloadPolicyKind::AlwaysLocal, 0.0};
    c.local_extract_enabled = true;
    const auto r = run_scenario(c).report;
    CHECK(r.frames_captured == 10);
    CHECK(r.frames_forwarded == 0);
    CHECK(r.frames_persisted == 10);
    CHECK(r.worker_frames.empty() == false);
    std::uint64_t sum = 0;
    for (const auto& [w, n] : r.worker_frames) sum += n;
    CHECK(sum == 0);
    // Local records are small, so the uplink carries far less than a frame each.
    CHECK(r.bytes_sent.at(link_name(vehicle_node(1), rsu_node(0))) < 10 * 16'500);
}

TEST_CASE("lossy uplink drops frames") {
    auto c = small(1, 50);
    c.vehicle_rsu.loss_prob = 0.5;
    const auto r = run_scenario(c).report;
    CHECK(r.drops > 0);
    CHECK(r.frames_persisted < 50);
    CHECK(conserved(r) == r.frames_captured);
}

TEST_CASE("snapshots while running") {
    auto c = small(3, 200);
    gateway::Services s;
    ScenarioRunner runner(c, s);
    std::thread t([&] { runner.run(); });
    std::int64_t last = 0;
    for (int i = 0; i < 200; ++i) {
        const auto snap = runner.snapshot();
        CHECK(snap.frames_captured <= 600);
        const auto now = runner.sim_time_ms();
        CHECK(now >= last);
        last = now;
    }
    t.join();
    CHECK(runner.snapshot().frames_captured == 600);
    CHECK_THROWS(runner.run());
}
