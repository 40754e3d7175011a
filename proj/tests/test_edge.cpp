#include <doctest.h>

#include <algorithm>

#include "scene_support.hpp"
#include "vcsim/core/frame_codec.hpp"
#include "vcsim/edge/dedup.hpp"
#include "vcsim/edge/offload.hpp"
#include "vcsim/edge/phash.hpp"
#include "vcsim/edge/rsu.hpp"
#include "vcsim/edge/vehicle.hpp"
#include "vcsim/extract/record.hpp"
#include "vcsim/netsim/link.hpp"

using namespace vcsim;
using namespace vcsim::edge;

namespace {

// Straightforward average hash: per-cell floor means, then compare each
// cell against the exact mean of the 64 cells in floating point.
std::uint64_t oracle_phash(const GeoFrame& f) {
    std::uint64_t cells[64];
    for (int cy = 0; cy < 8; ++cy) {
        for (int cx = 0; cx < 8; ++cx) {
            int y0 = cy * f.height / 8, y1 = (cy + 1) * f.height / 8;
            int x0 = cx * f.width / 8, x1 = (cx + 1) * f.width / 8;
            if (y1 <= y0) { y0 = std::min<int>(y0, f.height - 1); y1 = y0 + 1; }
            if (x1 <= x0) { x0 = std::min<int>(x0, f.width - 1); x1 = x0 + 1; }
            std::uint64_t s = 0;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) s += f.at(x, y);
            cells[cy * 8 + cx] = s / static_cast<std::uint64_t>((y1 - y0) * (x1 - x0));
        }
    }
    long double mean = 0;
    for (auto c : cells) mean += c;
    mean /= 64;
    std::uint64_t h = 0;
    for (auto c : cells) h = (h << 1) | (static_cast<long double>(c) >= mean ? 1 : 0);
    return h;
}

GeoFrame uniform(std::uint8_t v, int w = 64, int h = 32) {
    GeoFrame f;
    f.vehicle_id = 1;
    f.width = static_cast<std::uint16_t>(w);
    f.height = static_cast<std::uint16_t>(h);
    f.pixels.assign(static_cast<std::size_t>(w) * h, v);
    f.fix = GpsFix::from_degrees(45, 4, 1000);
    return f;
}

synth::Trace make_trace(std::uint64_t seed, int steps, double repeat) {
    synth::TraceParams p;
    p.seed = seed;
    p.n_steps = steps;
    p.start_fix = GpsFix::from_degrees(45.0, 4.0, 1'700'000'000'000);
    p.plate_pool = synth::random_plates(seed * 7 + 1, 1000);
    p.face_pool = synth::random_faces(seed * 7 + 2, 1000);
    p.repeat_prob = repeat;
    return synth::gen_trace(p);
}

VehicleConfig vehicle_config(OffloadPolicyKind kind, bool local) {
    VehicleConfig c;
    c.offload.kind = kind;
    c.local_extract_enabled = local;
    c.uplink = netsim::calibrate_table1().vehicle_rsu;
    return c;
}

} // namespace

TEST_CASE("phash matches the oracle") {
    CHECK(phash(uniform(128)) == ~0ULL);
    CHECK(phash(uniform(0)) == ~0ULL);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto lf = testing::random_labelled_frame(seed, 279, 59, 1, 0.0);
        CHECK(phash(lf.frame) == oracle_phash(lf.frame));
    }
    // Frames smaller than the grid.
    auto tiny = uniform(10, 3, 5);
    tiny.pixels[0] = 200;
    CHECK(phash(tiny) == oracle_phash(tiny));
}

TEST_CASE("phash is stable under light noise") {
    int within = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto lf = testing::random_labelled_frame(seed, 279, 59, 2, 0.0);
        auto noisy = lf.frame;
        synth::apply_salt_pepper(noisy.pixels, 0.01, seed + 12345);
        within += hamming(phash(lf.frame), phash(noisy)) <= 5;
    }
    CHECK(within >= 495);
}

TEST_CASE("dedup gates") {
    const auto f = testing::random_labelled_frame(3, 279, 59, 1, 0.0).frame;
    const auto h = phash(f);
    const auto here = GpsFix::from_degrees(45.0, 4.0, 10'000);

    Deduplicator d;
    auto first = d.check(1, h, here);
    CHECK_FALSE(first.duplicate);
    CHECK(first.matched_hash_distance == 64);

    auto later = here;
    later.timestamp_ms += 1000;
    auto r = d.check(1, h, later);
    CHECK(r.duplicate);
    CHECK(r.matched_hash_distance == 0);
    CHECK(r.matched_distance_m == 0.0);
    CHECK(r.matched_dt_ms == 1000);

    Deduplicator far_d;
    far_d.check(1, h, here);
    auto far = GpsFix::from_degrees(45.0018, 4.0, 11'000); // ~200 m north
    CHECK_FALSE(far_d.check(1, h, far).duplicate);

    Deduplicator late_d;
    late_d.check(1, h, here);
    auto late = here;
    late.timestamp_ms += 11'000;
    CHECK_FALSE(late_d.check(1, h, late).duplicate);

    Deduplicator other_d;
    other_d.check(1, h, here);
    CHECK_FALSE(other_d.check(2, h, later).duplicate);
    CHECK_FALSE(other_d.check(1, h ^ 0x3f, later).duplicate);
    CHECK(other_d.check(1, h ^ 0x1f, later).duplicate);
}

TEST_CASE("dedup window is bounded and always appended") {
    DedupConfig cfg;
    cfg.window = 5;
    Deduplicator d(cfg);
    for (int i = 0; i < 12; ++i) {
        d.check(1, static_cast<std::uint64_t>(i) * 0x0101010101010101ULL, GpsFix::from_degrees(45, 4, i));
        CHECK(d.window_size(1) == static_cast<std::size_t>(std::min(i + 1, 5)));
    }
    // Duplicates enter the window too.
    Deduplicator e;
    const auto fix = GpsFix::from_degrees(45, 4, 0);
    e.check(1, 7, fix);
    CHECK(e.check(1, 7, fix).duplicate);
    CHECK(e.window_size(1) == 2);
}

TEST_CASE("dedup soundness on byte-identical frames") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto f = testing::random_labelled_frame(seed, 279, 59, 2, 0.02).frame;
        RsuNode rsu("rsu", 2);
        CHECK_FALSE(rsu.is_duplicate(f).duplicate);
        f.fix.timestamp_ms += 500 + static_cast<std::int64_t>(seed * 100);
        CHECK(rsu.is_duplicate(f).duplicate);
        CHECK(rsu.suppressed() == 1);
    }
}

TEST_CASE("repeat-free traces are never suppressed") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        VehicleNode v(make_trace(seed, 60, 0.0), vehicle_config(OffloadPolicyKind::AlwaysCentral, false));
        RsuNode rsu("rsu", 2);
        while (!v.exhausted()) {
            const auto c = v.capture_tick();
            REQUIRE(c.messages.size() == 1);
            CHECK_FALSE(rsu.on_frame_upload(c.messages[0]).dedup.duplicate);
        }
        CHECK(rsu.suppressed() == 0);
    }
}

TEST_CASE("forced repeats are suppressed") {
    VehicleNode v(make_trace(4, 10, 1.0), vehicle_config(OffloadPolicyKind::AlwaysCentral, false));
    RsuNode rsu("rsu", 2);
    int forwarded = 0;
    while (!v.exhausted()) {
        forwarded += rsu.on_frame_upload(v.capture_tick().messages[0]).worker.has_value();
    }
    CHECK(forwarded == 1);
    CHECK(rsu.suppressed() == 9);
}

TEST_CASE("offload decisions") {
    const OffloadPolicy adaptive2{OffloadPolicyKind::Adaptive, 2.0};
    const OffloadPolicy adaptive1{OffloadPolicyKind::Adaptive, 1.0};
    CHECK(decide_offload(adaptive2, 1.33, true) == OffloadDecision::Central);
    CHECK(decide_offload(adaptive1, 1.33, true) == OffloadDecision::Local);
    CHECK(decide_offload(adaptive1, 1.33, false) == OffloadDecision::Central);
    CHECK(decide_offload({OffloadPolicyKind::AlwaysLocal, 0}, 1.33, false) == OffloadDecision::Central);
    CHECK(decide_offload({OffloadPolicyKind::AlwaysLocal, 0}, 1.33, true) == OffloadDecision::Local);
    CHECK(decide_offload({OffloadPolicyKind::AlwaysCentral, 0}, 99.0, true) == OffloadDecision::Central);
    // Only the sign of (estimate - threshold) matters.
    synth::Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double t = rng.unit() * 5;
        const double est = rng.unit() * 5;
        const auto want = est > t ? OffloadDecision::Local : OffloadDecision::Central;
        CHECK(decide_offload({OffloadPolicyKind::Adaptive, t}, est, true) == want);
    }
}

TEST_CASE("round-robin dispatch") {
    RsuNode two("rsu", 2);
    std::vector<std::size_t> seq;
    for (int i = 0; i < 4; ++i) seq.push_back(two.dispatch());
    CHECK(seq == std::vector<std::size_t>{0, 1, 0, 1});

    RsuNode three("rsu", 3);
    for (int i = 0; i < 10; ++i) three.dispatch();
    CHECK(three.dispatch_counts() == std::vector<std::uint64_t>{4, 3, 3});
    CHECK(three.rr_cursor() == 1);

    for (std::size_t w = 1; w <= 7; ++w) {
        RsuNode rsu("rsu", w);
        for (int n = 1; n <= 50; ++n) {
            rsu.dispatch();
            const auto& c = rsu.dispatch_counts();
            CHECK(*std::max_element(c.begin(), c.end()) - *std::min_element(c.begin(), c.end()) <= 1);
            CHECK(rsu.rr_cursor() < w);
        }
    }

    RsuNode none("rsu", 0);
    CHECK_THROWS_AS(none.dispatch(), EdgeError);
}

TEST_CASE("least-loaded dispatch") {
    RsuNode rsu("rsu", 2, DispatchPolicy::LeastLoaded);
    CHECK(rsu.dispatch() == 0);
    CHECK(rsu.dispatch() == 1);
    CHECK(rsu.dispatch() == 0);
    CHECK(rsu.dispatch() == 1);
    rsu.complete(1);
    rsu.complete(1);
    // Worker 0 busy with 2, worker 1 with 0.
    CHECK(rsu.dispatch() == 1);
    CHECK(rsu.dispatch() == 1);
    CHECK(rsu.dispatch() == 0); // tie goes to the lower index
    CHECK(parse_dispatch_policy("least_loaded") == DispatchPolicy::LeastLoaded);
    CHECK_FALSE(parse_dispatch_policy("random"));
}

TEST_CASE("vehicle capture") {
    const auto trace = make_trace(2, 3, 0.0);
    VehicleNode central(trace, vehicle_config(OffloadPolicyKind::AlwaysCentral, true));
    const auto c = central.capture_tick();
    REQUIRE(c.messages.size() == 1);
    CHECK(c.messages[0].type == netsim::MessageType::FrameUpload);
    CHECK(c.messages[0].wire_size() == 34 + 279 * 59 + 5);
    CHECK(c.estimated_upload_s == doctest::Approx(1.33));
    CHECK(decode_frame(c.messages[0].body) == c.frame);
    CHECK(c.frame.fix == trace.steps[0].fix);

    // One plate, no face: exactly one record.
    synth::Trace one;
    one.vehicle_id = 5;
    synth::TraceStep step;
    step.t_ms = 1000;
    step.fix = GpsFix::from_degrees(45, 4, 1000);
    step.scene.items.push_back({*PlateCode::parse("LOCAL12"), 10, 10, 1});
    one.steps.push_back(step);
    VehicleNode local(one, vehicle_config(OffloadPolicyKind::AlwaysLocal, true));
    const auto l = local.capture_tick();
    CHECK(l.decision == OffloadDecision::Local);
    REQUIRE(l.messages.size() == 1);
    CHECK(l.messages[0].type == netsim::MessageType::DetectionRecord);
    const auto rec = extract::decode_detection_record(l.messages[0]);
    CHECK(value_string(rec.detection.value) == "LOCAL12");
    CHECK(rec.detection.worker_id == "vehicle-5");
    CHECK(rec.detection.source_frame == l.frame_id);
    CHECK_FALSE(rec.crop.empty());
    CHECK_THROWS_AS(local.capture_tick(), EdgeError);

    VehicleNode gated(one, vehicle_config(OffloadPolicyKind::AlwaysLocal, false));
    CHECK(gated.capture_tick().messages[0].type == netsim::MessageType::FrameUpload);
}

TEST_CASE("repeated steps render identical pixels") {
    auto cfg = vehicle_config(OffloadPolicyKind::AlwaysCentral, false);
    cfg.noise_level = 0.02;
    cfg.noise_seed = 9;
    VehicleNode v(make_trace(6, 6, 1.0), cfg);
    const auto first = v.capture_tick();
    while (!v.exhausted()) {
        const auto next = v.capture_tick();
        CHECK(next.frame.pixels == first.frame.pixels);
        CHECK(next.frame.fix.lat_e7 == first.frame.fix.lat_e7);
    }
}

TEST_CASE("rsu rejects bad uploads") {
    RsuNode rsu("rsu", 1);
    CHECK_THROWS_AS(rsu.on_frame_upload(netsim::Message{netsim::MessageType::Ack, {}}), EdgeError);
    CHECK_THROWS_AS(rsu.on_frame_upload(netsim::Message{netsim::MessageType::FrameUpload, {1, 2, 3}}), EdgeError);
}
