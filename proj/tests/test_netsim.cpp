#include <doctest.h>

#include <chrono>
#include <cstring>
#include <map>
#include <random>

#include "vcsim/netsim/link.hpp"
#include "vcsim/netsim/message.hpp"
#include "vcsim/netsim/simulator.hpp"
#include "vcsim/netsim/topology.hpp"

using namespace vcsim;
using namespace vcsim::netsim;

namespace {

WireErrc wire_error_of(auto&& fn) {
    try {
        fn();
    } catch (const WireError& e) {
        return e.code();
    }
    FAIL("no WireError thrown");
    return WireErrc::BadTopology;
}

Message sized(std::size_t wire_bytes, std::uint8_t fill = 0) {
    return Message{MessageType::Control, std::vector<std::uint8_t>(wire_bytes - kFramingBytes, fill)};
}

LinkParams link(std::string id, std::string src, std::string dst, double latency, double bw, double loss = 0.0) {
    return LinkParams{std::move(id), std::move(src), std::move(dst), latency, bw, loss};
}

struct Recorder {
    std::vector<SimEvent> seen;
    Simulator::Handler handler() {
        return [this](const SimEvent& ev) { seen.push_back(ev); };
    }
};

} // namespace

TEST_CASE("message framing round trip") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        Message m;
        m.type = static_cast<MessageType>(1 + rng() % 4);
        m.body.resize(rng() % 300);
        for (auto& b : m.body) b = static_cast<std::uint8_t>(rng());
        const auto bytes = encode_message(m);
        CHECK(bytes.size() == m.wire_size());
        CHECK(decode_message(bytes) == m);
    }
}

TEST_CASE("message framing errors") {
    const auto good = encode_message(Message{MessageType::Ack, {1, 2, 3}});
    CHECK(wire_error_of([&] { decode_message(std::span(good).first(4)); }) == WireErrc::Truncated);
    CHECK(wire_error_of([&] { decode_message(std::span(good).first(6)); }) == WireErrc::Truncated);
    auto bytes = good;
    bytes[4] = 9;
    CHECK(wire_error_of([&] { decode_message(bytes); }) == WireErrc::BadType);
    bytes = good;
    bytes[4] = 0;
    CHECK(wire_error_of([&] { decode_message(bytes); }) == WireErrc::BadType);
    bytes = good;
    bytes.push_back(0);
    CHECK(wire_error_of([&] { decode_message(bytes); }) == WireErrc::TrailingBytes);
}

TEST_CASE("time conversions") {
    CHECK(from_seconds(1.33).count() == 1'330'000'000);
    CHECK(to_seconds(from_seconds(5.74)) == 5.74);
    CHECK(to_ms(from_ms(1'700'000'000'123)) == 1'700'000'000'123);
    CHECK(to_ms(SimTime{1'999'999}) == 1);
}

TEST_CASE("calibrated links reproduce the one-image times") {
    const auto cal = calibrate_table1();
    CHECK(transfer_time(kTable1PayloadBytes, cal.vehicle_rsu) == doctest::Approx(1.33).epsilon(1e-12));
    CHECK(transfer_time(kTable1PayloadBytes, cal.rsu_cloud) == doctest::Approx(1.12).epsilon(1e-12));
    CHECK(cal.vehicle_rsu.bandwidth_Bps == doctest::Approx(16500.0 / 1.28));
    CHECK(cal.rsu_cloud.bandwidth_Bps == doctest::Approx(16500.0 / 1.07));
    CHECK(cal.vehicle_rsu.base_latency_s == kDefaultBaseLatencyS);
    // Affine in the payload.
    CHECK(transfer_time(2 * kTable1PayloadBytes, cal.vehicle_rsu) == doctest::Approx(2 * 1.33 - 0.05));
}

TEST_CASE("back-to-back sends serialize on the link") {
    const auto cal = calibrate_table1();
    auto l = cal.vehicle_rsu;
    l.link_id = "v->r";
    l.src = "v";
    l.dst = "r";
    Simulator sim(ClockMode::Virtual, 0);
    Recorder r;
    sim.add_node("v", {});
    sim.add_node("r", r.handler());
    sim.add_link(l);
    sim.schedule_send("v->r", sized(16'500, 1));
    sim.schedule_send("v->r", sized(16'500, 2));
    sim.run_all();
    REQUIRE(r.seen.size() == 2);
    CHECK(to_seconds(r.seen[0].due) == doctest::Approx(1.33).epsilon(1e-9));
    CHECK(to_seconds(r.seen[1].due) == doctest::Approx(2.61).epsilon(1e-9));
    CHECK(r.seen[0].payload.body[0] == 1);
    CHECK(sim.bytes_sent().at("v->r") == 33'000);
}

TEST_CASE("per-link FIFO under random traffic") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        Simulator sim(ClockMode::Virtual, trial);
        std::map<std::string, std::vector<std::uint64_t>> order;
        std::map<std::string, std::vector<std::uint64_t>> sent;
        bool bounds_ok = true;
        sim.add_node("a", [&](const SimEvent& ev) {
            if (ev.kind != EventKind::Timer) return;
            // Timer tag selects the link; the payload carries a sequence number.
            const std::string id = ev.timer_tag % 2 ? "a->b" : "a->c";
            Message m = sized(5 + 8 + rng() % 5000);
            std::memcpy(m.body.data(), &ev.timer_tag, 8);
            sent[id].push_back(ev.timer_tag);
            sim.schedule_send(id, std::move(m));
        });
        auto sink = [&](const SimEvent& ev) {
            std::uint64_t tag = 0;
            std::memcpy(&tag, ev.payload.body.data(), 8);
            order[ev.link_id].push_back(tag);
            const double min_s = transfer_time(ev.payload.wire_size(), sim.link(ev.link_id));
            if (to_seconds(ev.due - ev.sent_at) < min_s - 1e-9) bounds_ok = false;
        };
        sim.add_node("b", sink);
        sim.add_node("c", sink);
        sim.add_link(link("a->b", "a", "b", 0.01, 20'000));
        sim.add_link(link("a->c", "a", "c", 0.2, 100'000));
        for (std::uint64_t k = 0; k < 200; ++k) {
            sim.schedule_timer_at("a", from_ms(static_cast<std::int64_t>(rng() % 5000)), k);
        }
        sim.run_all();
        CHECK(bounds_ok);
        CHECK(order == sent);
        CHECK(order["a->b"].size() + order["a->c"].size() == 200);
    }
}

TEST_CASE("deliveries keep send order per link") {
    Simulator sim(ClockMode::Virtual, 0);
    std::vector<std::uint8_t> got;
    sim.add_node("a", {});
    sim.add_node("b", [&](const SimEvent& ev) { got.push_back(ev.payload.body[0]); });
    sim.add_link(link("a->b", "a", "b", 0.0, 1000));
    // A big message then small ones: the small ones wait behind it.
    sim.schedule_send("a->b", sized(5000, 0));
    for (std::uint8_t i = 1; i < 20; ++i) sim.schedule_send("a->b", sized(6, i));
    sim.run_all();
    REQUIRE(got.size() == 20);
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == i);
}

TEST_CASE("timers fire in (due, seq) order") {
    Simulator sim(ClockMode::Virtual, 0);
    std::vector<std::uint64_t> tags;
    sim.add_node("n", [&](const SimEvent& ev) { tags.push_back(ev.timer_tag); });
    sim.schedule_timer_at("n", from_ms(5), 1);
    sim.schedule_timer_at("n", from_ms(3), 2);
    sim.schedule_timer_at("n", from_ms(5), 3);
    sim.schedule_timer_at("n", from_ms(1), 4);
    const auto log = sim.run_all();
    CHECK(tags == std::vector<std::uint64_t>{4, 2, 1, 3});
    REQUIRE(log.size() == 4);
    for (std::size_t i = 1; i < log.size(); ++i) {
        CHECK((log[i - 1].due < log[i].due || (log[i - 1].due == log[i].due && log[i - 1].seq < log[i].seq)));
    }
    CHECK(sim.now() == from_ms(5));
}

TEST_CASE("run_until leaves later events queued") {
    Simulator sim(ClockMode::Virtual, 0);
    int fired = 0;
    sim.add_node("n", [&](const SimEvent&) { ++fired; });
    sim.schedule_timer_at("n", from_ms(10), 0);
    sim.schedule_timer_at("n", from_ms(20), 0);
    sim.run_until(from_ms(15));
    CHECK(fired == 1);
    CHECK(sim.pending() == 1);
    sim.run_all();
    CHECK(fired == 2);
}

TEST_CASE("request_stop ends the run") {
    Simulator sim(ClockMode::Virtual, 0);
    int fired = 0;
    sim.add_node("n", [&](const SimEvent&) {
        if (++fired == 3) sim.request_stop();
    });
    for (int i = 0; i < 10; ++i) sim.schedule_timer_at("n", from_ms(i), 0);
    sim.run_all();
    CHECK(fired == 3);
    sim.run_all();
    CHECK(fired == 10);
}

TEST_CASE("loss is seeded and reported") {
    auto run = [](std::uint64_t seed) {
        Simulator sim(ClockMode::Virtual, seed);
        int delivered = 0, dropped = 0;
        sim.add_node("a", {});
        sim.add_node("b", [&](const SimEvent&) { ++delivered; });
        sim.add_link(link("a->b", "a", "b", 0.0, 1e6, 0.3));
        sim.set_drop_listener([&](const SimEvent&) { ++dropped; });
        for (int i = 0; i < 1000; ++i) sim.schedule_send("a->b", sized(10));
        sim.run_all();
        CHECK(delivered + dropped == 1000);
        return std::pair{dropped, sim.log_digest()};
    };
    const auto a = run(1);
    const auto b = run(1);
    const auto c = run(2);
    CHECK(a == b);
    CHECK(a.second != c.second);
    CHECK(a.first > 240);
    CHECK(a.first < 360);
}

TEST_CASE("event log digest is deterministic") {
    auto run = [] {
        Simulator sim(ClockMode::Virtual, 42);
        sim.add_node("a", [&](const SimEvent& ev) {
            if (ev.kind == EventKind::Timer && ev.timer_tag < 50) {
                sim.schedule_send("a->b", sized(100 + ev.timer_tag));
                sim.schedule_timer("a", from_seconds(0.1), ev.timer_tag + 1);
            }
        });
        sim.add_node("b", {});
        sim.add_link(link("a->b", "a", "b", 0.05, 5000));
        sim.schedule_timer_at("a", SimTime{0}, 0);
        const auto log = sim.run_all();
        return std::pair{sim.log_digest(), log};
    };
    const auto a = run();
    const auto b = run();
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    CHECK(a.second.size() == 101);
}

TEST_CASE("simulator setup errors") {
    Simulator sim(ClockMode::Virtual, 0);
    sim.add_node("a", {});
    CHECK(wire_error_of([&] { sim.add_node("a", {}); }) == WireErrc::BadTopology);
    CHECK(wire_error_of([&] { sim.add_link(link("x", "a", "b", -1.0, 10)); }) == WireErrc::BadTopology);
    CHECK(wire_error_of([&] { sim.add_link(link("x", "a", "b", 0.0, 0.0)); }) == WireErrc::BadTopology);
    sim.add_link(link("a->b", "a", "b", 0.0, 10));
    CHECK(wire_error_of([&] { sim.add_link(link("a->b", "a", "b", 0.0, 10)); }) == WireErrc::BadTopology);
    CHECK(wire_error_of([&] { sim.schedule_send("nope", sized(10)); }) == WireErrc::UnknownLink);
    CHECK(wire_error_of([&] { sim.schedule_send("a->b", sized(10)); }) == WireErrc::UnknownNode);
    CHECK(wire_error_of([&] { sim.schedule_timer("zz", SimTime{0}, 0); }) == WireErrc::UnknownNode);
}

TEST_CASE("realtime mode paces against the wall clock") {
    Simulator sim(ClockMode::Realtime, 0, SimTime{0}, 10.0);
    int fired = 0;
    sim.add_node("n", [&](const SimEvent&) { ++fired; });
    sim.schedule_timer_at("n", from_seconds(0.5), 0);
    const auto start = std::chrono::steady_clock::now();
    sim.run_all();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(fired == 1);
    // 0.5 simulated seconds at 10x.
    CHECK(wall >= 0.045);
    CHECK(wall < 1.0);
}

TEST_CASE("virtual clock never goes backwards") {
    VirtualClock clock(ClockMode::Virtual, from_ms(100));
    clock.advance_to(from_ms(50));
    CHECK(clock.now() == from_ms(100));
    clock.advance_to(from_ms(150));
    CHECK(clock.now() == from_ms(150));
}

TEST_CASE("topology json") {
    Topology t;
    t.nodes = {{"v", "vehicle"}, {"r", "rsu"}, {"w", "worker"}};
    t.links = {link("v->r", "v", "r", 0.05, 12890.625), link("r->w", "r", "w", 0.05, 15000, 0.01)};
    CHECK_NOTHROW(t.validate());
    const nlohmann::json j = t;
    CHECK(j.get<Topology>() == t);
    CHECK(t.find_link("r->w") != nullptr);
    CHECK(t.find_link("w->r") == nullptr);

    auto bad = t;
    bad.links.push_back(link("x", "v", "ghost", 0.0, 1));
    CHECK(wire_error_of([&] { bad.validate(); }) == WireErrc::BadTopology);
    bad = t;
    bad.nodes.push_back({"v", "vehicle"});
    CHECK(wire_error_of([&] { bad.validate(); }) == WireErrc::BadTopology);
}
