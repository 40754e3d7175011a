#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vcsim/core/digest.hpp"
#include "vcsim/core/frame_codec.hpp"
#include "vcsim/core/geo.hpp"
#include "vcsim/core/json_io.hpp"

using namespace vcsim;

namespace {

GeoFrame random_frame(std::mt19937_64& rng) {
    GeoFrame f;
    f.vehicle_id = rng();
    f.has_gps = rng() & 1;
    f.fix.lat_e7 = static_cast<std::int32_t>(static_cast<std::int64_t>(rng() % (2ULL * kMaxLatE7 + 1)) - kMaxLatE7);
    f.fix.lon_e7 = static_cast<std::int32_t>(static_cast<std::int64_t>(rng() % (2ULL * kMaxLonE7 + 1)) - kMaxLonE7);
    f.fix.timestamp_ms = static_cast<std::int64_t>(rng() >> 1);
    f.width = static_cast<std::uint16_t>(1 + rng() % 64);
    f.height = static_cast<std::uint16_t>(1 + rng() % 64);
    f.pixels.resize(static_cast<std::size_t>(f.width) * f.height);
    for (auto& p : f.pixels) p = static_cast<std::uint8_t>(rng());
    return f;
}

// Great-circle distance from the straight-line chord between unit vectors.
double chord_distance_m(const GpsFix& a, const GpsFix& b) {
    auto unit = [](const GpsFix& f) {
        const double lat = f.lat_deg() * std::numbers::pi / 180.0;
        const double lon = f.lon_deg() * std::numbers::pi / 180.0;
        return std::array{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
    };
    const auto p = unit(a);
    const auto q = unit(b);
    const double c = std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) + (p[2] - q[2]) * (p[2] - q[2]));
    return 2.0 * std::asin(std::min(1.0, c / 2.0)) * kEarthRadiusM;
}

template <typename Fn>
FrameErrc frame_error_of(Fn&& fn) {
    try {
        fn();
    } catch (const FrameError& e) {
        return e.code();
    }
    FAIL("no FrameError thrown");
    return FrameErrc::InvalidFrame;
}

} // namespace

TEST_CASE("fnv1a64 reference vectors") {
    CHECK(fnv1a64(std::string_view{}) == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);

    Fnv1a64 h;
    h.update("foo");
    h.update("bar");
    CHECK(h.value() == fnv1a64("foobar"));
}

TEST_CASE("hex64 round trip") {
    CHECK(to_hex64(0) == "0000000000000000");
    CHECK(to_hex64(0xdeadbeefULL) == "00000000deadbeef");
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto v = rng();
        CHECK(parse_hex64(to_hex64(v)) == v);
    }
    CHECK(parse_hex64("DEADBEEF") == 0xdeadbeefULL);
    CHECK_FALSE(parse_hex64(""));
    CHECK_FALSE(parse_hex64("xyz"));
    CHECK_FALSE(parse_hex64("00000000000000000"));
}

TEST_CASE("haversine against a chord oracle") {
    const auto a = GpsFix::from_degrees(45.0, 4.0, 0);
    const auto b = GpsFix::from_degrees(45.0004, 4.0, 0);
    CHECK(haversine_m(a, b) == doctest::Approx(44.4779).epsilon(1e-5));
    CHECK(haversine_m(a, a) == 0.0);

    const auto west = GpsFix::from_degrees(0.0, 0.0, 0);
    const auto east = GpsFix::from_degrees(0.0, 180.0, 0);
    CHECK(haversine_m(west, east) == doctest::Approx(20'015'086.796).epsilon(1e-9));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lat(-89.0, 89.0), lon(-180.0, 180.0);
    for (int i = 0; i < 500; ++i) {
        const auto p = GpsFix::from_degrees(lat(rng), lon(rng), 0);
        const auto q = GpsFix::from_degrees(lat(rng), lon(rng), 0);
        CHECK(haversine_m(p, q) == doctest::Approx(chord_distance_m(p, q)).epsilon(1e-6));
        CHECK(haversine_m(p, q) == doctest::Approx(haversine_m(q, p)));
    }
}

TEST_CASE("frame codec round trip") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 300; ++i) {
        const auto f = random_frame(rng);
        const auto bytes = encode_frame(f);
        CHECK(bytes.size() == encoded_frame_size(f.width, f.height));
        CHECK(decode_frame(bytes) == f);
    }
}

TEST_CASE("frame size for the reference image") {
    CHECK(encoded_frame_size(279, 59) + 5 == 16'500);
}

TEST_CASE("frame decode ignores trailing bytes") {
    std::mt19937_64 rng(2);
    const auto f = random_frame(rng);
    auto bytes = encode_frame(f);
    bytes.push_back(0xff);
    CHECK(decode_frame(bytes) == f);
}

TEST_CASE("frame decode errors") {
    std::mt19937_64 rng(3);
    auto f = random_frame(rng);
    f.has_gps = true;
    const auto good = encode_frame(f);

    auto bytes = good;
    bytes[0] = 'X';
    CHECK(frame_error_of([&] { decode_frame(bytes); }) == FrameErrc::BadMagic);

    bytes = std::vector<std::uint8_t>(good.begin(), good.begin() + 20);
    CHECK(frame_error_of([&] { decode_frame(bytes); }) == FrameErrc::Truncated);

    bytes = good;
    bytes[4] = 2;
    CHECK(frame_error_of([&] { decode_frame(bytes); }) == FrameErrc::BadVersion);

    bytes = good;
    bytes[5] |= 0x80;
    CHECK(frame_error_of([&] { decode_frame(bytes); }) == FrameErrc::OutOfRange);

    bytes = good;
    bytes[25] = 0x7f; // lat_e7 high byte -> beyond 90 degrees
    CHECK(frame_error_of([&] { decode_frame(bytes); }) == FrameErrc::OutOfRange);

    bytes = good;
    bytes[30] = 0;
    bytes[31] = 0;
    CHECK(frame_error_of([&] { decode_frame(bytes); }) == FrameErrc::OutOfRange);

    bytes = std::vector<std::uint8_t>(good.begin(), good.end() - 1);
    CHECK(frame_error_of([&] { decode_frame(bytes); }) == FrameErrc::Truncated);

    auto bad = f;
    bad.pixels.pop_back();
    CHECK(frame_error_of([&] { encode_frame(bad); }) == FrameErrc::InvalidFrame);
}

TEST_CASE("frame id is a content digest") {
    std::mt19937_64 rng(4);
    auto f = random_frame(rng);
    const auto id = f.frame_id();
    CHECK(id.value == fnv1a64(encode_frame(f)));
    f.pixels[0] ^= 1;
    CHECK(f.frame_id() != id);
}

TEST_CASE("plate and face domains") {
    CHECK(PlateCode::parse("AB123CD"));
    CHECK_FALSE(PlateCode::parse("AB123C"));
    CHECK_FALSE(PlateCode::parse("AB123CDE"));
    CHECK_FALSE(PlateCode::parse("ab123cd"));
    CHECK_FALSE(PlateCode::parse("AB-23CD"));
    CHECK(FaceCode::make(0));
    CHECK(FaceCode::make(4095));
    CHECK_FALSE(FaceCode::make(4096));
    CHECK_FALSE(FaceCode::make(-1));

    CHECK(parse_target_value(DetectionKind::Face, "17"));
    CHECK_FALSE(parse_target_value(DetectionKind::Face, "17x"));
    CHECK_FALSE(parse_target_value(DetectionKind::Plate, "17"));
    CHECK(value_string(*parse_target_value(DetectionKind::Face, "0042")) == "42");
    CHECK(parse_detection_kind("gps") == DetectionKind::Gps);
    CHECK_FALSE(parse_detection_kind("car"));
}

TEST_CASE("json forms round trip") {
    Detection d;
    d.detection_id = 12;
    d.value = *PlateCode::parse("ZZ99AA1");
    d.fix = GpsFix::from_degrees(45.1, -3.2, 1'700'000'000'123);
    d.source_frame = FrameId{0xfedcba9876543210ULL};
    d.crop_blob = BlobDigest{0x1234};
    d.worker_id = "worker-2";
    d.detected_at_ms = 1'700'000'000'999;
    nlohmann::json j = d;
    CHECK(j["kind"] == "plate");
    CHECK(j["source_frame"] == "fedcba9876543210");
    CHECK(j.get<Detection>() == d);

    d.value = *FaceCode::make(321);
    d.crop_blob.reset();
    j = d;
    CHECK(j["value"] == 321);
    CHECK(j.get<Detection>() == d);

    d.value = std::monostate{};
    j = d;
    CHECK(j["kind"] == "gps");
    CHECK(j.get<Detection>() == d);

    WatchlistEntry e{3, *FaceCode::make(7), "suspect", 55};
    CHECK(nlohmann::json(e).get<WatchlistEntry>() == e);
    MatchEvent m{9, 3, 12, d.fix, 77};
    CHECK(nlohmann::json(m).get<MatchEvent>() == m);
}
