#include "vcsim/synth/trace.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "vcsim/core/json_io.hpp"
#include "vcsim/synth/rng.hpp"

namespace vcsim::synth {

using nlohmann::json;

namespace {

// Background kept between items so their outlines never merge.
constexpr int kItemMargin = 2;

// Picks a random scale in [1, max_scale] that fits, then a random position
// that avoids `taken`. Returns false if nothing fits within a few tries.
bool place_item(Rng& rng, SceneItem& item, int max_scale, int width, int height, const std::vector<SceneItem>& taken) {
    for (int scale = static_cast<int>(rng.between(1, max_scale)); scale >= 1; --scale) {
        item.scale = scale;
        const int w = item.width();
        const int h = item.height();
        if (w > width || h > height) {
            continue;
        }
        for (int attempt = 0; attempt < 32; ++attempt) {
            item.x = static_cast<int>(rng.between(0, width - w));
            item.y = static_cast<int>(rng.between(0, height - h));
            bool clear = true;
            for (const auto& other : taken) {
                const int m = kItemMargin;
                if (!(item.x + w + m <= other.x || other.x + other.width() + m <= item.x ||
                      item.y + h + m <= other.y || other.y + other.height() + m <= item.y)) {
                    clear = false;
                    break;
                }
            }
            if (clear) {
                return true;
            }
        }
    }
    return false;
}

SceneSpec draw_scene(Rng& rng, const TraceParams& p) {
    SceneSpec spec;
    spec.background = static_cast<std::uint8_t>(rng.between(16, 100));
    SceneItem plate{p.plate_pool[rng.below(p.plate_pool.size())], 0, 0, 1};
    if (place_item(rng, plate, 2, p.frame_width, p.frame_height, spec.items)) {
        spec.items.push_back(plate);
    }
    if (!p.face_pool.empty() && rng.chance(p.face_prob)) {
        SceneItem face{p.face_pool[rng.below(p.face_pool.size())], 0, 0, 1};
        if (place_item(rng, face, 2, p.frame_width, p.frame_height, spec.items)) {
            spec.items.push_back(face);
        }
    }
    return spec;
}

json item_to_json(const SceneItem& item) {
    return json{{"kind", to_string(item.kind())},
                {"value", value_to_json(to_detection_value(item.value))},
                {"x", item.x},
                {"y", item.y},
                {"scale", item.scale}};
}

SceneItem item_from_json(const json& j) {
    auto kind = parse_detection_kind(j.at("kind").get<std::string>());
    if (!kind || *kind == DetectionKind::Gps) {
        throw SynthError(SynthErrc::BadTrace, "trace item kind must be plate or face");
    }
    auto value = target_value_from_json(*kind, j.at("value"));
    if (!value) {
        throw SynthError(SynthErrc::BadTrace, "trace item value outside its kind's domain");
    }
    return SceneItem{*value, j.at("x").get<int>(), j.at("y").get<int>(), j.at("scale").get<int>()};
}

} // namespace

Trace gen_trace(const TraceParams& p) {
    if (p.n_steps < 1 || p.step_ms < 1 || p.plate_pool.empty() || (p.face_pool.empty() && p.face_prob > 0.0)) {
        throw SynthError(SynthErrc::BadTrace, "gen_trace: need n_steps >= 1, step_ms >= 1 and nonempty pools");
    }
    if (!(p.repeat_prob >= 0.0 && p.repeat_prob <= 1.0) || !(p.speed_mps >= 0.0)) {
        throw SynthError(SynthErrc::BadTrace, "gen_trace: repeat_prob must be in [0,1] and speed >= 0");
    }
    if (!p.start_fix.valid()) {
        throw SynthError(SynthErrc::BadTrace, "gen_trace: invalid start fix");
    }
    Rng rng(p.seed);
    const double meters_per_step = p.speed_mps * static_cast<double>(p.step_ms) / 1000.0;
    const double e7_per_step = meters_per_step * 1e7 / kMetersPerDegreeLat;

    Trace trace;
    trace.vehicle_id = p.vehicle_id;
    trace.steps.reserve(static_cast<std::size_t>(p.n_steps));
    std::int64_t moves = 0;
    for (int k = 0; k < p.n_steps; ++k) {
        TraceStep step;
        step.t_ms = p.start_fix.timestamp_ms + k * p.step_ms;
        if (k > 0 && rng.chance(p.repeat_prob)) {
            const auto& prev = trace.steps.back();
            step.fix = prev.fix;
            step.scene = prev.scene;
        } else {
            if (k > 0) {
                ++moves;
            }
            step.fix = p.start_fix;
            step.fix.lat_e7 = static_cast<std::int32_t>(
                std::clamp<long long>(p.start_fix.lat_e7 + std::llround(static_cast<double>(moves) * e7_per_step),
                                      -kMaxLatE7, kMaxLatE7));
            step.scene = draw_scene(rng, p);
        }
        step.fix.timestamp_ms = step.t_ms;
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

std::vector<PlateCode> random_plates(std::uint64_t seed, std::size_t n) {
    static constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    Rng rng(seed);
    std::vector<PlateCode> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string code(PlateCode::kLength, 'A');
        for (auto& c : code) {
            c = kAlphabet[rng.below(36)];
        }
        out.push_back(*PlateCode::parse(code));
    }
    return out;
}

std::vector<FaceCode> random_faces(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    std::vector<FaceCode> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(*FaceCode::make(static_cast<long long>(rng.below(FaceCode::kLimit))));
    }
    return out;
}

void write_trace(std::ostream& out, const Trace& trace) {
    out << json{{"vehicle_id", trace.vehicle_id}, {"format", kTraceFormat}}.dump() << '\n';
    for (const auto& step : trace.steps) {
        json items = json::array();
        for (const auto& item : step.scene.items) {
            items.push_back(item_to_json(item));
        }
        out << json{{"t_ms", step.t_ms},
                    {"lat_e7", step.fix.lat_e7},
                    {"lon_e7", step.fix.lon_e7},
                    {"background", step.scene.background},
                    {"items", std::move(items)}}
                   .dump()
            << '\n';
    }
}

Trace read_trace(std::istream& in) {
    Trace trace;
    std::string line;
    bool have_header = false;
    std::int64_t last_t = 0;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            const json j = json::parse(line);
            if (!have_header) {
                if (j.value("format", std::string{}) != kTraceFormat) {
                    throw SynthError(SynthErrc::BadTrace, "trace header missing format vctrace/1");
                }
                trace.vehicle_id = j.at("vehicle_id").get<std::uint64_t>();
                have_header = true;
                continue;
            }
            TraceStep step;
            step.t_ms = j.at("t_ms").get<std::int64_t>();
            step.fix = GpsFix{j.at("lat_e7").get<std::int32_t>(), j.at("lon_e7").get<std::int32_t>(), step.t_ms};
            step.scene.background = j.value("background", std::uint8_t{64});
            for (const auto& item : j.at("items")) {
                step.scene.items.push_back(item_from_json(item));
            }
            if (!trace.steps.empty() && step.t_ms <= last_t) {
                throw SynthError(SynthErrc::BadTrace, "trace t_ms must be strictly increasing");
            }
            if (!step.fix.valid()) {
                throw SynthError(SynthErrc::BadTrace, "trace fix out of range");
            }
            last_t = step.t_ms;
            trace.steps.push_back(std::move(step));
        }
    } catch (const json::exception& e) {
        throw SynthError(SynthErrc::BadTrace, std::string("malformed trace line: ") + e.what());
    }
    if (!have_header) {
        throw SynthError(SynthErrc::BadTrace, "empty trace file");
    }
    return trace;
}

} // namespace vcsim::synth
