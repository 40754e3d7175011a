#include "vcsim/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "vcsim/synth/rng.hpp"

namespace vcsim::harness {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw HarnessError(HarnessErrc::ConfigInvalid, what); }

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key) && !j.at(key).is_null()) {
        out = j.at(key).get<T>();
    }
}

LinkOverride link_override_from_json(const json& j) {
    LinkOverride o;
    if (j.contains("base_latency_s")) o.base_latency_s = j.at("base_latency_s").get<double>();
    if (j.contains("bandwidth_Bps")) o.bandwidth_Bps = j.at("bandwidth_Bps").get<double>();
    if (j.contains("loss_prob")) o.loss_prob = j.at("loss_prob").get<double>();
    return o;
}

json link_override_to_json(const LinkOverride& o) {
    json j = json::object();
    if (o.base_latency_s) j["base_latency_s"] = *o.base_latency_s;
    if (o.bandwidth_Bps) j["bandwidth_Bps"] = *o.bandwidth_Bps;
    if (o.loss_prob) j["loss_prob"] = *o.loss_prob;
    return j;
}

} // namespace

std::optional<edge::OffloadPolicyKind> parse_offload_kind(std::string_view text) noexcept {
    for (auto k : {edge::OffloadPolicyKind::AlwaysCentral, edge::OffloadPolicyKind::AlwaysLocal,
                   edge::OffloadPolicyKind::Adaptive}) {
        if (edge::to_string(k) == text) {
            return k;
        }
    }
    return std::nullopt;
}

void ScenarioConfig::validate() const {
    if (rsus < 1) invalid("rsus must be >= 1");
    if (workers < 1 || workers > 255) invalid("workers must be in [1,255]");
    if (web_workers < 1) invalid("web_workers must be >= 1");
    if (traces.empty() && trace_files.empty()) {
        if (generated.count < 1) invalid("vehicles.count must be >= 1");
        if (generated.steps < 1) invalid("vehicles.steps must be >= 1");
        if (generated.step_ms < 1) invalid("vehicles.step_ms must be >= 1");
        if (!(generated.repeat_prob >= 0.0 && generated.repeat_prob <= 1.0)) invalid("repeat_prob must be in [0,1]");
        if (generated.plate_pool < 1) invalid("vehicles.plate_pool must be >= 1");
    }
    if (frame_width < 1 || frame_height < 1 || frame_width > kMaxFrameSide || frame_height > kMaxFrameSide) {
        invalid("frame size out of range");
    }
    if (!(time_scale > 0.0)) invalid("time_scale must be > 0");
    if (!(noise_level >= 0.0 && noise_level <= 1.0)) invalid("noise_level must be in [0,1]");
    if (t_face < 0 || t_face > 12) invalid("t_face must be in [0,12]");
    for (const auto* o : {&vehicle_rsu, &rsu_cloud}) {
        if (o->base_latency_s && !(*o->base_latency_s >= 0.0)) invalid("base_latency_s must be >= 0");
        if (o->bandwidth_Bps && !(*o->bandwidth_Bps > 0.0)) invalid("bandwidth_Bps must be > 0");
        if (o->loss_prob && !(*o->loss_prob >= 0.0 && *o->loss_prob < 1.0)) invalid("loss_prob must be in [0,1)");
    }
    if (modeled_times && (modeled_times->face_s < 0 || modeled_times->plate_s < 0 || modeled_times->gps_s < 0)) {
        invalid("modeled times must be >= 0");
    }
    if (dedup.window < 1) invalid("dedup.window must be >= 1");
    for (const auto& w : watchlist) {
        if (w.kind == DetectionKind::Gps || !parse_target_value(w.kind, w.value)) {
            invalid("bad watchlist value '" + w.value + "'");
        }
    }
    if (listen_port < 0 || listen_port > 65535) invalid("listen.port out of range");
}

ScenarioConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
    ScenarioConfig c;
    try {
        if (!j.is_object()) invalid("scenario must be a JSON object");
        if (j.contains("mode")) {
            const auto mode = j.at("mode").get<std::string>();
            if (mode == "virtual") c.mode = netsim::ClockMode::Virtual;
            else if (mode == "realtime") c.mode = netsim::ClockMode::Realtime;
            else invalid("mode must be virtual or realtime");
        }
        read_opt(j, "seed", c.seed);
        if (j.contains("t_end_ms") && !j.at("t_end_ms").is_null()) c.t_end_ms = j.at("t_end_ms").get<std::int64_t>();
        read_opt(j, "time_scale", c.time_scale);
        if (j.contains("frame")) {
            read_opt(j.at("frame"), "width", c.frame_width);
            read_opt(j.at("frame"), "height", c.frame_height);
        }
        if (j.contains("vehicles")) {
            const auto& v = j.at("vehicles");
            auto& g = c.generated;
            read_opt(v, "count", g.count);
            read_opt(v, "steps", g.steps);
            read_opt(v, "step_ms", g.step_ms);
            read_opt(v, "speed_mps", g.speed_mps);
            read_opt(v, "repeat_prob", g.repeat_prob);
            read_opt(v, "face_prob", g.face_prob);
            read_opt(v, "plate_pool", g.plate_pool);
            read_opt(v, "face_pool", g.face_pool);
            read_opt(v, "start_ms", g.start_ms);
            if (v.contains("traces")) {
                for (const auto& p : v.at("traces")) {
                    std::filesystem::path path = p.get<std::string>();
                    c.trace_files.push_back(path.is_relative() && !base_dir.empty() ? base_dir / path : path);
                }
            }
        }
        read_opt(j, "rsus", c.rsus);
        read_opt(j, "workers", c.workers);
        read_opt(j, "web_workers", c.web_workers);
        if (j.contains("links")) {
            const auto& l = j.at("links");
            if (l.contains("vehicle_rsu")) c.vehicle_rsu = link_override_from_json(l.at("vehicle_rsu"));
            if (l.contains("rsu_cloud")) c.rsu_cloud = link_override_from_json(l.at("rsu_cloud"));
        }
        if (j.contains("offload")) {
            const auto& o = j.at("offload");
            if (o.contains("policy")) {
                auto kind = parse_offload_kind(o.at("policy").get<std::string>());
                if (!kind) invalid("offload.policy must be always_central, always_local or adaptive");
                c.offload.kind = *kind;
            }
            read_opt(o, "threshold_s", c.offload.threshold_s);
            read_opt(o, "local_extract_enabled", c.local_extract_enabled);
        }
        if (j.contains("dedup")) {
            const auto& d = j.at("dedup");
            read_opt(d, "max_hash_distance", c.dedup.max_hash_distance);
            read_opt(d, "max_distance_m", c.dedup.max_distance_m);
            read_opt(d, "max_dt_ms", c.dedup.max_dt_ms);
            read_opt(d, "window", c.dedup.window);
        }
        if (j.contains("dispatch")) {
            auto p = edge::parse_dispatch_policy(j.at("dispatch").get<std::string>());
            if (!p) invalid("dispatch must be round_robin or least_loaded");
            c.dispatch = *p;
        }
        if (j.contains("modeled_times")) {
            const auto& m = j.at("modeled_times");
            if (m.is_null()) {
                c.modeled_times.reset();
            } else {
                extract::ModeledTimes t;
                read_opt(m, "face_s", t.face_s);
                read_opt(m, "plate_s", t.plate_s);
                read_opt(m, "gps_s", t.gps_s);
                c.modeled_times = t;
            }
        }
        read_opt(j, "concurrent_stages", c.concurrent_stages);
        read_opt(j, "noise_level", c.noise_level);
        read_opt(j, "t_face", c.t_face);
        if (j.contains("watchlist")) {
            const auto& w = j.at("watchlist");
            if (w.is_number_unsigned() || w.is_number_integer()) {
                c.random_watchlist = w.get<std::size_t>();
            } else if (w.is_array()) {
                for (const auto& e : w) {
                    WatchlistSeed s;
                    auto kind = parse_detection_kind(e.at("kind").get<std::string>());
                    if (!kind) invalid("watchlist kind must be plate or face");
                    s.kind = *kind;
                    s.value = e.at("value").is_string() ? e.at("value").get<std::string>() : e.at("value").dump();
                    read_opt(e, "label", s.label);
                    c.watchlist.push_back(std::move(s));
                }
            } else {
                invalid("watchlist must be a count or an array of entries");
            }
        }
        if (j.contains("listen")) {
            read_opt(j.at("listen"), "host", c.listen_host);
            read_opt(j.at("listen"), "port", c.listen_port);
        }
    } catch (const json::exception& e) {
        invalid(std::string("malformed scenario: ") + e.what());
    }
    c.validate();
    return c;
}

json config_to_json(const ScenarioConfig& c) {
    json j;
    j["mode"] = c.mode == netsim::ClockMode::Virtual ? "virtual" : "realtime";
    j["seed"] = c.seed;
    j["t_end_ms"] = c.t_end_ms ? json(*c.t_end_ms) : json(nullptr);
    j["time_scale"] = c.time_scale;
    j["frame"] = {{"width", c.frame_width}, {"height", c.frame_height}};
    const auto& g = c.generated;
    j["vehicles"] = {{"count", g.count},           {"steps", g.steps},           {"step_ms", g.step_ms},
                     {"speed_mps", g.speed_mps},   {"repeat_prob", g.repeat_prob}, {"face_prob", g.face_prob},
                     {"plate_pool", g.plate_pool}, {"face_pool", g.face_pool},   {"start_ms", g.start_ms}};
    if (!c.trace_files.empty()) {
        auto& t = j["vehicles"]["traces"] = json::array();
        for (const auto& p : c.trace_files) t.push_back(p.string());
    }
    j["rsus"] = c.rsus;
    j["workers"] = c.workers;
    j["web_workers"] = c.web_workers;
    j["links"] = {{"vehicle_rsu", link_override_to_json(c.vehicle_rsu)},
                  {"rsu_cloud", link_override_to_json(c.rsu_cloud)}};
    j["offload"] = {{"policy", edge::to_string(c.offload.kind)},
                    {"threshold_s", c.offload.threshold_s},
                    {"local_extract_enabled", c.local_extract_enabled}};
    j["dedup"] = {{"max_hash_distance", c.dedup.max_hash_distance},
                  {"max_distance_m", c.dedup.max_distance_m},
                  {"max_dt_ms", c.dedup.max_dt_ms},
                  {"window", c.dedup.window}};
    j["dispatch"] = edge::to_string(c.dispatch);
    if (c.modeled_times) {
        j["modeled_times"] = {{"face_s", c.modeled_times->face_s},
                              {"plate_s", c.modeled_times->plate_s},
                              {"gps_s", c.modeled_times->gps_s}};
    } else {
        j["modeled_times"] = nullptr;
    }
    j["concurrent_stages"] = c.concurrent_stages;
    j["noise_level"] = c.noise_level;
    j["t_face"] = c.t_face;
    if (c.watchlist.empty()) {
        j["watchlist"] = c.random_watchlist;
    } else {
        auto& w = j["watchlist"] = json::array();
        for (const auto& e : c.watchlist) {
            w.push_back({{"kind", to_string(e.kind)}, {"value", e.value}, {"label", e.label}});
        }
    }
    j["listen"] = {{"host", c.listen_host}, {"port", c.listen_port}};
    return j;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        invalid("cannot open scenario " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        invalid("scenario " + path.string() + " is not JSON: " + e.what());
    }
    return config_from_json(j, path.parent_path());
}

ScenarioConfig default_scenario() {
    ScenarioConfig c;
    c.seed = 42;
    c.generated.count = 3;
    c.generated.steps = 100;
    c.generated.step_ms = 2000;
    c.generated.repeat_prob = 0.2;
    c.workers = 2;
    c.random_watchlist = 20;
    return c;
}

std::vector<synth::Trace> resolve_traces(const ScenarioConfig& c) {
    if (!c.traces.empty()) {
        return c.traces;
    }
    std::vector<synth::Trace> out;
    if (!c.trace_files.empty()) {
        std::set<std::uint64_t> ids;
        for (const auto& path : c.trace_files) {
            std::ifstream in(path);
            if (!in) {
                throw HarnessError(HarnessErrc::TraceNotFound, "trace not found: " + path.string());
            }
            try {
                out.push_back(synth::read_trace(in));
            } catch (const std::exception& e) {
                invalid("trace " + path.string() + ": " + e.what());
            }
            if (!ids.insert(out.back().vehicle_id).second) {
                invalid("duplicate vehicle_id in " + path.string());
            }
        }
        return out;
    }
    const auto& g = c.generated;
    const auto plates = synth::random_plates(synth::mix_seed(c.seed, 0x706c61746573ULL), g.plate_pool);
    const auto faces = synth::random_faces(synth::mix_seed(c.seed, 0x6661636573ULL), g.face_pool);
    for (int i = 0; i < g.count; ++i) {
        synth::TraceParams p;
        p.seed = synth::mix_seed(c.seed, static_cast<std::uint64_t>(i) + 1);
        p.vehicle_id = static_cast<std::uint64_t>(i) + 1;
        p.n_steps = g.steps;
        p.step_ms = g.step_ms;
        // Parallel roads 0.01 degree apart.
        p.start_fix = GpsFix::from_degrees(45.4397, 4.3872 + 0.01 * i, g.start_ms);
        p.speed_mps = g.speed_mps;
        p.plate_pool = plates;
        p.face_pool = faces;
        p.repeat_prob = g.repeat_prob;
        p.frame_width = c.frame_width;
        p.frame_height = c.frame_height;
        p.face_prob = g.face_prob;
        out.push_back(synth::gen_trace(p));
    }
    return out;
}

} // namespace vcsim::harness
