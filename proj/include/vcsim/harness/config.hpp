#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcsim/core/error.hpp"
#include "vcsim/edge/dedup.hpp"
#include "vcsim/edge/offload.hpp"
#include "vcsim/edge/rsu.hpp"
#include "vcsim/extract/worker.hpp"
#include "vcsim/netsim/simulator.hpp"
#include "vcsim/synth/trace.hpp"

namespace vcsim::harness {

enum class HarnessErrc { ConfigInvalid, TraceNotFound };
using HarnessError = Error<HarnessErrc>;

/// Overrides for one class of link; unset fields keep the calibrated value.
struct LinkOverride {
    std::optional<double> base_latency_s;
    std::optional<double> bandwidth_Bps;
    std::optional<double> loss_prob;
};

/// Synthetic vehicles, used when no trace files are given.
struct GeneratedVehicles {
    int count = 1;
    int steps = 10;
    std::int64_t step_ms = 1000;
    double speed_mps = 20.0;
    double repeat_prob = 0.0;
    double face_prob = 0.5;
    std::size_t plate_pool = 30;
    std::size_t face_pool = 20;
    std::int64_t start_ms = 1'700'000'000'000;
};

struct WatchlistSeed {
    DetectionKind kind = DetectionKind::Plate;
    std::string value;
    std::string label;
};

struct ScenarioConfig {
    netsim::ClockMode mode = netsim::ClockMode::Virtual;
    std::uint64_t seed = 42;
    std::optional<std::int64_t> t_end_ms;
    double time_scale = 1.0;
    int frame_width = 279;
    int frame_height = 59;

    GeneratedVehicles generated;
    std::vector<std::filesystem::path> trace_files; // overrides `generated` when non-empty
    std::vector<synth::Trace> traces;               // in-memory traces, highest precedence

    int rsus = 1;
    int workers = 2;
    int web_workers = 2;
    LinkOverride vehicle_rsu;
    LinkOverride rsu_cloud;

    edge::OffloadPolicy offload;
    bool local_extract_enabled = false;
    edge::DedupConfig dedup;
    edge::DispatchPolicy dispatch = edge::DispatchPolicy::RoundRobin;
    std::optional<extract::ModeledTimes> modeled_times = extract::ModeledTimes{};
    bool concurrent_stages = false;
    double noise_level = 0.0;
    int t_face = 0;

    std::vector<WatchlistSeed> watchlist;
    std::size_t random_watchlist = 0; // entries drawn from the values in the traces

    std::string listen_host = "127.0.0.1";
    int listen_port = 8080;

    /// Throws HarnessError{ConfigInvalid}.
    void validate() const;
};

/// Relative trace paths resolve against `base_dir`. Throws HarnessError{ConfigInvalid}.
ScenarioConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json config_to_json(const ScenarioConfig& config);
/// Throws HarnessError{ConfigInvalid} for unreadable or malformed files.
ScenarioConfig load_config(const std::filesystem::path& path);

/// 3 vehicles x 100 steps, seed 42, 1 RSU, 2 workers, 20-entry watchlist.
ScenarioConfig default_scenario();

/// Loads, or generates, one trace per vehicle. Throws HarnessError{TraceNotFound}.
std::vector<synth::Trace> resolve_traces(const ScenarioConfig& config);

std::optional<edge::OffloadPolicyKind> parse_offload_kind(std::string_view text) noexcept;

} // namespace vcsim::harness
