#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "vcsim/gateway/services.hpp"
#include "vcsim/harness/config.hpp"
#include "vcsim/harness/metrics.hpp"
#include "vcsim/netsim/simulator.hpp"

namespace vcsim::harness {

struct ScenarioResult {
    MetricsReport report;
    std::uint64_t log_digest = 0;
    std::vector<netsim::ProcessedEvent> events;
};

/// Node and link names used on the simulated network.
std::string vehicle_node(std::uint64_t vehicle_id);
std::string rsu_node(int index);
std::string worker_node(int index);
std::string link_name(std::string_view src, std::string_view dst);

// Wires vehicles, RSUs and workers over the simulator and feeds persisted
// detections into `services`. One run per runner.
class ScenarioRunner {
public:
    /// Validates the config, resolves traces and seeds the watchlist.
    ScenarioRunner(ScenarioConfig config, gateway::Services& services);
    ~ScenarioRunner();
    ScenarioRunner(const ScenarioRunner&) = delete;
    ScenarioRunner& operator=(const ScenarioRunner&) = delete;

    ScenarioResult run();
    /// Thread-safe view of the metrics so far.
    MetricsReport snapshot() const;
    /// Thread-safe; simulated time of the last processed event.
    std::int64_t sim_time_ms() const;
    /// Thread-safe; ends a running run() after the current event.
    void stop();

    const std::vector<synth::Trace>& traces() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper: one run against fresh services.
ScenarioResult run_scenario(const ScenarioConfig& config);
ScenarioResult run_scenario(const ScenarioConfig& config, gateway::Services& services);

} // namespace vcsim::harness
