#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace vcsim::harness {

struct BenchRow {
    std::string name;
    double measured_s = 0.0;
    double reference_s = 0.0;
    double rel_error = 0.0; // |measured - reference| / reference
};

/// Replays the one-image measurements: a 16 500-byte payload over each
/// calibrated link and one frame through a worker with the measured stage
/// times, all on the virtual clock.
std::vector<BenchRow> bench_table1();
nlohmann::json to_json(const std::vector<BenchRow>& rows);

} // namespace vcsim::harness
