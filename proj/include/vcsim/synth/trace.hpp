#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vcsim/core/types.hpp"
#include "vcsim/synth/render.hpp"

namespace vcsim::synth {

inline constexpr const char* kTraceFormat = "vctrace/1";
/// Meters per degree of latitude on the 6371 km sphere.
inline constexpr double kMetersPerDegreeLat = 111'194.9;

struct TraceStep {
    std::int64_t t_ms = 0;
    GpsFix fix; // fix.timestamp_ms == t_ms
    SceneSpec scene;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Trace {
    std::uint64_t vehicle_id = 0;
    std::vector<TraceStep> steps;

    friend bool operator==(const Trace&, const Trace&) = default;
};

struct TraceParams {
    std::uint64_t seed = 0;
    std::uint64_t vehicle_id = 1;
    int n_steps = 1;
    std::int64_t step_ms = 1000;
    GpsFix start_fix;
    double speed_mps = 20.0;
    std::vector<PlateCode> plate_pool;
    std::vector<FaceCode> face_pool;
    double repeat_prob = 0.0;
    // Layout bounds for generated scenes.
    int frame_width = 279;
    int frame_height = 59;
    double face_prob = 0.5;
};

/// Straight northward path; each step either repeats the previous step's
/// scene and position (probability repeat_prob) or advances and draws a
/// fresh scene from the pools. Throws SynthError{BadTrace} on bad params.
Trace gen_trace(const TraceParams& params);

/// Uniform random plate / face pools, for scenarios that do not supply them.
std::vector<PlateCode> random_plates(std::uint64_t seed, std::size_t n);
std::vector<FaceCode> random_faces(std::uint64_t seed, std::size_t n);

/// JSON Lines: a {"vehicle_id","format"} header, then one object per step.
void write_trace(std::ostream& out, const Trace& trace);
Trace read_trace(std::istream& in);

} // namespace vcsim::synth
