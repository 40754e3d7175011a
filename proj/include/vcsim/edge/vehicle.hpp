#pragma once

#include <cstdint>
#include <vector>

#include "vcsim/edge/offload.hpp"
#include "vcsim/extract/extractors.hpp"
#include "vcsim/netsim/link.hpp"
#include "vcsim/netsim/message.hpp"
#include "vcsim/synth/trace.hpp"

namespace vcsim::edge {

struct VehicleConfig {
    OffloadPolicy offload;
    bool local_extract_enabled = false;
    double noise_level = 0.0;
    std::uint64_t noise_seed = 0;
    int frame_width = 279;
    int frame_height = 59;
    /// Used to estimate the upload time for the adaptive policy.
    netsim::LinkParams uplink;
    extract::ExtractConfig extract;
};

struct CaptureResult {
    GeoFrame frame;
    FrameId frame_id;
    std::int64_t t_ms = 0;
    double estimated_upload_s = 0.0;
    OffloadDecision decision = OffloadDecision::Central;
    /// One FRAME_UPLOAD, or DETECTION_RECORDs when extracted on board.
    std::vector<netsim::Message> messages;
};

/// Digest of a scene's content; equal scenes render identical pixels.
std::uint64_t scene_digest(const synth::SceneSpec& scene);

// Camera + GPS on a vehicle replaying a trace, one capture per step.
class VehicleNode {
public:
    VehicleNode(synth::Trace trace, VehicleConfig config);

    std::uint64_t vehicle_id() const noexcept { return trace_.vehicle_id; }
    const synth::Trace& trace() const noexcept { return trace_; }
    std::size_t cursor() const noexcept { return cursor_; }
    bool exhausted() const noexcept { return cursor_ >= trace_.steps.size(); }

    /// Captures the next trace step. Throws EdgeError{TraceExhausted}.
    CaptureResult capture_tick();

    const extract::ExtractCounters& local_counters() const noexcept { return counters_; }

private:
    synth::Trace trace_;
    VehicleConfig config_;
    std::size_t cursor_ = 0;
    extract::ExtractCounters counters_;
};

} // namespace vcsim::edge
