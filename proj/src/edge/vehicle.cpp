#include "vcsim/edge/vehicle.hpp"

#include "vcsim/core/digest.hpp"
#include "vcsim/core/frame_codec.hpp"
#include "vcsim/edge/rsu.hpp"
#include "vcsim/extract/record.hpp"
#include "vcsim/synth/rng.hpp"

namespace vcsim::edge {

std::uint64_t scene_digest(const synth::SceneSpec& scene) {
    Fnv1a64 h;
    h.update_u64(scene.background);
    for (const auto& item : scene.items) {
        h.update_u64(static_cast<std::uint64_t>(item.kind()));
        h.update(value_string(item.value));
        h.update_u64(static_cast<std::uint64_t>(item.x));
        h.update_u64(static_cast<std::uint64_t>(item.y));
        h.update_u64(static_cast<std::uint64_t>(item.scale));
    }
    return h.value();
}

VehicleNode::VehicleNode(synth::Trace trace, VehicleConfig config)
    : trace_(std::move(trace)), config_(std::move(config)) {}

CaptureResult VehicleNode::capture_tick() {
    if (exhausted()) {
        throw EdgeError(EdgeErrc::TraceExhausted,
                        "vehicle " + std::to_string(trace_.vehicle_id) + " has no trace steps left");
    }
    const auto& step = trace_.steps[cursor_++];
    const std::uint64_t seed =
        synth::mix_seed(synth::mix_seed(config_.noise_seed, trace_.vehicle_id), scene_digest(step.scene));

    CaptureResult out;
    out.t_ms = step.t_ms;
    out.frame = synth::compose_frame(step.scene, step.fix, trace_.vehicle_id, config_.frame_width,
                                     config_.frame_height, config_.noise_level, seed);
    auto bytes = encode_frame(out.frame);
    out.frame_id = FrameId{fnv1a64(bytes)};
    netsim::Message upload{netsim::MessageType::FrameUpload, std::move(bytes)};
    out.estimated_upload_s = netsim::transfer_time(upload.wire_size(), config_.uplink);
    out.decision = decide_offload(config_.offload, out.estimated_upload_s, config_.local_extract_enabled);

    if (out.decision == OffloadDecision::Central) {
        out.messages.push_back(std::move(upload));
        return out;
    }

    // On-board extraction: ship only the records. The fix travels inside
    // every record, so a separate gps record is sent only when nothing else
    // was found.
    const std::string worker_id = "vehicle-" + std::to_string(trace_.vehicle_id);
    std::vector<extract::Extraction> found = extract::extract_plates(out.frame, config_.extract, counters_);
    auto faces = extract::extract_faces(out.frame, config_.extract, counters_);
    found.insert(found.end(), std::make_move_iterator(faces.begin()), std::make_move_iterator(faces.end()));
    if (found.empty()) {
        found.push_back(extract::extract_gps(out.frame));
    }
    for (auto& e : found) {
        e.detection.worker_id = worker_id;
        e.detection.detected_at_ms = step.t_ms;
        out.messages.push_back(extract::encode_detection_record({std::move(e.detection), std::move(e.crop)}));
    }
    return out;
}

} // namespace vcsim::edge
