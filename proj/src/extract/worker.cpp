#include "vcsim/extract/worker.hpp"

#include <algorithm>
#include <future>

namespace vcsim::extract {

std::string_view to_string(Stage s) noexcept {
    switch (s) {
    case Stage::Face: return "face";
    case Stage::Plate: return "plate";
    case Stage::Gps: return "gps";
    }
    return "gps";
}

WorkerNode::WorkerNode(std::string worker_id, std::optional<ModeledTimes> modeled, ExtractConfig config,
                       bool run_stages_concurrently)
    : id_(std::move(worker_id)), modeled_(modeled), config_(config), concurrent_(run_stages_concurrently) {}

namespace {

template <typename Fn>
StageResult timed(Stage stage, Fn&& fn) {
    StageResult r;
    r.stage = stage;
    const auto start = std::chrono::steady_clock::now();
    fn(r);
    r.compute_time = std::chrono::steady_clock::now() - start;
    return r;
}

} // namespace

FramePlan WorkerNode::process(const GeoFrame& frame, bool measured) {
    ExtractCounters face_counters;
    ExtractCounters plate_counters;
    auto run_face = [&] {
        return timed(Stage::Face, [&](StageResult& r) { r.extractions = extract_faces(frame, config_, face_counters); });
    };
    auto run_plate = [&] {
        return timed(Stage::Plate, [&](StageResult& r) { r.extractions = extract_plates(frame, config_, plate_counters); });
    };
    auto run_gps = [&] {
        return timed(Stage::Gps, [&](StageResult& r) {
            try {
                r.extractions.push_back(extract_gps(frame));
            } catch (const ExtractError&) {
                r.failed = true;
            }
        });
    };

    FramePlan plan;
    plan.frame_id = frame.frame_id();
    if (concurrent_) {
        auto face = std::async(std::launch::async, run_face);
        auto plate = std::async(std::launch::async, run_plate);
        plan.stages[2] = run_gps();
        plan.stages[0] = face.get();
        plan.stages[1] = plate.get();
    } else {
        plan.stages[0] = run_face();
        plan.stages[1] = run_plate();
        plan.stages[2] = run_gps();
    }
    counters_ += face_counters;
    counters_ += plate_counters;

    for (auto& st : plan.stages) {
        if (modeled_) {
            st.offset_s = st.stage == Stage::Face    ? modeled_->face_s
                          : st.stage == Stage::Plate ? modeled_->plate_s
                                                     : modeled_->gps_s;
        } else if (measured) {
            st.offset_s = std::chrono::duration<double>(st.compute_time).count();
        } else {
            st.offset_s = 0.0;
        }
        plan.completion_s = std::max(plan.completion_s, st.offset_s);
    }
    ++frames_;
    return plan;
}

} // namespace vcsim::extract
