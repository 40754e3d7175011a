#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "vcsim/extract/extractors.hpp"

namespace vcsim::extract {

/// Per-stage service times in seconds; when set they replace measured compute time.
struct ModeledTimes {
    double face_s = 1.08;
    double plate_s = 3.29;
    double gps_s = 0.01;

    friend bool operator==(const ModeledTimes&, const ModeledTimes&) = default;
};

enum class Stage : std::uint8_t { Face = 0, Plate = 1, Gps = 2 };
inline constexpr std::size_t kStageCount = 3;

std::string_view to_string(Stage s) noexcept;

struct StageResult {
    Stage stage = Stage::Gps;
    std::vector<Extraction> extractions;
    /// Seconds after the frame's arrival at which this stage finishes.
    double offset_s = 0.0;
    std::chrono::nanoseconds compute_time{0};
    bool failed = false; // gps stage on a frame without a fix
};

struct FramePlan {
    FrameId frame_id;
    std::array<StageResult, kStageCount> stages;
    /// Parallel stages: the frame completes when the slowest stage does.
    double completion_s = 0.0;
};

class WorkerNode {
public:
    WorkerNode(std::string worker_id, std::optional<ModeledTimes> modeled, ExtractConfig config = {},
               bool run_stages_concurrently = false);

    const std::string& id() const noexcept { return id_; }
    const std::optional<ModeledTimes>& modeled_times() const noexcept { return modeled_; }

    /// Runs face, plate and GPS extraction as independent stages and works
    /// out when each finishes relative to arrival. `measured` selects wall
    /// time when no model is configured.
    FramePlan process(const GeoFrame& frame, bool measured = false);

    const ExtractCounters& counters() const noexcept { return counters_; }
    std::uint64_t frames_processed() const noexcept { return frames_; }

private:
    std::string id_;
    std::optional<ModeledTimes> modeled_;
    ExtractConfig config_;
    bool concurrent_;
    ExtractCounters counters_;
    std::uint64_t frames_ = 0;
};

} // namespace vcsim::extract
