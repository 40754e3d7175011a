#pragma once

#include <cstdint>
#include <vector>

#include "vcsim/core/error.hpp"
#include "vcsim/core/types.hpp"
#include "vcsim/extract/components.hpp"

namespace vcsim::extract {

enum class ExtractErrc { MissingFix, ProcessingFailed };
using ExtractError = Error<ExtractErrc>;

struct ExtractConfig {
    std::uint8_t threshold = 128;
    double plate_min_aspect = 3.0;
    double plate_max_aspect = 4.5;
    double face_min_aspect = 0.9;
    double face_max_aspect = 1.1;
    /// Minimum white fraction of a marker's outer border.
    double border_min_fill = 0.9;
    /// A glyph sample farther than this from every template is not a glyph.
    int max_glyph_distance = 6;
};

struct ExtractCounters {
    std::uint64_t candidates = 0;
    std::uint64_t ambiguous_glyphs = 0;
    std::uint64_t parity_failures = 0;
    std::uint64_t rejected = 0;

    ExtractCounters& operator+=(const ExtractCounters& o) noexcept;
};

struct Extraction {
    Detection detection;              // detection_id, worker_id, detected_at_ms unset
    BoundingBox bbox;
    std::vector<std::uint8_t> crop;   // binary PGM of the bbox; empty for gps
    int template_margin = 0;          // plates: min (runner-up - best) glyph distance
};

/// Copies the geotag into a gps detection. Throws ExtractError{MissingFix}.
Extraction extract_gps(const GeoFrame& frame);

std::vector<Extraction> extract_plates(const GeoFrame& frame, const ExtractConfig& config, ExtractCounters& counters);
std::vector<Extraction> extract_faces(const GeoFrame& frame, const ExtractConfig& config, ExtractCounters& counters);

/// Binary PGM (P5) of a frame region.
std::vector<std::uint8_t> crop_pgm(const GeoFrame& frame, const BoundingBox& box);

} // namespace vcsim::extract
