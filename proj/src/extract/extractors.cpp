#include "vcsim/extract/extractors.hpp"

#include <algorithm>
#include <string>

#include "vcsim/synth/font.hpp"
#include "vcsim/synth/render.hpp"

namespace vcsim::extract {

namespace plate = synth::plate_layout;
namespace face = synth::face_layout;

ExtractCounters& ExtractCounters::operator+=(const ExtractCounters& o) noexcept {
    candidates += o.candidates;
    ambiguous_glyphs += o.ambiguous_glyphs;
    parity_failures += o.parity_failures;
    rejected += o.rejected;
    return *this;
}

std::vector<std::uint8_t> crop_pgm(const GeoFrame& frame, const BoundingBox& box) {
    const std::string header = "P5\n" + std::to_string(box.w) + " " + std::to_string(box.h) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + static_cast<std::size_t>(box.w) * box.h);
    for (int y = box.y; y < box.y + box.h; ++y) {
        const auto row = frame.pixels.begin() + static_cast<std::ptrdiff_t>(y) * frame.width + box.x;
        out.insert(out.end(), row, row + box.w);
    }
    return out;
}

Extraction extract_gps(const GeoFrame& frame) {
    if (!frame.has_gps) {
        throw ExtractError(ExtractErrc::MissingFix, "frame carries no GPS fix");
    }
    Extraction e;
    e.detection.value = std::monostate{};
    e.detection.fix = frame.fix;
    e.detection.source_frame = frame.frame_id();
    e.bbox = BoundingBox{0, 0, frame.width, frame.height};
    return e;
}

namespace {

// Side of the smallest marker either extractor accepts.
constexpr int kMinSide = std::min(plate::kHeight, face::kSide);

bool exact_scale(int extent, int unit, int& scale) {
    if (extent < unit || extent % unit != 0) {
        return false;
    }
    scale = extent / unit;
    return true;
}

} // namespace

std::vector<Extraction> extract_plates(const GeoFrame& frame, const ExtractConfig& cfg, ExtractCounters& counters) {
    std::vector<Extraction> out;
    const FrameId source = frame.frame_id();
    for (const auto& comp : find_components(frame, cfg.threshold, kMinSide)) {
        const BoundingBox& b = comp.box;
        const double aspect = b.aspect();
        if (aspect < cfg.plate_min_aspect || aspect > cfg.plate_max_aspect) {
            continue;
        }
        ++counters.candidates;
        int s = 0;
        if (!exact_scale(b.h, plate::kHeight, s) || b.w != plate::kWidth * s ||
            ring_fill(frame, b, 0, plate::kBorder * s, cfg.threshold) < cfg.border_min_fill ||
            ring_fill(frame, b, plate::kBorder * s, plate::kGap * s, cfg.threshold) > 1.0 - cfg.border_min_fill) {
            ++counters.rejected;
            continue;
        }

        std::string code(PlateCode::kLength, '?');
        int margin = synth::kGlyphPixels;
        bool ok = true;
        for (std::size_t i = 0; i < PlateCode::kLength && ok; ++i) {
            const int gx = b.x + (plate::kInset + static_cast<int>(i) * plate::kGlyphPitch) * s;
            const int gy = b.y + plate::kInset * s;
            std::uint64_t sample = 0;
            for (int y = 0; y < synth::kGlyphHeight; ++y) {
                for (int x = 0; x < synth::kGlyphWidth; ++x) {
                    sample = (sample << 1) | (block_majority(frame, gx + x * s, gy + y * s, s, s, cfg.threshold) ? 1u : 0u);
                }
            }
            const auto m = synth::nearest_glyph(sample);
            if (m.ambiguous()) {
                ++counters.ambiguous_glyphs;
                ok = false;
            } else if (m.distance > cfg.max_glyph_distance) {
                ++counters.rejected;
                ok = false;
            } else {
                code[i] = m.ch;
                margin = std::min(margin, m.runner_up - m.distance);
            }
        }
        if (!ok) {
            continue;
        }
        Extraction e;
        e.detection.value = *PlateCode::parse(code);
        e.detection.fix = frame.fix;
        e.detection.source_frame = source;
        e.bbox = b;
        e.crop = crop_pgm(frame, b);
        e.template_margin = margin;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Extraction> extract_faces(const GeoFrame& frame, const ExtractConfig& cfg, ExtractCounters& counters) {
    std::vector<Extraction> out;
    const FrameId source = frame.frame_id();
    for (const auto& comp : find_components(frame, cfg.threshold, kMinSide)) {
        const BoundingBox& b = comp.box;
        const double aspect = b.aspect();
        if (aspect < cfg.face_min_aspect || aspect > cfg.face_max_aspect) {
            continue;
        }
        ++counters.candidates;
        int s = 0;
        if (!exact_scale(b.h, face::kSide, s) || b.w != b.h ||
            ring_fill(frame, b, 0, face::kBorder * s, cfg.threshold) < cfg.border_min_fill) {
            ++counters.rejected;
            continue;
        }
        // Sample the central half of each cell.
        std::uint16_t data = 0;
        bool parity_ok = true;
        for (int r = 0; r < face::kGrid; ++r) {
            unsigned row_bits = 0;
            for (int c = 0; c < face::kGrid; ++c) {
                const int cx = b.x + (face::kBorder + c * face::kCell + face::kCell / 4) * s;
                const int cy = b.y + (face::kBorder + r * face::kCell + face::kCell / 4) * s;
                const bool bit = block_majority(frame, cx, cy, face::kCell / 2 * s, face::kCell / 2 * s, cfg.threshold);
                if (c < 3) {
                    data = static_cast<std::uint16_t>((data << 1) | (bit ? 1u : 0u));
                }
                row_bits += bit ? 1u : 0u;
            }
            if (row_bits % 2 != 0) {
                parity_ok = false;
            }
        }
        if (!parity_ok) {
            ++counters.parity_failures;
            continue;
        }
        Extraction e;
        e.detection.value = *FaceCode::make(data);
        e.detection.fix = frame.fix;
        e.detection.source_frame = source;
        e.bbox = b;
        e.crop = crop_pgm(frame, b);
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace vcsim::extract
