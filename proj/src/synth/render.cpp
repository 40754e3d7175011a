#include "vcsim/synth/render.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "vcsim/synth/font.hpp"
#include "vcsim/synth/rng.hpp"

namespace vcsim::synth {

void Bitmap::fill_rect(int x, int y, int w, int h, std::uint8_t v) {
    for (int yy = y; yy < y + h; ++yy) {
        std::fill_n(pixels.begin() + static_cast<std::ptrdiff_t>(yy) * width + x, w, v);
    }
}

namespace {

void check_scale(int scale) {
    if (scale < 1) {
        throw SynthError(SynthErrc::BadScale, "scale must be >= 1, got " + std::to_string(scale));
    }
}

// Draws a solid border of thickness t around the bitmap.
void draw_border(Bitmap& bm, int t) {
    bm.fill_rect(0, 0, bm.width, t, kWhite);
    bm.fill_rect(0, bm.height - t, bm.width, t, kWhite);
    bm.fill_rect(0, 0, t, bm.height, kWhite);
    bm.fill_rect(bm.width - t, 0, t, bm.height, kWhite);
}

} // namespace

Bitmap render_plate_region(std::string_view code, int scale) {
    auto plate = PlateCode::parse(code);
    if (!plate) {
        throw SynthError(SynthErrc::BadCode, "plate code must match [A-Z0-9]{7}: '" + std::string(code) + "'");
    }
    check_scale(scale);
    using namespace plate_layout;
    Bitmap bm(kWidth * scale, kHeight * scale, kBlack);
    draw_border(bm, kBorder * scale);
    for (std::size_t i = 0; i < PlateCode::kLength; ++i) {
        const std::uint64_t bits = glyph_bits(plate->str()[i]);
        const int gx = (kInset + static_cast<int>(i) * kGlyphPitch) * scale;
        const int gy = kInset * scale;
        for (int y = 0; y < kGlyphHeight; ++y) {
            for (int x = 0; x < kGlyphWidth; ++x) {
                if (glyph_pixel(bits, x, y)) {
                    bm.fill_rect(gx + x * scale, gy + y * scale, scale, scale, kWhite);
                }
            }
        }
    }
    return bm;
}

bool face_row_parity(std::uint16_t code, int row) noexcept {
    const unsigned bits = (code >> (9 - 3 * row)) & 0x7u;
    return (std::popcount(bits) & 1) != 0;
}

Bitmap render_face_marker(long long face_code, int scale) {
    auto code = FaceCode::make(face_code);
    if (!code) {
        throw SynthError(SynthErrc::BadCode, "face code must be in [0, 4096): " + std::to_string(face_code));
    }
    check_scale(scale);
    using namespace face_layout;
    Bitmap bm(kSide * scale, kSide * scale, kBlack);
    draw_border(bm, kBorder * scale);
    const std::uint16_t v = code->value();
    for (int r = 0; r < kGrid; ++r) {
        for (int c = 0; c < kGrid; ++c) {
            const bool white = c < 3 ? ((v >> (11 - (3 * r + c))) & 1u) != 0 : face_row_parity(v, r);
            if (white) {
                bm.fill_rect((kBorder + c * kCell) * scale, (kBorder + r * kCell) * scale, kCell * scale,
                             kCell * scale, kWhite);
            }
        }
    }
    return bm;
}

int SceneItem::width() const noexcept {
    return (kind() == DetectionKind::Plate ? plate_layout::kWidth : face_layout::kSide) * scale;
}

int SceneItem::height() const noexcept {
    return (kind() == DetectionKind::Plate ? plate_layout::kHeight : face_layout::kSide) * scale;
}

void validate_scene(const SceneSpec& spec, int width, int height) {
    for (std::size_t i = 0; i < spec.items.size(); ++i) {
        const auto& a = spec.items[i];
        check_scale(a.scale);
        if (a.x < 0 || a.y < 0 || a.x + a.width() > width || a.y + a.height() > height) {
            throw SynthError(SynthErrc::ItemOutOfBounds, "scene item " + std::to_string(i) + " outside " +
                                                             std::to_string(width) + "x" + std::to_string(height));
        }
        for (std::size_t j = 0; j < i; ++j) {
            const auto& b = spec.items[j];
            const bool disjoint = a.x + a.width() <= b.x || b.x + b.width() <= a.x || a.y + a.height() <= b.y ||
                                  b.y + b.height() <= a.y;
            if (!disjoint) {
                throw SynthError(SynthErrc::ItemsOverlap,
                                 "scene items " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
            }
        }
    }
}

void apply_salt_pepper(std::vector<std::uint8_t>& pixels, double noise_level, std::uint64_t rng_seed) {
    if (pixels.empty() || noise_level <= 0.0) {
        return;
    }
    const auto hits = static_cast<std::uint64_t>(std::floor(std::min(noise_level, 1.0) * static_cast<double>(pixels.size())));
    Rng rng(rng_seed);
    for (std::uint64_t k = 0; k < hits; ++k) {
        const auto idx = rng.below(pixels.size());
        pixels[idx] = (rng.next() & 1u) != 0 ? kWhite : kBlack;
    }
}

GeoFrame compose_frame(const SceneSpec& spec, const GpsFix& fix, std::uint64_t vehicle_id, int width, int height,
                       double noise_level, std::uint64_t rng_seed) {
    if (width < 1 || width > kMaxFrameSide || height < 1 || height > kMaxFrameSide) {
        throw SynthError(SynthErrc::ItemOutOfBounds, "frame dimensions out of range");
    }
    validate_scene(spec, width, height);
    Bitmap canvas(width, height, spec.background);
    for (const auto& item : spec.items) {
        const Bitmap patch = item.kind() == DetectionKind::Plate
                                 ? render_plate_region(std::get<PlateCode>(item.value).str(), item.scale)
                                 : render_face_marker(std::get<FaceCode>(item.value).value(), item.scale);
        for (int y = 0; y < patch.height; ++y) {
            std::copy_n(patch.pixels.begin() + static_cast<std::ptrdiff_t>(y) * patch.width, patch.width,
                        canvas.pixels.begin() + static_cast<std::ptrdiff_t>(item.y + y) * width + item.x);
        }
    }
    apply_salt_pepper(canvas.pixels, noise_level, rng_seed);

    GeoFrame frame;
    frame.vehicle_id = vehicle_id;
    frame.has_gps = true;
    frame.fix = fix;
    frame.width = static_cast<std::uint16_t>(width);
    frame.height = static_cast<std::uint16_t>(height);
    frame.pixels = std::move(canvas.pixels);
    return frame;
}

} // namespace vcsim::synth
