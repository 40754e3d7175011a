#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "vcsim/core/error.hpp"
#include "vcsim/core/types.hpp"

namespace vcsim::synth {

enum class SynthErrc { BadCode, BadScale, ItemOutOfBounds, ItemsOverlap, BadTrace };
using SynthError = Error<SynthErrc>;

inline constexpr std::uint8_t kWhite = 255;
inline constexpr std::uint8_t kBlack = 0;

// Plate geometry in unscaled pixels: a 2-px white border, a 1-px black gap,
// then seven 5x7 glyphs separated by one black column.
namespace plate_layout {
inline constexpr int kBorder = 2;
inline constexpr int kGap = 1;
inline constexpr int kInset = kBorder + kGap;
inline constexpr int kGlyphPitch = 6;
inline constexpr int kWidth = 7 * kGlyphPitch - 1 + 2 * kInset; // 47
inline constexpr int kHeight = 7 + 2 * kInset;                  // 13
} // namespace plate_layout

// Face marker geometry in unscaled pixels: 4x4 cells of 4 px inside a 2-px
// white border. Each cell row holds three data bits then an even-parity bit.
namespace face_layout {
inline constexpr int kBorder = 2;
inline constexpr int kCell = 4;
inline constexpr int kGrid = 4;
inline constexpr int kSide = kGrid * kCell + 2 * kBorder; // 20
} // namespace face_layout

struct Bitmap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Bitmap() = default;
    Bitmap(int w, int h, std::uint8_t fill)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    void fill_rect(int x, int y, int w, int h, std::uint8_t v);
};

/// White-on-black plate patch of 47*scale x 13*scale pixels.
Bitmap render_plate_region(std::string_view code, int scale);

/// 20*scale square marker; white cell = bit 1, data bits MSB first.
Bitmap render_face_marker(long long face_code, int scale);

/// Parity bit (column 3) for grid row `row` of `code`.
bool face_row_parity(std::uint16_t code, int row) noexcept;

struct SceneItem {
    TargetValue value;
    int x = 0;
    int y = 0;
    int scale = 1;

    DetectionKind kind() const noexcept { return kind_of(value); }
    int width() const noexcept;
    int height() const noexcept;
    friend bool operator==(const SceneItem&, const SceneItem&) = default;
};

struct SceneSpec {
    std::vector<SceneItem> items;
    std::uint8_t background = 64;

    friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

/// Throws ItemOutOfBounds / ItemsOverlap / BadScale.
void validate_scene(const SceneSpec& spec, int width, int height);

/// Background fill, item blits, then floor(noise_level*w*h) salt-and-pepper
/// hits at uniformly drawn positions. Deterministic in rng_seed.
GeoFrame compose_frame(const SceneSpec& spec, const GpsFix& fix, std::uint64_t vehicle_id, int width, int height,
                       double noise_level, std::uint64_t rng_seed);

/// Salt-and-pepper noise in place; same sampling as compose_frame.
void apply_salt_pepper(std::vector<std::uint8_t>& pixels, double noise_level, std::uint64_t rng_seed);

} // namespace vcsim::synth
