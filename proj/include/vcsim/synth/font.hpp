#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Embedded 5x7 bitmap font covering [A-Z0-9]. Glyphs are packed row-major,
// MSB first, into the low 35 bits of a uint64.
namespace vcsim::synth {

inline constexpr int kGlyphWidth = 5;
inline constexpr int kGlyphHeight = 7;
inline constexpr int kGlyphPixels = kGlyphWidth * kGlyphHeight;
inline constexpr std::size_t kGlyphCount = 36;
inline constexpr int kMinGlyphDistance = 4;

std::uint64_t glyph_bits(char c);
bool glyph_pixel(std::uint64_t bits, int x, int y) noexcept;
std::span<const char, kGlyphCount> glyph_alphabet() noexcept;
std::span<const std::uint64_t, kGlyphCount> glyph_table() noexcept;

/// Smallest pairwise Hamming distance across the font.
int font_min_distance() noexcept;
/// Throws std::logic_error if the font is not separable enough.
void font_self_check();

struct GlyphMatch {
    char ch = '?';
    int distance = kGlyphPixels + 1;
    int runner_up = kGlyphPixels + 1;

    bool ambiguous() const noexcept { return distance == runner_up; }
};

/// Nearest template by Hamming distance.
GlyphMatch nearest_glyph(std::uint64_t sample) noexcept;

} // namespace vcsim::synth
