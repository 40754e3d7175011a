#include "vcsim/synth/font.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace vcsim::synth {

namespace {

struct GlyphRows {
    char ch;
    std::array<const char*, kGlyphHeight> rows;
};

// Hand-tuned so that every pair of glyphs differs in at least
// kMinGlyphDistance pixels; font_self_check() enforces it.
constexpr std::array<GlyphRows, kGlyphCount> kGlyphRows{{
    {'A', {".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
    {'B', {"####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."}},
    {'C', {".####", "#....", "#....", "#....", "#....", "#....", ".####"}},
    {'D', {"###..", "#..#.", "#...#", "#...#", "#...#", "#..#.", "###.."}},
    {'E', {"#####", "#....", "#....", "####.", "#....", "#....", "#####"}},
    {'F', {"#####", "#....", "#....", "###..", "#....", "#....", "#...."}},
    {'G', {".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".####"}},
    {'H', {"#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
    {'I', {".###.", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."}},
    {'J', {"..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."}},
    {'K', {"#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"}},
    {'L', {"#....", "#....", "#....", "#....", "#....", "#....", "#####"}},
    {'M', {"#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"}},
    {'N', {"#...#", "#...#", "##..#", "#.#.#", "#..##", "#...#", "#...#"}},
    {'O', {".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
    {'P', {"####.", "#...#", "#...#", "####.", "#....", "#....", "#...."}},
    {'Q', {".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"}},
    {'R', {"####.", "#...#", "#...#", "####.", "##...", "#.#..", "#..##"}},
    {'S', {".####", "#....", "#....", ".###.", "....#", "....#", "####."}},
    {'T', {"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."}},
    {'U', {"#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
    {'V', {"#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."}},
    {'W', {"#...#", "#...#", "#...#", "#.#.#", "#.#.#", "#.#.#", ".#.#."}},
    {'X', {"#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"}},
    {'Y', {"#...#", "#...#", ".#.#.", "..#..", "..#..", "..#..", "..#.."}},
    {'Z', {"#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"}},
    {'0', {".###.", "#..##", "#.#.#", "#.#.#", "#.#.#", "##..#", ".###."}},
    {'1', {"..#..", ".##..", "#.#..", "..#..", "..#..", "..#..", "#####"}},
    {'2', {".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"}},
    {'3', {"#####", "...#.", "..#..", "...#.", "....#", "#...#", ".###."}},
    {'4', {"...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."}},
    {'5', {"#####", "#....", "####.", "....#", "....#", "#...#", ".###."}},
    {'6', {"..##.", ".#...", "#....", "####.", "#...#", "#...#", ".###."}},
    {'7', {"#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."}},
    {'8', {".###.", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", ".###."}},
    {'9', {".###.", "#...#", "#...#", ".####", "....#", "...#.", ".##.."}},
}};

std::uint64_t pack(const GlyphRows& g) {
    std::uint64_t bits = 0;
    for (int y = 0; y < kGlyphHeight; ++y) {
        for (int x = 0; x < kGlyphWidth; ++x) {
            bits = (bits << 1) | (g.rows[static_cast<std::size_t>(y)][x] == '#' ? 1u : 0u);
        }
    }
    return bits;
}

struct Font {
    std::array<std::uint64_t, kGlyphCount> bits{};
    std::array<char, kGlyphCount> chars{};
    std::array<int, 128> index{};

    Font() {
        index.fill(-1);
        for (std::size_t i = 0; i < kGlyphCount; ++i) {
            bits[i] = pack(kGlyphRows[i]);
            chars[i] = kGlyphRows[i].ch;
            index[static_cast<unsigned char>(kGlyphRows[i].ch)] = static_cast<int>(i);
        }
    }
};

const Font& font() {
    static const Font f;
    return f;
}

} // namespace

std::uint64_t glyph_bits(char c) {
    const int i = (static_cast<unsigned char>(c) < 128) ? font().index[static_cast<unsigned char>(c)] : -1;
    if (i < 0) {
        throw std::out_of_range(std::string("no glyph for character '") + c + "'");
    }
    return font().bits[static_cast<std::size_t>(i)];
}

bool glyph_pixel(std::uint64_t bits, int x, int y) noexcept {
    const int shift = kGlyphPixels - 1 - (y * kGlyphWidth + x);
    return ((bits >> shift) & 1u) != 0;
}

std::span<const char, kGlyphCount> glyph_alphabet() noexcept { return font().chars; }

std::span<const std::uint64_t, kGlyphCount> glyph_table() noexcept { return font().bits; }

int font_min_distance() noexcept {
    int best = kGlyphPixels;
    const auto& bits = font().bits;
    for (std::size_t i = 0; i < kGlyphCount; ++i) {
        for (std::size_t j = i + 1; j < kGlyphCount; ++j) {
            best = std::min(best, std::popcount(bits[i] ^ bits[j]));
        }
    }
    return best;
}

void font_self_check() {
    if (int d = font_min_distance(); d < kMinGlyphDistance) {
        throw std::logic_error("glyph font minimum Hamming distance " + std::to_string(d) + " below " +
                               std::to_string(kMinGlyphDistance));
    }
}

GlyphMatch nearest_glyph(std::uint64_t sample) noexcept {
    GlyphMatch m;
    const auto& f = font();
    for (std::size_t i = 0; i < kGlyphCount; ++i) {
        const int d = std::popcount(sample ^ f.bits[i]);
        if (d < m.distance) {
            m.runner_up = m.distance;
            m.distance = d;
            m.ch = f.chars[i];
        } else if (d < m.runner_up) {
            m.runner_up = d;
        }
    }
    return m;
}

} // namespace vcsim::synth
