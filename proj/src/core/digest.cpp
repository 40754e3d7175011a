#include "vcsim/core/digest.hpp"

#include <charconv>

namespace vcsim {

namespace {
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
}

void Fnv1a64::update(std::span<const std::uint8_t> bytes) noexcept {
    for (auto b : bytes) {
        state_ ^= b;
        state_ *= kFnvPrime;
    }
}

void Fnv1a64::update(std::string_view text) noexcept {
    for (char c : text) {
        state_ ^= static_cast<std::uint8_t>(c);
        state_ *= kFnvPrime;
    }
}

void Fnv1a64::update_u64(std::uint64_t v) noexcept {
    for (int i = 0; i < 8; ++i) {
        state_ ^= static_cast<std::uint8_t>(v >> (8 * i));
        state_ *= kFnvPrime;
    }
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
    Fnv1a64 h;
    h.update(bytes);
    return h.value();
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
    Fnv1a64 h;
    h.update(text);
    return h.value();
}

std::string to_hex64(std::uint64_t v) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
        v >>= 4;
    }
    return out;
}

std::optional<std::uint64_t> parse_hex64(std::string_view text) {
    if (text.empty() || text.size() > 16) {
        return std::nullopt;
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, 16);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return v;
}

} // namespace vcsim
