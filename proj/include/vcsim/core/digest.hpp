#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace vcsim {

/// 64-bit FNV-1a over a byte range.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Incremental FNV-1a, for digesting a stream of records.
class Fnv1a64 {
public:
    void update(std::span<const std::uint8_t> bytes) noexcept;
    void update(std::string_view text) noexcept;
    void update_u64(std::uint64_t v) noexcept;
    std::uint64_t value() const noexcept { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

/// Fixed-width lowercase hex, 16 digits.
std::string to_hex64(std::uint64_t v);
std::optional<std::uint64_t> parse_hex64(std::string_view text);

} // namespace vcsim
