#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "vcsim/core/error.hpp"

namespace vcsim::gateway {

enum class GatewayErrc { NoWorkers };
using GatewayError = Error<GatewayErrc>;

/// Round-robin request router over W web workers.
class LoadBalancer {
public:
    explicit LoadBalancer(std::size_t workers);

    /// Throws GatewayError{NoWorkers} when W == 0.
    std::size_t route();
    std::size_t size() const noexcept { return counters_.size(); }
    std::vector<std::uint64_t> counters() const;
    std::uint64_t total() const;

private:
    mutable std::mutex mu_;
    std::size_t cursor_ = 0;
    std::vector<std::uint64_t> counters_;
};

} // namespace vcsim::gateway
