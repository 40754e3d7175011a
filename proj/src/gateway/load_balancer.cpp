#include "vcsim/gateway/load_balancer.hpp"

#include <numeric>

namespace vcsim::gateway {

LoadBalancer::LoadBalancer(std::size_t workers) : counters_(workers, 0) {}

std::size_t LoadBalancer::route() {
    std::lock_guard lock(mu_);
    if (counters_.empty()) {
        throw GatewayError(GatewayErrc::NoWorkers, "load balancer has no workers");
    }
    const std::size_t w = cursor_;
    cursor_ = (cursor_ + 1) % counters_.size();
    ++counters_[w];
    return w;
}

std::vector<std::uint64_t> LoadBalancer::counters() const {
    std::lock_guard lock(mu_);
    return counters_;
}

std::uint64_t LoadBalancer::total() const {
    std::lock_guard lock(mu_);
    return std::accumulate(counters_.begin(), counters_.end(), std::uint64_t{0});
}

} // namespace vcsim::gateway
