#include "vcsim/edge/offload.hpp"

namespace vcsim::edge {

std::string_view to_string(OffloadPolicyKind k) noexcept {
    switch (k) {
    case OffloadPolicyKind::AlwaysCentral: return "always_central";
    case OffloadPolicyKind::AlwaysLocal: return "always_local";
    case OffloadPolicyKind::Adaptive: return "adaptive";
    }
    return "always_central";
}

OffloadDecision decide_offload(const OffloadPolicy& policy, double estimated_upload_s, bool local_enabled) noexcept {
    if (!local_enabled) {
        return OffloadDecision::Central;
    }
    switch (policy.kind) {
    case OffloadPolicyKind::AlwaysCentral: return OffloadDecision::Central;
    case OffloadPolicyKind::AlwaysLocal: return OffloadDecision::Local;
    case OffloadPolicyKind::Adaptive:
        return estimated_upload_s > policy.threshold_s ? OffloadDecision::Local : OffloadDecision::Central;
    }
    return OffloadDecision::Central;
}

} // namespace vcsim::edge
