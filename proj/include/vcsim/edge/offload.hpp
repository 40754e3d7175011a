#pragma once

#include <string_view>

namespace vcsim::edge {

enum class OffloadPolicyKind { AlwaysCentral, AlwaysLocal, Adaptive };

struct OffloadPolicy {
    OffloadPolicyKind kind = OffloadPolicyKind::AlwaysCentral;
    double threshold_s = 0.0; // adaptive only

    friend bool operator==(const OffloadPolicy&, const OffloadPolicy&) = default;
};

enum class OffloadDecision { Local, Central };

std::string_view to_string(OffloadPolicyKind k) noexcept;

/// Local extraction needs local_enabled; adaptive goes local only when the
/// estimated upload exceeds the threshold.
OffloadDecision decide_offload(const OffloadPolicy& policy, double estimated_upload_s, bool local_enabled) noexcept;

} // namespace vcsim::edge
