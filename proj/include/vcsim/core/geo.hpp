#pragma once

#include "vcsim/core/types.hpp"

namespace vcsim {

inline constexpr double kEarthRadiusM = 6'371'000.0;

/// Great-circle distance on a sphere of radius kEarthRadiusM.
double haversine_m(const GpsFix& a, const GpsFix& b) noexcept;

} // namespace vcsim
