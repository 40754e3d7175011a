#include "vcsim/core/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vcsim {

double haversine_m(const GpsFix& a, const GpsFix& b) noexcept {
    if (a.lat_e7 == b.lat_e7 && a.lon_e7 == b.lon_e7) {
        return 0.0;
    }
    constexpr double kDegToRad = std::numbers::pi / 180.0;
    const double lat1 = a.lat_deg() * kDegToRad;
    const double lat2 = b.lat_deg() * kDegToRad;
    const double dlat = lat2 - lat1;
    const double dlon = (b.lon_deg() - a.lon_deg()) * kDegToRad;
    const double s = std::sin(dlat / 2);
    const double t = std::sin(dlon / 2);
    const double h = std::clamp(s * s + std::cos(lat1) * std::cos(lat2) * t * t, 0.0, 1.0);
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

} // namespace vcsim
