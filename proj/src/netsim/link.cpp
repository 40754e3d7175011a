#include "vcsim/netsim/link.hpp"

#include <cmath>
#include <stdexcept>

namespace vcsim::netsim {

bool LinkParams::valid() const noexcept {
    return !link_id.empty() && std::isfinite(base_latency_s) && base_latency_s >= 0.0 &&
           std::isfinite(bandwidth_Bps) && bandwidth_Bps > 0.0 && loss_prob >= 0.0 && loss_prob <= 1.0;
}

double transfer_time(std::size_t payload_bytes, const LinkParams& link) noexcept {
    return link.base_latency_s + static_cast<double>(payload_bytes) / link.bandwidth_Bps;
}

Table1Calibration calibrate_table1(double base_latency_s) {
    if (!(base_latency_s >= 0.0) || base_latency_s >= kTable1RsuToCloudS) {
        throw std::invalid_argument("base latency must be in [0, 1.12) s");
    }
    const auto payload = static_cast<double>(kTable1PayloadBytes);
    Table1Calibration cal;
    cal.vehicle_rsu.base_latency_s = base_latency_s;
    cal.vehicle_rsu.bandwidth_Bps = payload / (kTable1VehicleToRsuS - base_latency_s);
    cal.rsu_cloud.base_latency_s = base_latency_s;
    cal.rsu_cloud.bandwidth_Bps = payload / (kTable1RsuToCloudS - base_latency_s);
    return cal;
}

} // namespace vcsim::netsim
