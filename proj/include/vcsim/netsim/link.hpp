#pragma once

#include <cstddef>
#include <string>

namespace vcsim::netsim {

// Measured one-image transfer and processing times for a 16.5 KB image
// on the reference rig, in seconds.
inline constexpr std::size_t kTable1PayloadBytes = 16'500;
inline constexpr double kTable1VehicleToRsuS = 1.33;
inline constexpr double kTable1RsuToCloudS = 1.12;
inline constexpr double kTable1FaceS = 1.08;
inline constexpr double kTable1PlateS = 3.29;
/// Not measured; assumed.
inline constexpr double kDefaultGpsStageS = 0.01;
inline constexpr double kDefaultBaseLatencyS = 0.05;

struct LinkParams {
    std::string link_id;
    std::string src;
    std::string dst;
    double base_latency_s = kDefaultBaseLatencyS;
    double bandwidth_Bps = 1e6;
    double loss_prob = 0.0;

    bool valid() const noexcept;
    friend bool operator==(const LinkParams&, const LinkParams&) = default;
};

/// Affine link model: base latency plus serialization at the link bandwidth.
double transfer_time(std::size_t payload_bytes, const LinkParams& link) noexcept;

struct Table1Calibration {
    LinkParams vehicle_rsu;
    LinkParams rsu_cloud;
};

/// Fixes base latency and solves each link's bandwidth so a 16 500-byte
/// payload reproduces the measured transfer time.
Table1Calibration calibrate_table1(double base_latency_s = kDefaultBaseLatencyS);

} // namespace vcsim::netsim
