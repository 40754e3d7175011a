#pragma once

// Random detections and filters, plus a linear-scan reference query.

#include <algorithm>
#include <string>
#include <vector>

#include "vcsim/store/detection_store.hpp"
#include "vcsim/synth/rng.hpp"

namespace vcsim::testing {

// Values from a small pool so that value filters hit.
inline const std::vector<std::string> kPlates = {"AAAAAAA", "AB123CD", "ZZ99ZZ9", "K0K0K0K", "PLATE01"};

inline Detection random_detection(synth::Rng& rng) {
    Detection d;
    switch (rng.below(3)) {
    case 0: d.value = *PlateCode::parse(kPlates[rng.below(kPlates.size())]); break;
    case 1: d.value = *FaceCode::make(static_cast<long long>(rng.below(8))); break;
    default: d.value = std::monostate{}; break;
    }
    // Clustered around one town, with a few far away.
    if (rng.chance(0.9)) {
        d.fix.lat_e7 = 454'000'000 + static_cast<std::int32_t>(rng.between(-50'000, 50'000));
        d.fix.lon_e7 = 43'800'000 + static_cast<std::int32_t>(rng.between(-50'000, 50'000));
    } else {
        d.fix.lat_e7 = static_cast<std::int32_t>(rng.between(-kMaxLatE7, kMaxLatE7));
        d.fix.lon_e7 = static_cast<std::int32_t>(rng.between(-kMaxLonE7, kMaxLonE7));
    }
    d.fix.timestamp_ms = 1'000'000 + rng.between(0, 100'000);
    d.detected_at_ms = d.fix.timestamp_ms + rng.between(0, 6000);
    d.source_frame = FrameId{rng.next()};
    d.worker_id = "worker-" + std::to_string(rng.between(1, 2));
    return d;
}

inline store::DetectionFilter random_filter(synth::Rng& rng) {
    store::DetectionFilter f;
    if (rng.chance(0.5)) f.kind = static_cast<DetectionKind>(rng.below(3));
    if (rng.chance(0.4) && f.kind != DetectionKind::Gps) {
        const bool plate = f.kind ? *f.kind == DetectionKind::Plate : rng.chance(0.5);
        f.value = plate ? kPlates[rng.below(kPlates.size())] : std::to_string(rng.below(8));
    }
    if (rng.chance(0.4)) f.t_from = 1'000'000 + rng.between(0, 100'000);
    if (rng.chance(0.4)) f.t_to = (f.t_from ? *f.t_from : 1'000'000) + rng.between(0, 60'000);
    if (rng.chance(0.5)) {
        store::GeoBox b;
        if (rng.chance(0.8)) {
            const auto lat = 454'000'000 + static_cast<std::int32_t>(rng.between(-60'000, 60'000));
            const auto lon = 43'800'000 + static_cast<std::int32_t>(rng.between(-60'000, 60'000));
            b = store::GeoBox{lat, lon, lat + static_cast<std::int32_t>(rng.between(0, 80'000)),
                       lon + static_cast<std::int32_t>(rng.between(0, 80'000))};
        } else {
            b = store::GeoBox{-kMaxLatE7 / 2, -kMaxLonE7 / 2, kMaxLatE7 / 2, kMaxLonE7 / 2};
        }
        f.bbox = b;
    }
    return f;
}

// Linear scan with every predicate spelled out independently of the store.
inline std::vector<Detection> oracle_query(const std::vector<Detection>& all, const store::DetectionFilter& f) {
    std::vector<Detection> out;
    for (const auto& d : all) {
        if (f.kind && d.kind() != *f.kind) continue;
        if (f.value) {
            if (d.kind() == DetectionKind::Gps) continue;
            if (value_string(d.value) != *f.value) continue;
        }
        if (f.t_from && d.detected_at_ms < *f.t_from) continue;
        if (f.t_to && d.detected_at_ms > *f.t_to) continue;
        if (f.bbox && (d.fix.lat_e7 < f.bbox->min_lat_e7 || d.fix.lat_e7 > f.bbox->max_lat_e7 ||
                       d.fix.lon_e7 < f.bbox->min_lon_e7 || d.fix.lon_e7 > f.bbox->max_lon_e7))
            continue;
        out.push_back(d);
    }
    std::stable_sort(out.begin(), out.end(), [](const Detection& a, const Detection& b) {
        return std::pair(a.detected_at_ms, a.detection_id) < std::pair(b.detected_at_ms, b.detection_id);
    });
    return out;
}

} // namespace vcsim::testing
