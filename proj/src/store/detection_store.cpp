#include "vcsim/store/detection_store.hpp"

#include <algorithm>
#include <mutex>

namespace vcsim::store {

namespace {

std::int32_t floor_div(std::int32_t a, std::int32_t b) {
    std::int32_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

std::uint64_t cell_key(std::int32_t lat_cell, std::int32_t lon_cell) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(lat_cell)) << 32) |
           static_cast<std::uint32_t>(lon_cell);
}

// Above this many grid cells a bbox query falls back to another index.
constexpr std::int64_t kMaxCellsScanned = 4096;

} // namespace

void DetectionFilter::validate() const {
    if (t_from && t_to && *t_from > *t_to) {
        throw StoreError(StoreErrc::BadFilter, "t_from is after t_to");
    }
    if (bbox && (bbox->min_lat_e7 > bbox->max_lat_e7 || bbox->min_lon_e7 > bbox->max_lon_e7)) {
        throw StoreError(StoreErrc::BadFilter, "bbox minimum exceeds maximum");
    }
    if (value) {
        if (kind == DetectionKind::Gps) {
            throw StoreError(StoreErrc::BadFilter, "gps detections carry no value");
        }
        const bool plate_ok = (!kind || *kind == DetectionKind::Plate) &&
                              parse_target_value(DetectionKind::Plate, *value).has_value();
        const bool face_ok = (!kind || *kind == DetectionKind::Face) &&
                             parse_target_value(DetectionKind::Face, *value).has_value();
        if (!plate_ok && !face_ok) {
            throw StoreError(StoreErrc::BadFilter, "value '" + *value + "' is not a plate or face code");
        }
    }
}

bool DetectionFilter::matches(const Detection& d) const {
    if (kind && d.kind() != *kind) return false;
    if (value && (d.kind() == DetectionKind::Gps || value_string(d.value) != *value)) return false;
    if (t_from && d.detected_at_ms < *t_from) return false;
    if (t_to && d.detected_at_ms > *t_to) return false;
    if (bbox && !bbox->contains(d.fix)) return false;
    return true;
}

std::string DetectionStore::value_key(const Detection& d) {
    return std::string(to_string(d.kind())) + ":" + value_string(d.value);
}

void DetectionStore::index(std::size_t pos) {
    const Detection& d = log_[pos];
    if (d.kind() != DetectionKind::Gps) {
        by_value_[value_key(d)].push_back(pos);
    }
    by_kind_[d.kind()].push_back(pos);
    by_time_.emplace(d.detected_at_ms, pos);
    by_cell_[cell_key(floor_div(d.fix.lat_e7, kGeoCellE7), floor_div(d.fix.lon_e7, kGeoCellE7))].push_back(pos);
}

std::uint64_t DetectionStore::put(Detection d) {
    std::unique_lock lock(mu_);
    d.detection_id = next_id_++;
    log_.push_back(std::move(d));
    index(log_.size() - 1);
    return log_.back().detection_id;
}

void DetectionStore::restore(const Detection& d) {
    std::unique_lock lock(mu_);
    if (d.detection_id < next_id_) {
        throw StoreError(StoreErrc::BadSnapshot, "detection ids must be strictly increasing");
    }
    next_id_ = d.detection_id + 1;
    log_.push_back(d);
    index(log_.size() - 1);
}

std::vector<Detection> DetectionStore::query(const DetectionFilter& filter) const {
    filter.validate();
    std::shared_lock lock(mu_);

    // Narrow to one candidate list using the most selective index at hand.
    std::vector<std::size_t> candidates;
    bool scan_all = false;
    if (filter.value) {
        for (const char* k : {"plate", "face"}) {
            const auto kind = parse_detection_kind(k);
            if (filter.kind && filter.kind != kind) continue;
            if (auto it = by_value_.find(std::string(k) + ":" + *filter.value); it != by_value_.end()) {
                candidates.insert(candidates.end(), it->second.begin(), it->second.end());
            }
        }
    } else if (filter.bbox &&
               (static_cast<std::int64_t>(floor_div(filter.bbox->max_lat_e7, kGeoCellE7)) -
                floor_div(filter.bbox->min_lat_e7, kGeoCellE7) + 1) *
                       (static_cast<std::int64_t>(floor_div(filter.bbox->max_lon_e7, kGeoCellE7)) -
                        floor_div(filter.bbox->min_lon_e7, kGeoCellE7) + 1) <=
                   kMaxCellsScanned) {
        const auto& b = *filter.bbox;
        for (auto la = floor_div(b.min_lat_e7, kGeoCellE7); la <= floor_div(b.max_lat_e7, kGeoCellE7); ++la) {
            for (auto lo = floor_div(b.min_lon_e7, kGeoCellE7); lo <= floor_div(b.max_lon_e7, kGeoCellE7); ++lo) {
                if (auto it = by_cell_.find(cell_key(la, lo)); it != by_cell_.end()) {
                    candidates.insert(candidates.end(), it->second.begin(), it->second.end());
                }
            }
        }
    } else if (filter.t_from || filter.t_to) {
        auto lo = filter.t_from ? by_time_.lower_bound(*filter.t_from) : by_time_.begin();
        auto hi = filter.t_to ? by_time_.upper_bound(*filter.t_to) : by_time_.end();
        for (auto it = lo; it != hi; ++it) {
            candidates.push_back(it->second);
        }
    } else if (filter.kind) {
        if (auto it = by_kind_.find(*filter.kind); it != by_kind_.end()) {
            candidates = it->second;
        }
    } else {
        scan_all = true;
    }

    std::vector<Detection> out;
    if (scan_all) {
        for (const auto& d : log_) {
            if (filter.matches(d)) {
                out.push_back(d);
            }
        }
    } else {
        for (auto pos : candidates) {
            if (filter.matches(log_[pos])) {
                out.push_back(log_[pos]);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Detection& a, const Detection& b) {
        return a.detected_at_ms != b.detected_at_ms ? a.detected_at_ms < b.detected_at_ms
                                                    : a.detection_id < b.detection_id;
    });
    return out;
}

std::optional<Detection> DetectionStore::get(std::uint64_t detection_id) const {
    std::shared_lock lock(mu_);
    auto it = std::lower_bound(log_.begin(), log_.end(), detection_id,
                               [](const Detection& d, std::uint64_t id) { return d.detection_id < id; });
    if (it == log_.end() || it->detection_id != detection_id) {
        return std::nullopt;
    }
    return *it;
}

std::vector<Detection> DetectionStore::all() const {
    std::shared_lock lock(mu_);
    return log_;
}

std::size_t DetectionStore::size() const {
    std::shared_lock lock(mu_);
    return log_.size();
}

} // namespace vcsim::store
