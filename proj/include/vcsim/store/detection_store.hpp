#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "vcsim/core/types.hpp"
#include "vcsim/store/errors.hpp"

namespace vcsim::store {

/// Inclusive lat/lon rectangle in degrees x 1e7.
struct GeoBox {
    std::int32_t min_lat_e7 = -kMaxLatE7;
    std::int32_t min_lon_e7 = -kMaxLonE7;
    std::int32_t max_lat_e7 = kMaxLatE7;
    std::int32_t max_lon_e7 = kMaxLonE7;

    static GeoBox world() noexcept { return {}; }
    bool contains(const GpsFix& f) const noexcept {
        return f.lat_e7 >= min_lat_e7 && f.lat_e7 <= max_lat_e7 && f.lon_e7 >= min_lon_e7 && f.lon_e7 <= max_lon_e7;
    }
};

/// Every present predicate must hold. Times are inclusive bounds on detected_at_ms.
struct DetectionFilter {
    std::optional<DetectionKind> kind;
    std::optional<std::string> value; // canonical value text (plate string or decimal face code)
    std::optional<std::int64_t> t_from;
    std::optional<std::int64_t> t_to;
    std::optional<GeoBox> bbox;

    /// Throws StoreError{BadFilter}.
    void validate() const;
    bool matches(const Detection& d) const;
};

/// Geo index cell edge, 0.001 degree.
inline constexpr std::int32_t kGeoCellE7 = 10'000;

// Append-only detection log with value, kind, time and geo-grid indexes.
// One writer at a time; readers see whole appends only.
class DetectionStore {
public:
    /// Assigns the next id (from 1) and appends.
    std::uint64_t put(Detection d);
    /// Re-appends a persisted detection keeping its id; ids must increase.
    void restore(const Detection& d);

    std::vector<Detection> query(const DetectionFilter& filter) const;
    std::optional<Detection> get(std::uint64_t detection_id) const;
    std::vector<Detection> all() const;
    std::size_t size() const;

private:
    static std::string value_key(const Detection& d);
    void index(std::size_t pos);

    mutable std::shared_mutex mu_;
    std::vector<Detection> log_;
    std::uint64_t next_id_ = 1;
    std::unordered_map<std::string, std::vector<std::size_t>> by_value_;
    std::map<DetectionKind, std::vector<std::size_t>> by_kind_;
    std::multimap<std::int64_t, std::size_t> by_time_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_cell_;
};

} // namespace vcsim::store
