#pragma once

#include <json.hpp>

#include "vcsim/core/types.hpp"

// JSON forms of the domain types. Frame ids and blob digests travel as
// 16-digit hex strings since they do not fit a JSON double; face codes are
// numbers, plate codes strings.
namespace vcsim {

void to_json(nlohmann::json& j, const GpsFix& fix);
void from_json(const nlohmann::json& j, GpsFix& fix);

void to_json(nlohmann::json& j, const Detection& d);
void from_json(const nlohmann::json& j, Detection& d);

void to_json(nlohmann::json& j, const WatchlistEntry& e);
void from_json(const nlohmann::json& j, WatchlistEntry& e);

void to_json(nlohmann::json& j, const MatchEvent& m);
void from_json(const nlohmann::json& j, MatchEvent& m);

/// Reads a "value" field for the given kind; accepts a number or a decimal
/// string for faces. Returns nullopt when outside the kind's domain.
std::optional<TargetValue> target_value_from_json(DetectionKind kind, const nlohmann::json& value);
nlohmann::json value_to_json(const DetectionValue& v);

} // namespace vcsim
