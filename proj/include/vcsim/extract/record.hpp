#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vcsim/core/types.hpp"
#include "vcsim/netsim/message.hpp"

namespace vcsim::extract {

/// DETECTION_RECORD payload: a Detection plus an optional crop image.
struct DetectionRecord {
    Detection detection;
    std::vector<std::uint8_t> crop; // carried base64 in "crop_b64"

    friend bool operator==(const DetectionRecord&, const DetectionRecord&) = default;
};

netsim::Message encode_detection_record(const DetectionRecord& record);
/// Throws netsim::WireError{BadType} on a non-record message and
/// std::invalid_argument on a malformed body.
DetectionRecord decode_detection_record(const netsim::Message& msg);

} // namespace vcsim::extract
