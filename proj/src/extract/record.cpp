#include "vcsim/extract/record.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/beast/core/detail/base64.hpp>
#include <json.hpp>

#include "vcsim/core/json_io.hpp"

namespace vcsim::extract {

namespace base64 = boost::beast::detail::base64;
using nlohmann::json;

netsim::Message encode_detection_record(const DetectionRecord& record) {
    json j = record.detection;
    if (!record.crop.empty()) {
        std::string text(base64::encoded_size(record.crop.size()), '\0');
        text.resize(base64::encode(text.data(), record.crop.data(), record.crop.size()));
        j["crop_b64"] = std::move(text);
    }
    const std::string body = j.dump();
    return netsim::Message{netsim::MessageType::DetectionRecord, std::vector<std::uint8_t>(body.begin(), body.end())};
}

DetectionRecord decode_detection_record(const netsim::Message& msg) {
    if (msg.type != netsim::MessageType::DetectionRecord) {
        throw netsim::WireError(netsim::WireErrc::BadType, "not a DETECTION_RECORD message");
    }
    DetectionRecord record;
    try {
        const json j = json::parse(msg.body.begin(), msg.body.end());
        record.detection = j.get<Detection>();
        if (auto it = j.find("crop_b64"); it != j.end()) {
            const auto& text = it->get_ref<const std::string&>();
            record.crop.resize(base64::decoded_size(text.size()));
            const auto [written, read] = base64::decode(record.crop.data(), text.data(), text.size());
            // Decoding stops at the '=' padding, which must be all that is left.
            const auto tail = std::string_view(text).substr(read);
            if (text.size() % 4 != 0 || tail.size() > 2 || tail.find_first_not_of('=') != std::string_view::npos) {
                throw std::invalid_argument("crop_b64 is not valid base64");
            }
            record.crop.resize(written);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed DETECTION_RECORD: ") + e.what());
    }
    return record;
}

} // namespace vcsim::extract
