#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vcsim/netsim/link.hpp"

namespace vcsim::netsim {

struct NodeSpec {
    std::string id;
    std::string role; // vehicle | rsu | worker | gateway

    friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

struct Topology {
    std::vector<NodeSpec> nodes;
    std::vector<LinkParams> links;

    const LinkParams* find_link(std::string_view id) const noexcept;
    /// Unique ids, valid link parameters, endpoints present. Throws WireError{BadTopology}.
    void validate() const;

    friend bool operator==(const Topology&, const Topology&) = default;
};

void to_json(nlohmann::json& j, const LinkParams& l);
void from_json(const nlohmann::json& j, LinkParams& l);
void to_json(nlohmann::json& j, const Topology& t);
void from_json(const nlohmann::json& j, Topology& t);

} // namespace vcsim::netsim
