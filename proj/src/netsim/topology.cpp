#include "vcsim/netsim/topology.hpp"

#include <set>

#include "vcsim/netsim/message.hpp"

namespace vcsim::netsim {

using nlohmann::json;

const LinkParams* Topology::find_link(std::string_view id) const noexcept {
    for (const auto& l : links) {
        if (l.link_id == id) return &l;
    }
    return nullptr;
}

void Topology::validate() const {
    std::set<std::string, std::less<>> ids;
    for (const auto& n : nodes) {
        if (n.id.empty() || !ids.insert(n.id).second) {
            throw WireError(WireErrc::BadTopology, "empty or duplicate node id '" + n.id + "'");
        }
    }
    std::set<std::string, std::less<>> link_ids;
    for (const auto& l : links) {
        if (!l.valid()) {
            throw WireError(WireErrc::BadTopology, "invalid parameters on link '" + l.link_id + "'");
        }
        if (!link_ids.insert(l.link_id).second) {
            throw WireError(WireErrc::BadTopology, "duplicate link id '" + l.link_id + "'");
        }
        if (!ids.contains(l.src) || !ids.contains(l.dst)) {
            throw WireError(WireErrc::BadTopology, "link '" + l.link_id + "' references an unknown node");
        }
    }
}

void to_json(json& j, const LinkParams& l) {
    j = json{{"link_id", l.link_id},           {"src", l.src},
             {"dst", l.dst},                   {"base_latency_s", l.base_latency_s},
             {"bandwidth_Bps", l.bandwidth_Bps}, {"loss_prob", l.loss_prob}};
}

void from_json(const json& j, LinkParams& l) {
    l.link_id = j.at("link_id").get<std::string>();
    l.src = j.value("src", std::string{});
    l.dst = j.value("dst", std::string{});
    l.base_latency_s = j.value("base_latency_s", kDefaultBaseLatencyS);
    l.bandwidth_Bps = j.at("bandwidth_Bps").get<double>();
    l.loss_prob = j.value("loss_prob", 0.0);
}

void to_json(json& j, const Topology& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes) {
        nodes.push_back(json{{"id", n.id}, {"role", n.role}});
    }
    j = json{{"nodes", std::move(nodes)}, {"links", t.links}};
}

void from_json(const json& j, Topology& t) {
    t.nodes.clear();
    for (const auto& n : j.at("nodes")) {
        t.nodes.push_back(NodeSpec{n.at("id").get<std::string>(), n.value("role", std::string{})});
    }
    t.links = j.value("links", std::vector<LinkParams>{});
}

} // namespace vcsim::netsim
