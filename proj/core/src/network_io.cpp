#include "resnet/network_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace resnet {

using nlohmann::ordered_json;

std::string network_to_json(const Network& net) {
    ordered_json j;
    j["vertices"] = net.size();
    j["origin"] = net.origin();
    if (net.ground())
        j["ground"] = *net.ground();
    else
        j["ground"] = nullptr;
    auto edges = ordered_json::array();
    for (const auto& e : net.edges())
        edges.push_back(ordered_json::array({e.u, e.v, e.conductance}));
    j["edges"] = std::move(edges);
    if (net.has_labels()) {
        ordered_json labels = ordered_json::object();
        for (int v = 0; v < net.size(); ++v) labels[std::to_string(v)] = net.label(v);
        j["labels"] = std::move(labels);
    } else {
        j["labels"] = nullptr;
    }
    return j.dump(2);
}

Network network_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidNetwork(std::string("network JSON parse failure: ") + e.what());
    }
    if (!j.contains("vertices") || !j.contains("origin") || !j.contains("edges"))
        throw InvalidNetwork("network JSON needs vertices, origin and edges");
    const int n = j["vertices"].get<int>();
    const int origin = j["origin"].get<int>();
    std::optional<int> ground;
    if (j.contains("ground") && !j["ground"].is_null()) ground = j["ground"].get<int>();

    std::vector<Edge> edges;
    for (const auto& row : j["edges"]) {
        if (!row.is_array() || row.size() != 3)
            throw InvalidNetwork("each edge must be [u, v, conductance]");
        edges.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<double>()});
    }
    std::vector<std::string> labels;
    if (j.contains("labels") && !j["labels"].is_null()) {
        labels.assign(n, "");
        for (const auto& [key, value] : j["labels"].items()) {
            int id = std::atoi(key.c_str());
            if (id < 0 || id >= n) throw InvalidNetwork("label id out of range: " + key);
            labels[id] = value.get<std::string>();
        }
    }
    return Network(n, std::move(edges), origin, ground, std::move(labels));
}

Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open network file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return network_from_json(buf.str());
}

void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write network file: " + path);
    out << network_to_json(net) << '\n';
}

}  // namespace resnet
