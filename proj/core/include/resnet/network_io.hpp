#pragma once

#include <iosfwd>
#include <string>

#include "resnet/network.hpp"

namespace resnet {

/// Serializes per the schema
/// {"vertices": n, "origin": id, "ground": id|null,
///  "edges": [[u,v,c],...], "labels": {"id": label}|null}.
std::string network_to_json(const Network& net);

Network network_from_json(const std::string& text);
Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

}  // namespace resnet
