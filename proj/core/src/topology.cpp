#include "qkdnet/topology.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qkdnet {

WavelengthMap assign_wavelengths(const std::vector<NodeId>& members,
                                 const std::vector<int>& palette_nm) {
  const std::size_t n = members.size();
  WavelengthMap map;
  if (n < 2) return map;

  const bool even = n % 2 == 0;
  const std::size_t rounds = even ? n - 1 : n;
  if (palette_nm.size() < rounds) {
    std::ostringstream os;
    os << "assign_wavelengths: " << n << " nodes need " << rounds
       << " wavelengths, palette has " << palette_nm.size();
    throw std::invalid_argument(os.str());
  }

  // Circle method: fix the last node (even n) or a dummy slot (odd n) and
  // rotate the rest; each round is a (near-)perfect matching -> one color.
  const std::size_t m = even ? n - 1 : n;  // rotating slots
  for (std::size_t r = 0; r < rounds; ++r) {
    const int color = palette_nm[r];
    if (even) {
      map[PairKey(members[r % m], members[n - 1])] = color;
    }
    for (std::size_t i = 1; i <= (m - 1) / 2; ++i) {
      const std::size_t u = (r + i) % m;
      const std::size_t v = (r + m - i) % m;
      map[PairKey(members[u], members[v])] = color;
    }
  }
  const std::string violation = check_edge_coloring(map);
  if (!violation.empty()) {
    throw std::logic_error("assign_wavelengths: " + violation);
  }
  return map;
}

std::string check_edge_coloring(const WavelengthMap& map) {
  std::set<std::pair<NodeId, int>> seen;
  for (const auto& [pair, color] : map) {
    for (NodeId node : {pair.a, pair.b}) {
      if (!seen.insert({node, color}).second) {
        std::ostringstream os;
        os << "node " << node << " carries wavelength " << color
           << " on two links";
        return os.str();
      }
    }
  }
  return "";
}

bool OpticalSwitch::has_leaf(NodeId leaf) const {
  return std::find(leaves.begin(), leaves.end(), leaf) != leaves.end();
}

const Link* Topology::find_link(PairKey ends) const {
  for (const auto& link : links) {
    if (link.ends == ends) return &link;
  }
  return nullptr;
}

const Link* Topology::find_route(const std::string& route) const {
  for (const auto& link : links) {
    if (link.route == route) return &link;
  }
  return nullptr;
}

const Node& Topology::node(NodeId id) const {
  const auto it = nodes.find(id);
  if (it == nodes.end()) {
    throw std::invalid_argument(std::string("unknown node ") + id);
  }
  return it->second;
}

std::optional<NodeId> Topology::gateway() const {
  if (!optical_switch) return std::nullopt;
  return optical_switch->hub;
}

void Topology::validate() const {
  for (const auto& link : links) {
    node(link.ends.a);
    node(link.ends.b);
  }
  if (router) {
    const std::string violation = check_edge_coloring(router->wavelengths);
    if (!violation.empty()) {
      throw std::invalid_argument("router wavelength map: " + violation);
    }
    for (NodeId member : router->members) node(member);
  }
  if (optical_switch) {
    const Node& hub = node(optical_switch->hub);
    if (hub.role != NodeRole::Backbone) {
      throw std::invalid_argument("switch hub must be a backbone node");
    }
    // The hub is the only bridge between backbone and subnet: every subnet
    // node must hang off the switch, and every switch link must end at the
    // hub.
    for (const auto& link : links) {
      if (link.via != LinkVia::Switch) continue;
      if (link.ends.a != optical_switch->hub &&
          link.ends.b != optical_switch->hub) {
        throw std::invalid_argument(
            "switched link does not terminate at the gateway");
      }
    }
    for (const auto& [id, n] : nodes) {
      if (n.role == NodeRole::Subnet && !optical_switch->has_leaf(id)) {
        throw std::invalid_argument(std::string("subnet node ") + id +
                                    " is not behind the optical switch");
      }
    }
  }
}

}  // namespace qkdnet
