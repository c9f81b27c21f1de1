#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkdnet/link.hpp"

namespace qkdnet {

using NodeId = char;

enum class NodeRole { Backbone, Subnet, SingleFiberAccess };

struct Node {
  NodeId id = '?';
  NodeRole role = NodeRole::Backbone;
  bool is_relay = false;
};

/// Unordered node pair; (X, Y) and (Y, X) are the same key.
struct PairKey {
  NodeId a;
  NodeId b;

  PairKey(NodeId x, NodeId y) : a(x < y ? x : y), b(x < y ? y : x) {}
  auto operator<=>(const PairKey&) const = default;
  std::string label() const { return std::string{a, '-', b}; }
};

using WavelengthMap = std::map<PairKey, int>;

/// Proper edge coloring of the complete graph over `members` using the
/// wavelength palette (round-robin 1-factorization). Needs n - 1 colors for
/// even n and n for odd n; throws std::invalid_argument when the palette is
/// too small. No node ends up with two incident pairs on one wavelength,
/// which is what lets the passive router serve all pairs simultaneously.
WavelengthMap assign_wavelengths(const std::vector<NodeId>& members,
                                 const std::vector<int>& palette_nm);

/// Verifies the proper-coloring property; returns a violation description
/// or an empty string when the map is collision free.
std::string check_edge_coloring(const WavelengthMap& map);

struct QuantumRouter {
  NodeId id = 'R';
  std::vector<NodeId> members;
  std::vector<int> palette_nm;
  WavelengthMap wavelengths;
};

/// At most one leaf holds the quantum channel through the switch at a time.
struct OpticalSwitch {
  NodeId id = 'S';
  NodeId hub = '?';
  std::vector<NodeId> leaves;
  std::optional<NodeId> active_leaf;

  bool has_leaf(NodeId leaf) const;
};

enum class LinkVia { Router, Switch, Direct };

struct Link {
  std::string route;  // e.g. "A-R-B"
  PairKey ends{'?', '?'};
  LinkVia via = LinkVia::Direct;
  double distance_km = 0.0;
  std::optional<int> wavelength_nm;
  LinkModel model;
};

struct Topology {
  std::map<NodeId, Node> nodes;
  std::vector<Link> links;
  std::optional<QuantumRouter> router;
  std::optional<OpticalSwitch> optical_switch;

  const Link* find_link(PairKey ends) const;
  const Link* find_route(const std::string& route) const;
  const Node& node(NodeId id) const;

  /// The single backbone node bridging into the switched subnet.
  std::optional<NodeId> gateway() const;

  /// Structural invariants: link endpoints exist, router coloring is
  /// collision free, switch hub is a backbone node and exactly one gateway
  /// bridges backbone and subnet when a subnet exists. Throws
  /// std::invalid_argument on violation.
  void validate() const;
};

}  // namespace qkdnet
