#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qkdnet/records.hpp"
#include "qkdnet/stats.hpp"
#include "qkdnet/topology.hpp"

namespace qkdnet {

/// One link declaration: either explicit channel parameters or a
/// calibrate-from reference into the scenario's measurement records.
struct LinkDecl {
  std::string route;
  NodeId a = '?';
  NodeId b = '?';
  LinkVia via = LinkVia::Direct;
  FiberScheme scheme = FiberScheme::FourFiber;
  double distance_km = 0.0;
  std::optional<double> attenuation_db;
  std::optional<std::string> calibrate_from;  // route label in the records
};

/// Round-robin switch schedule: the active leaf rotates through `rotation`
/// every quantum.
struct SwitchSchedule {
  double quantum_s = 60.0;
  std::vector<NodeId> rotation;
};

/// Parsed scenario configuration file. See data/wuhu_network.json for the
/// reference fixture and the README for the schema.
struct ScenarioConfig {
  std::string name;
  ProtocolParams params;
  std::vector<Node> nodes;
  std::optional<QuantumRouter> router;  // wavelengths not yet assigned
  std::optional<OpticalSwitch> optical_switch;
  std::vector<LinkDecl> links;
  SwitchSchedule schedule;
  std::string records_path;  // resolved relative to the scenario file
  std::vector<RouteRecord> records;
};

/// Loads and validates a scenario file (JSON). Schema violations raise
/// RecordValidationError or ParseError with context.
ScenarioConfig load_scenario(const std::string& path);

/// Materializes the topology: assigns router wavelengths, resolves each
/// link's model (calibration or explicit parameters) and validates the
/// structural invariants.
Topology build_topology(const ScenarioConfig& config);

}  // namespace qkdnet
