#include "qkdnet/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qkdnet {

namespace {

using nlohmann::json;

NodeId parse_node_id(const json& j, const char* context) {
  const auto s = j.get<std::string>();
  if (s.size() != 1) {
    throw RecordValidationError(0, std::string(context) +
                                       ": node ids are single characters, got '" +
                                       s + "'");
  }
  return s[0];
}

NodeRole parse_role(const std::string& role) {
  if (role == "backbone") return NodeRole::Backbone;
  if (role == "subnet") return NodeRole::Subnet;
  if (role == "single-fiber-access") return NodeRole::SingleFiberAccess;
  throw RecordValidationError(0, "unknown node role '" + role + "'");
}

FiberScheme parse_scheme(const std::string& scheme) {
  if (scheme == "four-fiber") return FiberScheme::FourFiber;
  if (scheme == "single-fiber") return FiberScheme::SingleFiber;
  throw RecordValidationError(0, "unknown fiber scheme '" + scheme + "'");
}

LinkVia parse_via(const std::string& via) {
  if (via == "router") return LinkVia::Router;
  if (via == "switch") return LinkVia::Switch;
  if (via == "direct") return LinkVia::Direct;
  throw RecordValidationError(0, "unknown link via '" + via + "'");
}

}  // namespace

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);

  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError(1, std::string("scenario JSON: ") + e.what());
  }

  ScenarioConfig cfg;
  try {
    cfg.name = j.value("name", "scenario");

    if (j.contains("params")) {
      const auto& p = j["params"];
      cfg.params.mu = p.value("mu", cfg.params.mu);
      cfg.params.nu = p.value("nu", cfg.params.nu);
      cfg.params.q_sift = p.value("q_sift", cfg.params.q_sift);
      cfg.params.f_ec = p.value("f_ec", cfg.params.f_ec);
      if (p.contains("mix")) {
        const auto& mix = p["mix"];
        if (!mix.is_array() || mix.size() != 3) {
          throw RecordValidationError(0, "params.mix must be [signal, decoy, vacuum]");
        }
        cfg.params.mix.signal = mix[0].get<double>();
        cfg.params.mix.decoy = mix[1].get<double>();
        cfg.params.mix.vacuum = mix[2].get<double>();
      }
    }
    cfg.params.validate();

    if (!j.contains("nodes") || !j["nodes"].is_array() || j["nodes"].empty()) {
      throw RecordValidationError(0, "scenario needs a non-empty nodes array");
    }
    for (const auto& n : j["nodes"]) {
      Node node;
      node.id = parse_node_id(n.at("id"), "nodes");
      node.role = parse_role(n.value("role", "backbone"));
      node.is_relay = n.value("relay", false);
      cfg.nodes.push_back(node);
    }

    if (j.contains("router")) {
      const auto& r = j["router"];
      QuantumRouter router;
      if (r.contains("id")) router.id = parse_node_id(r["id"], "router");
      for (const auto& m : r.at("members")) {
        router.members.push_back(parse_node_id(m, "router.members"));
      }
      for (const auto& wl : r.at("palette_nm")) {
        router.palette_nm.push_back(wl.get<int>());
      }
      cfg.router = router;
    }

    if (j.contains("switch")) {
      const auto& s = j["switch"];
      OpticalSwitch sw;
      if (s.contains("id")) sw.id = parse_node_id(s["id"], "switch");
      sw.hub = parse_node_id(s.at("hub"), "switch.hub");
      for (const auto& leaf : s.at("leaves")) {
        sw.leaves.push_back(parse_node_id(leaf, "switch.leaves"));
      }
      cfg.optical_switch = sw;
    }

    if (j.contains("schedule")) {
      const auto& s = j["schedule"];
      cfg.schedule.quantum_s = s.value("quantum_s", cfg.schedule.quantum_s);
      if (s.contains("rotation")) {
        for (const auto& leaf : s["rotation"]) {
          cfg.schedule.rotation.push_back(parse_node_id(leaf, "schedule"));
        }
      }
    }
    if (cfg.schedule.rotation.empty() && cfg.optical_switch) {
      cfg.schedule.rotation = cfg.optical_switch->leaves;
    }

    for (const auto& l : j.at("links")) {
      LinkDecl decl;
      decl.route = l.at("route").get<std::string>();
      decl.a = parse_node_id(l.at("a"), "links");
      decl.b = parse_node_id(l.at("b"), "links");
      decl.via = parse_via(l.value("via", "direct"));
      decl.scheme = parse_scheme(l.value("scheme", "four-fiber"));
      decl.distance_km = l.value("distance_km", 0.0);
      if (l.contains("attenuation_db")) {
        decl.attenuation_db = l["attenuation_db"].get<double>();
      }
      if (l.contains("calibrate_from")) {
        decl.calibrate_from = l["calibrate_from"].get<std::string>();
      }
      if (!decl.attenuation_db && !decl.calibrate_from) {
        throw RecordValidationError(
            0, "link " + decl.route +
                   " needs attenuation_db or a calibrate_from reference");
      }
      cfg.links.push_back(decl);
    }

    if (j.contains("records_csv")) {
      const auto rel = j["records_csv"].get<std::string>();
      cfg.records_path =
          (std::filesystem::path(path).parent_path() / rel).string();
      cfg.records = load_measurement_records(cfg.records_path);
    }
  } catch (const json::exception& e) {
    throw RecordValidationError(0, std::string("scenario schema: ") + e.what());
  }
  return cfg;
}

Topology build_topology(const ScenarioConfig& config) {
  Topology topo;
  for (const auto& node : config.nodes) topo.nodes[node.id] = node;

  if (config.router) {
    QuantumRouter router = *config.router;
    router.wavelengths =
        assign_wavelengths(router.members, router.palette_nm);
    topo.router = router;
  }
  topo.optical_switch = config.optical_switch;

  for (const auto& decl : config.links) {
    Link link;
    link.route = decl.route;
    link.ends = PairKey(decl.a, decl.b);
    link.via = decl.via;
    link.distance_km = decl.distance_km;

    if (decl.calibrate_from) {
      const auto it = std::find_if(
          config.records.begin(), config.records.end(),
          [&](const RouteRecord& r) { return r.route == *decl.calibrate_from; });
      if (it == config.records.end()) {
        throw RecordValidationError(
            0, "link " + decl.route + ": no measurement record for route '" +
                   *decl.calibrate_from + "'");
      }
      link.model = calibrate_link(it->stats, config.params, decl.scheme);
    } else {
      link.model.channel.scheme = decl.scheme;
      link.model.channel.attenuation_db = *decl.attenuation_db;
    }
    link.model.channel.length_km = decl.distance_km;

    if (link.via == LinkVia::Router && topo.router) {
      const auto it = topo.router->wavelengths.find(link.ends);
      if (it != topo.router->wavelengths.end()) {
        link.wavelength_nm = it->second;
      }
    }
    topo.links.push_back(std::move(link));
  }

  topo.validate();
  return topo;
}

}  // namespace qkdnet
