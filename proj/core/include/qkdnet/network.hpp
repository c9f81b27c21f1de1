#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkdnet/cascade.hpp"
#include "qkdnet/estimator.hpp"
#include "qkdnet/keypool.hpp"
#include "qkdnet/scenario.hpp"
#include "qkdnet/topology.hpp"

namespace qkdnet {

class UnreachableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distillation outcome of one link session.
struct LinkSessionReport {
  std::string route;
  ObservedStatistics stats;
  RateEstimate estimate;

  std::uint64_t n_sifted = 0;
  std::uint64_t bits_leaked = 0;       // measured reconciliation leakage
  double measured_f_ec = 0.0;          // leakage / (n H2(Emu))
  std::uint64_t formula_final_bits = 0;  // final_length with nominal f
  std::uint64_t final_bits = 0;          // live: measured leakage subtracted
  bool secure = false;
  std::string diagnostic;
};

/// Classical forwarding transcript of a relay establishment: one XOR word
/// per interior relay.
struct RelayTranscript {
  std::vector<NodeId> relays;
  std::vector<BitVector> forwarded;
};

struct RelayOutcome {
  BitVector key;
  RelayTranscript transcript;
};

/// Switch activity interval, for the serialization audit.
struct SwitchInterval {
  NodeId leaf = '?';
  double start_s = 0.0;
  double end_s = 0.0;
};

/// Key-distribution state of the whole network: topology, per-pair pools,
/// optical-switch state. The network advances on a single deterministic
/// timeline; all mutation happens on the calling thread.
class Network {
 public:
  Network(Topology topology, ProtocolParams params);

  const Topology& topology() const { return topo_; }
  const ProtocolParams& params() const { return params_; }

  KeyPool& pool(PairKey pair);
  const std::map<PairKey, KeyPool>& pools() const { return pools_; }

  /// Connects the switch to `leaf` (idempotent). Any in-flight session on
  /// the previously active leaf is aborted and its partial data discarded.
  void switch_connect(NodeId leaf);
  std::optional<NodeId> active_switch_leaf() const;

  /// Registers an in-flight session on a switched route; it stays open
  /// until committed or displaced by a switch-over.
  void begin_switched_session(const std::string& route);
  /// Commits the in-flight session. Returns false when a switch-over
  /// aborted it, in which case the partial data must be discarded.
  bool commit_switched_session(const std::string& route);

  /// Shortest path from -> to across direct QKD links whose interior nodes
  /// are all trusted relays. Single-hop paths are just {from, to}.
  std::vector<NodeId> relay_path(NodeId from, NodeId to) const;

  /// Hop-by-hop XOR chaining: consumes `bits` from every hop pool, delivers
  /// the first hop's key to both endpoints, and records the classical
  /// forwarding words k_i XOR k_{i+1} each interior relay announces.
  RelayOutcome relay_establish(const std::vector<NodeId>& path,
                               std::uint64_t bits);

  /// Runs one full distillation session on a route: simulate -> sift ->
  /// cascade -> verify -> privacy amplification, then deposits the block.
  /// A no-secure-key outcome leaves the pool unchanged and is reported in
  /// the returned row. Throws for structural errors (unknown route, switch
  /// held by the other leaf).
  LinkSessionReport establish_link_keys(const std::string& route,
                                        std::uint64_t n_pulses,
                                        std::uint64_t seed);

  /// Total bits drawn via sessions + relay forwarding, for conservation
  /// audits.
  std::uint64_t total_produced() const;
  std::uint64_t total_consumed() const;
  std::uint64_t total_available() const;

  const std::vector<SwitchInterval>& switch_audit() const { return audit_; }

 private:
  NodeId switched_leaf(const Link& link) const;

  Topology topo_;
  ProtocolParams params_;
  std::map<PairKey, KeyPool> pools_;
  std::uint64_t next_block_id_ = 1;

  // In-flight switched session bookkeeping (abort-on-switchover).
  std::optional<std::string> inflight_route_;
  bool inflight_aborted_ = false;

  std::vector<SwitchInterval> audit_;
  double clock_s_ = 0.0;
};

/// Full-network simulation: every route runs sessions under the scenario's
/// switch schedule. Switched leaves share the quantum channel round-robin,
/// so each receives its share of the per-link pulse budget.
struct SimulationRun {
  std::vector<LinkSessionReport> sessions;
  std::vector<std::string> notes;  // scheduling notes (conflicts, aborts)
};

SimulationRun run_simulation(Network& network, const ScenarioConfig& config,
                             std::uint64_t pulses_per_link,
                             std::uint64_t seed);

}  // namespace qkdnet
