#include "qkdnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

#include "qkdnet/privacy.hpp"
#include "qkdnet/rng.hpp"
#include "qkdnet/sift.hpp"

namespace qkdnet {

Network::Network(Topology topology, ProtocolParams params)
    : topo_(std::move(topology)), params_(params) {
  params_.validate();
  topo_.validate();
}

KeyPool& Network::pool(PairKey pair) {
  auto it = pools_.find(pair);
  if (it == pools_.end()) {
    it = pools_.emplace(pair, KeyPool(pair)).first;
  }
  return it->second;
}

void Network::switch_connect(NodeId leaf) {
  if (!topo_.optical_switch) {
    throw std::invalid_argument("switch_connect: topology has no optical switch");
  }
  OpticalSwitch& sw = *topo_.optical_switch;
  if (!sw.has_leaf(leaf)) {
    throw std::invalid_argument(std::string("switch_connect: unknown leaf ") +
                                leaf);
  }
  if (sw.active_leaf == leaf) return;  // idempotent

  if (inflight_route_) {
    // Partial data of the displaced session is discarded, not resumed.
    inflight_aborted_ = true;
  }
  if (!audit_.empty() && audit_.back().end_s < 0.0) {
    audit_.back().end_s = clock_s_;
  }
  sw.active_leaf = leaf;
  audit_.push_back(SwitchInterval{leaf, clock_s_, -1.0});
}

NodeId Network::switched_leaf(const Link& link) const {
  const OpticalSwitch& sw = *topo_.optical_switch;
  return link.ends.a == sw.hub ? link.ends.b : link.ends.a;
}

void Network::begin_switched_session(const std::string& route) {
  const Link* link = topo_.find_route(route);
  if (!link || link->via != LinkVia::Switch) {
    throw std::invalid_argument("begin_switched_session: not a switched route: " +
                                route);
  }
  const NodeId leaf = switched_leaf(*link);
  if (topo_.optical_switch->active_leaf != leaf) {
    throw std::runtime_error(std::string("switched route ") + route +
                             " rejected: switch is not serving leaf " + leaf);
  }
  if (inflight_route_ && !inflight_aborted_) {
    throw std::runtime_error("a switched session is already in flight");
  }
  inflight_route_ = route;
  inflight_aborted_ = false;
}

bool Network::commit_switched_session(const std::string& route) {
  if (inflight_route_ != route) {
    throw std::invalid_argument("commit_switched_session: no such in-flight session");
  }
  const bool ok = !inflight_aborted_;
  inflight_route_.reset();
  inflight_aborted_ = false;
  return ok;
}

std::optional<NodeId> Network::active_switch_leaf() const {
  if (!topo_.optical_switch) return std::nullopt;
  return topo_.optical_switch->active_leaf;
}

std::vector<NodeId> Network::relay_path(NodeId from, NodeId to) const {
  topo_.node(from);
  topo_.node(to);
  if (from == to) {
    throw std::invalid_argument("relay_path: endpoints must differ");
  }

  // Sorted adjacency keeps the search deterministic.
  std::map<NodeId, std::set<NodeId>> adjacency;
  for (const auto& link : topo_.links) {
    adjacency[link.ends.a].insert(link.ends.b);
    adjacency[link.ends.b].insert(link.ends.a);
  }

  std::map<NodeId, NodeId> parent;
  std::queue<NodeId> frontier;
  frontier.push(from);
  parent[from] = from;
  while (!frontier.empty()) {
    const NodeId current = frontier.front();
    frontier.pop();
    if (current == to) break;
    // Interior hops must be trusted relays; the source may be anything.
    if (current != from && !topo_.node(current).is_relay) continue;
    for (NodeId next : adjacency[current]) {
      if (parent.count(next)) continue;
      parent[next] = current;
      frontier.push(next);
    }
  }
  if (!parent.count(to)) {
    throw UnreachableError(std::string("no trusted-relay path from ") + from +
                           " to " + to +
                           " (intermediate nodes must be flagged as relays)");
  }
  std::vector<NodeId> path;
  for (NodeId at = to; at != from; at = parent[at]) path.push_back(at);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

RelayOutcome Network::relay_establish(const std::vector<NodeId>& path,
                                      std::uint64_t bits) {
  if (path.size() < 2) {
    throw std::invalid_argument("relay_establish: path needs two endpoints");
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!topo_.find_link(PairKey(path[i], path[i + 1]))) {
      throw std::invalid_argument(
          "relay_establish: consecutive nodes do not share a direct link");
    }
  }
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    if (!topo_.node(path[i]).is_relay) {
      throw std::invalid_argument(std::string("relay_establish: node ") +
                                  path[i] + " is not a trusted relay");
    }
  }
  // All-or-nothing: report the starving hop before consuming anything.
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const PairKey hop(path[i], path[i + 1]);
    if (pool(hop).bits_available() < bits) {
      throw StarvationError(hop.label(), bits, pool(hop).bits_available());
    }
  }

  std::vector<BitVector> hop_keys;
  hop_keys.reserve(path.size() - 1);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    hop_keys.push_back(pool(PairKey(path[i], path[i + 1])).consume(bits));
  }

  RelayOutcome outcome;
  outcome.key = hop_keys.front();
  for (std::size_t i = 0; i + 1 < hop_keys.size(); ++i) {
    BitVector word = hop_keys[i];
    word.xor_with(hop_keys[i + 1]);
    outcome.transcript.relays.push_back(path[i + 1]);
    outcome.transcript.forwarded.push_back(std::move(word));
  }
  return outcome;
}

LinkSessionReport Network::establish_link_keys(const std::string& route,
                                               std::uint64_t n_pulses,
                                               std::uint64_t seed) {
  const Link* link = topo_.find_route(route);
  if (!link) {
    throw std::invalid_argument("establish_link_keys: unknown route " + route);
  }

  const bool switched = link->via == LinkVia::Switch;
  if (switched) {
    const OpticalSwitch& sw = *topo_.optical_switch;
    const NodeId leaf =
        link->ends.a == sw.hub ? link->ends.b : link->ends.a;
    if (sw.active_leaf != leaf) {
      std::ostringstream os;
      os << "route " << route << " rejected: optical switch is "
         << (sw.active_leaf ? std::string("serving leaf ") + *sw.active_leaf
                            : std::string("not connected"));
      throw std::runtime_error(os.str());
    }
    inflight_switched_route_ = route;
    inflight_aborted_ = false;
  }

  LinkSessionReport report;
  report.route = route;
  report.stats = simulate_session(link->model, params_, n_pulses,
                                  derive_seed(seed, 0x73657373ULL));
  report.estimate = key_rate(report.stats, params_);

  if (switched) {
    if (inflight_aborted_) {
      report.diagnostic = "session aborted by switch-over; partial data discarded";
      inflight_aborted_ = false;
      return report;
    }
    inflight_switched_route_.reset();
    clock_s_ += report.stats.duration_s;
  }

  if (!report.estimate.secure) {
    report.diagnostic = report.estimate.diagnostic;
    return report;
  }

  // Signal-state detections feed the key; decoy and vacuum states only
  // steer the estimator.
  const auto n_detections = static_cast<std::size_t>(
      std::llround(report.stats.signal.gain * report.stats.signal.pulses));
  Rng event_rng(derive_seed(seed, 0x65766e74ULL));
  std::vector<SenderEvent> sender;
  std::vector<ReceiverEvent> receiver;
  generate_correlated_events(n_detections, report.stats.signal.qber, event_rng,
                             sender, receiver);
  SiftedKeyPair pair = sift(sender, receiver);
  pair.estimated_qber = report.stats.signal.qber;
  report.n_sifted = pair.sender_bits.size();
  if (report.n_sifted < 64) {
    report.diagnostic = "insufficient sifted material for distillation";
    return report;
  }

  const auto recon = cascade_reconcile(pair, derive_seed(seed, 0x63736364ULL));
  report.bits_leaked = recon.bits_leaked;
  report.measured_f_ec =
      static_cast<double>(recon.bits_leaked) /
      (static_cast<double>(report.n_sifted) *
       binary_entropy(report.stats.signal.qber));
  if (!recon.verified) {
    report.diagnostic = recon.diagnostic;
    return report;
  }

  report.formula_final_bits =
      final_length(report.n_sifted, report.estimate, report.stats, params_);

  // Live subtraction uses the leakage this session actually disclosed
  // (plus the verification hash) instead of the nominal f H2(E) budget.
  const double entropy_share =
      (report.estimate.q1_lower / report.stats.signal.gain) *
      (1.0 - binary_entropy(report.estimate.e1_upper));
  const double live = std::floor(static_cast<double>(report.n_sifted) *
                                 entropy_share) -
                      static_cast<double>(recon.bits_leaked) -
                      static_cast<double>(CascadeConfig{}.verify_hash_bits);
  if (!(live > 0.0)) {
    report.diagnostic = "no secure key after subtracting measured leakage";
    return report;
  }
  report.final_bits = static_cast<std::uint64_t>(live);

  Rng pa_rng(derive_seed(seed, 0x70616d70ULL));
  const BitVector hash_seed =
      BitVector::random(report.n_sifted + report.final_bits - 1, pa_rng);
  SecretKeyBlock block =
      privacy_amplify(recon.corrected_bits, hash_seed, report.final_bits);
  block.source_pair = link->ends.label();
  block.block_id = next_block_id_++;
  pool(link->ends).deposit(std::move(block));

  report.secure = true;
  return report;
}

std::uint64_t Network::total_produced() const {
  std::uint64_t total = 0;
  for (const auto& [pair, pool] : pools_) total += pool.bits_produced();
  return total;
}

std::uint64_t Network::total_consumed() const {
  std::uint64_t total = 0;
  for (const auto& [pair, pool] : pools_) total += pool.bits_consumed();
  return total;
}

std::uint64_t Network::total_available() const {
  std::uint64_t total = 0;
  for (const auto& [pair, pool] : pools_) total += pool.bits_available();
  return total;
}

SimulationRun run_simulation(Network& network, const ScenarioConfig& config,
                             std::uint64_t pulses_per_link,
                             std::uint64_t seed) {
  SimulationRun run;
  const Topology& topo = network.topology();

  std::uint64_t stream = 0;
  for (const auto& link : topo.links) {
    if (link.via == LinkVia::Switch) continue;
    run.sessions.push_back(network.establish_link_keys(
        link.route, pulses_per_link, derive_seed(seed, stream++)));
  }

  // Switched leaves time-share the quantum channel: two rotation cycles,
  // each leaf receiving half of its pulse share per quantum.
  if (topo.optical_switch && !config.schedule.rotation.empty()) {
    const auto& rotation = config.schedule.rotation;
    const std::uint64_t share = pulses_per_link / rotation.size();
    const int cycles = 2;
    for (int cycle = 0; cycle < cycles; ++cycle) {
      for (const NodeId leaf : rotation) {
        const Link* link =
            topo.find_link(PairKey(topo.optical_switch->hub, leaf));
        if (!link) {
          run.notes.push_back(std::string("no switched link for leaf ") + leaf);
          continue;
        }
        network.switch_connect(leaf);
        std::ostringstream note;
        note << "switch quantum " << cycle << ": leaf " << leaf << " active";
        run.notes.push_back(note.str());
        run.sessions.push_back(network.establish_link_keys(
            link->route, share / cycles, derive_seed(seed, stream++)));
      }
    }
  }
  return run;
}

}  // namespace qkdnet
