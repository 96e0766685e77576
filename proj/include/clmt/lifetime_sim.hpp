// Copyright 2026 The clmt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/*! \file
 *  \brief Round-based energy drain over an aggregation tree.
 *
 *  Per round a leaf pays `tx_cost`; a node with c children pays
 *  c * (rx_cost + agg_cost) + tx_cost (the root included, it forwards to the
 *  sink). A node that cannot afford its round dies at the round boundary and
 *  sends nothing. The round in which a death happens is spent reconstructing
 *  the tree: dead nodes leave, every survivor pays `rebuild_cost`, and the
 *  tree is rebuilt with the same strategy on the survivor graph. The run
 *  stops when one node or a disconnected survivor graph remains, or after
 *  `max_rounds`.
 */

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "clmt/builders.hpp"
#include "clmt/graph.hpp"
#include "clmt/tree.hpp"

namespace clmt {

struct SimConfig {
  Energy tx_cost = 1.0;
  Energy rx_cost = 0.5;
  Energy agg_cost = 0.0;
  Energy rebuild_cost = 0.0;
  Algorithm strategy = Algorithm::clmt;
  std::uint64_t max_rounds = 1000;
  /// Recorded in reports. The drain model itself has no randomness.
  std::uint64_t seed = 0;
  bool record_timeline = true;

  bool operator==(const SimConfig&) const = default;
};

inline void validate(const SimConfig& cfg) {
  auto check = [](Energy v, const char* name) {
    if (!is_valid_energy(v)) throw ConfigError(std::string(name) + " must be finite and >= 0");
  };
  check(cfg.tx_cost, "tx_cost");
  check(cfg.rx_cost, "rx_cost");
  check(cfg.agg_cost, "agg_cost");
  check(cfg.rebuild_cost, "rebuild_cost");
  if (cfg.max_rounds < 1) throw ConfigError("max_rounds must be >= 1");
}

enum class Termination { max_rounds, single_survivor, no_survivors, disconnected };

constexpr std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::max_rounds: return "max_rounds";
    case Termination::single_survivor: return "single_survivor";
    case Termination::no_survivors: return "no_survivors";
    case Termination::disconnected: return "disconnected";
  }
  return "?";
}

struct SimReport {
  Algorithm strategy = Algorithm::clmt;
  std::uint64_t seed = 0;
  /// Rounds completed before the first death.
  std::uint64_t functional_lifetime_rounds = 0;
  /// Rounds elapsed before the survivors disconnect or shrink to one node.
  std::uint64_t network_lifetime_rounds = 0;
  std::uint64_t reconstructions = 0;
  /// One aggregated packet per fully successful round.
  std::uint64_t packets_delivered = 0;
  Termination termination = Termination::max_rounds;
  /// Sum of every round and rebuild charge.
  Energy energy_charged = 0.0;
  /// Round at which each dead node died.
  std::map<NodeId, std::uint64_t> deaths;
  /// Column order of energy_timeline rows (ascending id).
  std::vector<NodeId> timeline_nodes;
  /// Row r holds remaining energies after round r; row 0 is the initial state.
  std::vector<std::vector<Energy>> energy_timeline;

  bool operator==(const SimReport&) const = default;
};

/// Per-round drain of every node under tree `t`.
inline std::map<NodeId, Energy> round_costs(const AggregationTree& t, const SimConfig& cfg) {
  std::map<NodeId, Energy> cost;
  for (NodeId id : t.nodes()) cost[id] = cfg.tx_cost;
  for (const auto& [parent, kids] : t.children()) {
    const auto c = static_cast<Energy>(kids.size());
    cost[parent] = c * cfg.rx_cost + c * cfg.agg_cost + cfg.tx_cost;
  }
  return cost;
}

inline SimReport run(const SensorGraph& g, const SimConfig& cfg) {
  validate(cfg);
  if (g.empty() || !is_connected(g)) throw NotConnectedError();

  SimReport report;
  report.strategy = cfg.strategy;
  report.seed = cfg.seed;
  report.timeline_nodes = g.node_ids();

  std::map<NodeId, Energy> energy = g.energies();
  auto snapshot = [&] {
    if (!cfg.record_timeline) return;
    std::vector<Energy> row;
    row.reserve(energy.size());
    for (const auto& [id, e] : energy) row.push_back(e);
    report.energy_timeline.push_back(std::move(row));
  };
  snapshot();

  SensorGraph alive = g;
  AggregationTree tree = build(alive, cfg.strategy).tree;
  bool first_death_seen = false;
  bool stopped = false;

  for (std::uint64_t round = 1; round <= cfg.max_rounds; ++round) {
    const auto cost = round_costs(tree, cfg);
    std::set<NodeId> dying;
    for (const auto& [id, c] : cost) {
      if (energy[id] < c) dying.insert(id);
    }

    if (dying.empty()) {
      for (const auto& [id, c] : cost) {
        energy[id] -= c;
        report.energy_charged += c;
      }
      ++report.packets_delivered;
      snapshot();
      continue;
    }

    if (!first_death_seen) {
      first_death_seen = true;
      report.functional_lifetime_rounds = round - 1;
    }
    // Survivors that cannot pay for the rebuild die with the others.
    for (NodeId id : alive.node_ids()) {
      if (!dying.contains(id) && energy[id] < cfg.rebuild_cost) dying.insert(id);
    }
    for (NodeId id : dying) {
      alive.remove_node(id);
      report.deaths[id] = round;
    }
    for (NodeId id : alive.node_ids()) {
      energy[id] -= cfg.rebuild_cost;
      report.energy_charged += cfg.rebuild_cost;
    }
    snapshot();

    if (alive.node_count() <= 1 || !is_connected(alive)) {
      report.termination = alive.empty()              ? Termination::no_survivors
                           : alive.node_count() == 1 ? Termination::single_survivor
                                                     : Termination::disconnected;
      report.network_lifetime_rounds = round - 1;
      stopped = true;
      break;
    }
    for (NodeId id : alive.node_ids()) alive.set_energy(id, energy[id]);
    tree = build(alive, cfg.strategy).tree;
    ++report.reconstructions;
  }

  if (!first_death_seen) report.functional_lifetime_rounds = cfg.max_rounds;
  if (!stopped) report.network_lifetime_rounds = cfg.max_rounds;
  return report;
}

}  // namespace clmt
