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
 *  \brief Undirected energy-annotated sensor graph.
 *
 *  Nodes carry their residual energy. The CLMT sweep mutates a working copy
 *  (link removal and restoration), so the graph exposes those primitives
 *  alongside ordinary queries.
 */

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clmt/error.hpp"

namespace clmt {

/// Residual energy in joules. Always finite and non-negative inside a graph.
using Energy = double;

struct NodeId {
  std::uint32_t value{};

  constexpr auto operator<=>(const NodeId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }
inline std::string to_string(NodeId id) { return std::to_string(id.value); }

/// Unordered link, stored with `u < v`.
struct Edge {
  NodeId u;
  NodeId v;

  static constexpr Edge between(NodeId a, NodeId b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
  }

  constexpr auto operator<=>(const Edge&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << e.u << "-" << e.v;
}

inline bool is_valid_energy(Energy e) noexcept { return std::isfinite(e) && e >= 0.0; }

class SensorGraph {
 public:
  SensorGraph() = default;

  void add_node(NodeId id, Energy energy) {
    if (!is_valid_energy(energy)) {
      throw ContractViolation("node " + to_string(id) + ": energy must be finite and >= 0");
    }
    if (!energy_.emplace(id, energy).second) {
      throw ContractViolation("duplicate node " + to_string(id));
    }
    adjacency_[id];
  }

  void add_edge(NodeId a, NodeId b) {
    require(a);
    require(b);
    if (a == b) throw ContractViolation("self-loop on node " + to_string(a));
    if (has_edge(a, b)) {
      throw ContractViolation("duplicate edge " + to_string(a) + "-" + to_string(b));
    }
    adjacency_[a].insert(b);
    adjacency_[b].insert(a);
  }

  /// Returns false when the edge was not present.
  bool remove_edge(NodeId a, NodeId b) {
    require(a);
    require(b);
    const bool erased = adjacency_[a].erase(b) > 0;
    adjacency_[b].erase(a);
    return erased;
  }

  /// Drops the node and all of its links.
  void remove_node(NodeId id) {
    require(id);
    for (NodeId n : adjacency_.at(id)) adjacency_[n].erase(id);
    adjacency_.erase(id);
    energy_.erase(id);
  }

  [[nodiscard]] bool contains(NodeId id) const { return energy_.contains(id); }

  [[nodiscard]] bool has_edge(NodeId a, NodeId b) const {
    auto it = adjacency_.find(a);
    return it != adjacency_.end() && it->second.contains(b);
  }

  [[nodiscard]] Energy energy(NodeId id) const {
    require(id);
    return energy_.at(id);
  }

  void set_energy(NodeId id, Energy energy) {
    require(id);
    if (!is_valid_energy(energy)) {
      throw ContractViolation("node " + to_string(id) + ": energy must be finite and >= 0");
    }
    energy_[id] = energy;
  }

  /// Neighbor set of `id`; never contains `id` itself.
  [[nodiscard]] const std::set<NodeId>& neighbors(NodeId id) const {
    require(id);
    return adjacency_.at(id);
  }

  [[nodiscard]] std::size_t degree(NodeId id) const { return neighbors(id).size(); }

  [[nodiscard]] std::size_t node_count() const noexcept { return energy_.size(); }
  [[nodiscard]] bool empty() const noexcept { return energy_.empty(); }

  [[nodiscard]] std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto& [id, adj] : adjacency_) twice += adj.size();
    return twice / 2;
  }

  /// Node ids in ascending id order.
  [[nodiscard]] std::vector<NodeId> node_ids() const {
    std::vector<NodeId> ids;
    ids.reserve(energy_.size());
    for (const auto& [id, e] : energy_) ids.push_back(id);
    return ids;
  }

  /// Edges in ascending (u, v) order.
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (const auto& [id, adj] : adjacency_) {
      for (NodeId n : adj) {
        if (id < n) out.push_back({id, n});
      }
    }
    return out;
  }

  [[nodiscard]] const std::map<NodeId, Energy>& energies() const noexcept { return energy_; }

  bool operator==(const SensorGraph&) const = default;

 private:
  void require(NodeId id) const {
    if (!contains(id)) throw InvalidNodeError("unknown node " + to_string(id));
  }

  std::map<NodeId, Energy> energy_;
  std::map<NodeId, std::set<NodeId>> adjacency_;
};

/// Hop distance from `source` to every node reachable from it.
inline std::map<NodeId, std::size_t> hop_distances(const SensorGraph& g, NodeId source) {
  std::map<NodeId, std::size_t> dist;
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId n : g.neighbors(v)) {
      if (dist.emplace(n, dist[v] + 1).second) queue.push_back(n);
    }
  }
  return dist;
}

inline bool is_connected(const SensorGraph& g) {
  if (g.empty()) throw ContractViolation("is_connected: graph has no nodes");
  return hop_distances(g, g.energies().begin()->first).size() == g.node_count();
}

inline std::vector<NodeId> neighbors(const SensorGraph& g, NodeId v) {
  const auto& adj = g.neighbors(v);
  return {adj.begin(), adj.end()};
}

/// True when `a` ranks above `b`: more energy, or equal energy and lower id.
inline bool ranks_higher(const SensorGraph& g, NodeId a, NodeId b) {
  const Energy ea = g.energy(a);
  const Energy eb = g.energy(b);
  return ea != eb ? ea > eb : a < b;
}

/// Most energetic node, lowest id among ties.
inline NodeId highest_energy_node(const SensorGraph& g) {
  if (g.empty()) throw ContractViolation("graph has no nodes");
  const auto ids = g.node_ids();
  return *std::min_element(ids.begin(), ids.end(),
                           [&](NodeId a, NodeId b) { return ranks_higher(g, a, b); });
}

/// The neighbor with maximum energy among those strictly more energetic than
/// `v`; ties go to the lowest id. Empty when no neighbor beats `v`.
inline std::optional<NodeId> highest_energy_neighbor(const SensorGraph& g, NodeId v) {
  const Energy ev = g.energy(v);
  std::optional<NodeId> best;
  for (NodeId n : g.neighbors(v)) {
    if (g.energy(n) <= ev) continue;
    if (!best || ranks_higher(g, n, *best)) best = n;
  }
  return best;
}

/// Removes every link of `v` except the one to `keep` and returns the removed
/// links in ascending order.
inline std::vector<Edge> remove_links_except(SensorGraph& g, NodeId v, NodeId keep) {
  if (!g.contains(v)) throw InvalidNodeError("unknown node " + to_string(v));
  if (!g.has_edge(v, keep)) {
    throw ContractViolation("remove_links_except: " + to_string(keep) +
                            " is not adjacent to " + to_string(v));
  }
  std::vector<Edge> removed;
  for (NodeId n : neighbors(g, v)) {
    if (n == keep) continue;
    g.remove_edge(v, n);
    removed.push_back(Edge::between(v, n));
  }
  std::sort(removed.begin(), removed.end());
  return removed;
}

/// Re-inserts links; links already present are left alone.
inline void restore_links(SensorGraph& g, std::span<const Edge> removed) {
  for (const Edge& e : removed) {
    if (!g.contains(e.u) || !g.contains(e.v)) {
      throw InvalidNodeError("restore_links: edge " + to_string(e.u) + "-" + to_string(e.v) +
                             " references a missing node");
    }
  }
  for (const Edge& e : removed) {
    if (!g.has_edge(e.u, e.v)) g.add_edge(e.u, e.v);
  }
}

/// Energy ascending, NodeId ascending among equal energies.
inline std::vector<NodeId> nodes_ascending_energy(const SensorGraph& g) {
  std::vector<NodeId> order = g.node_ids();
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return g.energy(a) < g.energy(b);
  });
  return order;
}

/// Graph induced on `keep`, energies copied.
inline SensorGraph induced_subgraph(const SensorGraph& g, const std::set<NodeId>& keep) {
  SensorGraph sub;
  for (NodeId id : keep) sub.add_node(id, g.energy(id));
  for (const Edge& e : g.edges()) {
    if (keep.contains(e.u) && keep.contains(e.v)) sub.add_edge(e.u, e.v);
  }
  return sub;
}

}  // namespace clmt
