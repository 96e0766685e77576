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
 *  \brief Aggregation-tree builders: CLMT, E-Span and the conventional
 *         shortest-path spanning tree.
 *
 *  CLMT sweeps the nodes in ascending energy order. Each node that has a
 *  strictly more energetic neighbor drops all of its links except the one to
 *  that neighbor. If the drop disconnects the working graph, the node must
 *  relay for someone: it is the bottleneck, its links come back and the tree
 *  is rooted there with the bottleneck's energy as tree energy. Drops that
 *  keep the graph connected persist for the rest of the sweep. A sweep that
 *  finds no bottleneck roots the tree at the most energetic node.
 */

#include <algorithm>
#include <optional>
#include <string_view>
#include <vector>

#include "clmt/graph.hpp"
#include "clmt/tree.hpp"

namespace clmt {

enum class Algorithm { clmt, espan, spanning };

constexpr std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::clmt: return "clmt";
    case Algorithm::espan: return "espan";
    case Algorithm::spanning: return "spanning";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (Algorithm a : {Algorithm::clmt, Algorithm::espan, Algorithm::spanning}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

/// One tested node of the bottleneck sweep. `keep` is empty when the node has
/// no strictly more energetic neighbor and was skipped with its links intact.
struct SweepStep {
  NodeId node;
  std::optional<NodeId> keep;
  std::vector<Edge> removed;
  bool disconnected = false;

  bool operator==(const SweepStep&) const = default;
};

struct BottleneckSearch {
  std::optional<NodeId> bottleneck;
  /// Working graph when the sweep stopped; the bottleneck's links restored.
  SensorGraph pruned;
  /// Sweep order (energy ascending, id ascending).
  std::vector<NodeId> order;
  std::vector<SweepStep> trace;
};

inline BottleneckSearch find_bottleneck(const SensorGraph& g) {
  if (g.empty() || !is_connected(g)) throw NotConnectedError();

  BottleneckSearch out{std::nullopt, g, nodes_ascending_energy(g), {}};
  SensorGraph& work = out.pruned;
  for (NodeId v : out.order) {
    SweepStep step{v, highest_energy_neighbor(work, v), {}, false};
    if (!step.keep) {
      out.trace.push_back(std::move(step));
      continue;
    }
    step.removed = remove_links_except(work, v, *step.keep);
    if (!is_connected(work)) {
      restore_links(work, step.removed);
      step.disconnected = true;
      out.bottleneck = v;
      out.trace.push_back(std::move(step));
      break;
    }
    out.trace.push_back(std::move(step));
  }
  return out;
}

struct BuildOutcome {
  Algorithm algorithm = Algorithm::clmt;
  AggregationTree tree{NodeId{}};
  Energy tree_energy = 0.0;
  std::optional<NodeId> bottleneck;
  std::vector<SweepStep> trace;

  bool operator==(const BuildOutcome&) const = default;
};

/// Nodes that may root the CLMT without changing its energy: the bottleneck
/// and every node after it in sweep order, or only the most energetic node
/// (lowest id among equals) when no bottleneck exists.
inline std::vector<NodeId> clmt_root_candidates(const BottleneckSearch& search) {
  if (!search.bottleneck) return {highest_energy_node(search.pruned)};
  auto it = std::find(search.order.begin(), search.order.end(), *search.bottleneck);
  return {it, search.order.end()};
}

/// `root` overrides the default root. With a bottleneck it must be one of
/// clmt_root_candidates(); without one any node is accepted and the tree
/// energy is recomputed for it.
inline BuildOutcome build_clmt(const SensorGraph& g, std::optional<NodeId> root = std::nullopt) {
  if (root && !g.contains(*root)) throw InvalidNodeError("unknown root " + to_string(*root));
  BottleneckSearch search = find_bottleneck(g);

  BuildOutcome out;
  out.algorithm = Algorithm::clmt;
  out.bottleneck = search.bottleneck;
  out.trace = std::move(search.trace);

  if (search.bottleneck) {
    NodeId chosen = root.value_or(*search.bottleneck);
    const auto candidates = clmt_root_candidates(search);
    if (std::find(candidates.begin(), candidates.end(), chosen) == candidates.end()) {
      throw ContractViolation("root " + to_string(chosen) +
                              " is not in the bottleneck's remaining set");
    }
    out.tree = shortest_path_tree(search.pruned, chosen);
    out.tree_energy = g.energy(*search.bottleneck);
  } else {
    out.tree = shortest_path_tree(search.pruned, root.value_or(highest_energy_node(g)));
    out.tree_energy = tree_energy(out.tree, g);
  }
  return out;
}

/// Conventional shortest-path tree; equal-distance parents go to the lowest id.
inline BuildOutcome build_spanning(const SensorGraph& g, NodeId root) {
  if (!g.contains(root)) throw InvalidNodeError("unknown root " + to_string(root));
  if (!is_connected(g)) throw NotConnectedError();
  BuildOutcome out;
  out.algorithm = Algorithm::spanning;
  out.tree = shortest_path_tree(g, root, ParentPreference::lowest_id);
  out.tree_energy = tree_energy(out.tree, g);
  return out;
}

/// E-Span: rooted at the most energetic node; each node's parent is its most
/// energetic neighbor one hop closer to the root.
inline BuildOutcome build_espan(const SensorGraph& g) {
  if (g.empty() || !is_connected(g)) throw NotConnectedError();
  BuildOutcome out;
  out.algorithm = Algorithm::espan;
  out.tree = shortest_path_tree(g, highest_energy_node(g), ParentPreference::highest_energy);
  out.tree_energy = tree_energy(out.tree, g);
  return out;
}

/// Dispatches on `algo`. For `spanning` the default root is the lowest id.
inline BuildOutcome build(const SensorGraph& g, Algorithm algo,
                          std::optional<NodeId> root = std::nullopt) {
  switch (algo) {
    case Algorithm::clmt:
      return build_clmt(g, root);
    case Algorithm::espan:
      if (root && *root != highest_energy_node(g)) {
        throw ContractViolation("espan always roots at the most energetic node");
      }
      return build_espan(g);
    case Algorithm::spanning:
      if (g.empty()) throw NotConnectedError();
      return build_spanning(g, root.value_or(g.node_ids().front()));
  }
  throw ContractViolation("unknown algorithm");
}

}  // namespace clmt
