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

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "clmt/graph.hpp"

namespace clmt {

/// Rooted spanning tree stored as child -> parent pointers. The root has no
/// entry in the parent map.
class AggregationTree {
 public:
  explicit AggregationTree(NodeId root, std::map<NodeId, NodeId> parent = {})
      : root_(root), parent_(std::move(parent)) {}

  [[nodiscard]] NodeId root() const noexcept { return root_; }
  [[nodiscard]] const std::map<NodeId, NodeId>& parents() const noexcept { return parent_; }

  [[nodiscard]] std::optional<NodeId> parent_of(NodeId id) const {
    auto it = parent_.find(id);
    if (it == parent_.end()) return std::nullopt;
    return it->second;
  }

  /// Root plus every child key, ascending.
  [[nodiscard]] std::vector<NodeId> nodes() const {
    std::set<NodeId> all{root_};
    for (const auto& [child, parent] : parent_) all.insert(child);
    return {all.begin(), all.end()};
  }

  [[nodiscard]] std::size_t size() const { return nodes().size(); }

  [[nodiscard]] std::map<NodeId, std::vector<NodeId>> children() const {
    std::map<NodeId, std::vector<NodeId>> out;
    for (const auto& [child, parent] : parent_) out[parent].push_back(child);
    return out;
  }

  [[nodiscard]] std::size_t child_count(NodeId id) const {
    return static_cast<std::size_t>(std::count_if(
        parent_.begin(), parent_.end(), [&](const auto& kv) { return kv.second == id; }));
  }

  [[nodiscard]] bool is_leaf(NodeId id) const { return child_count(id) == 0; }

  [[nodiscard]] std::vector<NodeId> leaves() const {
    const auto kids = children();
    std::vector<NodeId> out;
    for (NodeId id : nodes()) {
      if (!kids.contains(id)) out.push_back(id);
    }
    return out;
  }

  bool operator==(const AggregationTree&) const = default;

 private:
  NodeId root_;
  std::map<NodeId, NodeId> parent_;
};

/// Leaf-to-root path, leaf first.
struct Branch {
  NodeId leaf;
  std::vector<NodeId> path;
};

struct ValidationReport {
  std::vector<std::string> reasons;

  [[nodiscard]] bool valid() const noexcept { return reasons.empty(); }
  explicit operator bool() const noexcept { return valid(); }
};

/// Checks that `t` is a spanning, acyclic, single-rooted tree over `g` whose
/// parent links are all edges of `g`.
inline ValidationReport validate(const AggregationTree& t, const SensorGraph& g) {
  ValidationReport report;
  auto fail = [&](std::string why) { report.reasons.push_back(std::move(why)); };

  if (!g.contains(t.root())) fail("root " + to_string(t.root()) + " not in graph");
  if (t.parents().contains(t.root())) fail("root " + to_string(t.root()) + " has a parent");

  for (const auto& [child, parent] : t.parents()) {
    if (!g.contains(child)) fail("node " + to_string(child) + " not in graph");
    if (!g.contains(parent)) fail("parent " + to_string(parent) + " not in graph");
    if (child == parent) fail("node " + to_string(child) + " is its own parent");
    if (g.contains(child) && g.contains(parent) && !g.has_edge(child, parent)) {
      fail("link " + to_string(child) + "->" + to_string(parent) + " not in graph");
    }
  }

  for (NodeId id : g.node_ids()) {
    if (id != t.root() && !t.parents().contains(id)) {
      fail("node " + to_string(id) + " not spanned");
    }
  }

  // Every walk must reach the root within |parents| steps.
  const std::size_t bound = t.parents().size();
  for (const auto& [start, unused] : t.parents()) {
    NodeId cur = start;
    std::size_t steps = 0;
    while (cur != t.root() && steps <= bound) {
      auto p = t.parent_of(cur);
      if (!p) break;
      cur = *p;
      ++steps;
    }
    if (cur != t.root()) {
      fail("walk from " + to_string(start) + " does not reach the root");
    }
  }
  return report;
}

/// Nodes that are someone's parent. The root is included iff it has children.
inline std::set<NodeId> non_leaf_nodes(const AggregationTree& t) {
  std::set<NodeId> out;
  for (const auto& [child, parent] : t.parents()) out.insert(parent);
  return out;
}

inline Branch branch(const AggregationTree& t, NodeId leaf) {
  Branch b{leaf, {leaf}};
  NodeId cur = leaf;
  while (auto p = t.parent_of(cur)) {
    if (b.path.size() > t.parents().size()) {
      throw ContractViolation("branch: parent pointers contain a cycle");
    }
    cur = *p;
    b.path.push_back(cur);
  }
  if (cur != t.root()) throw ContractViolation("branch: walk ends away from the root");
  return b;
}

/// Minimum energy over a branch, excluding the leaf. A single-node tree's
/// only branch is its root, whose own energy is returned.
inline Energy branch_energy(const AggregationTree& t, const SensorGraph& g, NodeId leaf) {
  if (!g.contains(leaf)) throw InvalidNodeError("unknown node " + to_string(leaf));
  if (!t.is_leaf(leaf)) {
    throw ContractViolation("branch_energy: node " + to_string(leaf) + " is not a leaf");
  }
  const Branch b = branch(t, leaf);
  if (b.path.size() == 1) return g.energy(leaf);
  Energy lowest = std::numeric_limits<Energy>::infinity();
  for (auto it = b.path.begin() + 1; it != b.path.end(); ++it) {
    lowest = std::min(lowest, g.energy(*it));
  }
  return lowest;
}

/// Minimum residual energy over the non-leaf nodes (root included when it has
/// children). A single-node tree has its root's energy.
inline Energy tree_energy(const AggregationTree& t, const SensorGraph& g) {
  if (auto report = validate(t, g); !report) {
    throw ContractViolation("tree_energy: invalid tree: " + report.reasons.front());
  }
  const auto internal = non_leaf_nodes(t);
  if (internal.empty()) return g.energy(t.root());
  Energy lowest = std::numeric_limits<Energy>::infinity();
  for (NodeId id : internal) lowest = std::min(lowest, g.energy(id));
  return lowest;
}

/// How a shortest-path tree picks among equally close parent candidates.
enum class ParentPreference {
  highest_energy,  ///< more energy first, then lower id
  lowest_id,       ///< ignore energy
};

/// Breadth-first (unit weight Dijkstra) tree rooted at `root`. Each node's
/// parent is one of its neighbors exactly one hop closer to the root.
inline AggregationTree shortest_path_tree(const SensorGraph& g, NodeId root,
                                          ParentPreference pref = ParentPreference::highest_energy) {
  const auto dist = hop_distances(g, root);
  if (dist.size() != g.node_count()) throw NotConnectedError();

  std::map<NodeId, NodeId> parent;
  for (const auto& [id, d] : dist) {
    if (id == root) continue;
    std::optional<NodeId> best;
    for (NodeId n : g.neighbors(id)) {
      if (dist.at(n) + 1 != d) continue;
      if (!best) {
        best = n;
      } else if (pref == ParentPreference::highest_energy ? ranks_higher(g, n, *best)
                                                          : n < *best) {
        best = n;
      }
    }
    parent.emplace(id, *best);
  }
  return AggregationTree(root, std::move(parent));
}

}  // namespace clmt
