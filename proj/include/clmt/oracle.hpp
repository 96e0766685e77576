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

// Brute-force ground truth for small instances.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <vector>

#include "clmt/graph.hpp"
#include "clmt/tree.hpp"

namespace clmt {

struct EnumerationLimits {
  std::size_t max_nodes = 9;
  std::size_t max_trees = 1'000'000;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Include/exclude recursion over the edge list. An edge is included only if it
// joins two components, and excluded only if the chosen edges plus the edges
// still ahead can span the graph, so every leaf of the recursion is a tree.
class SpanningTreeWalker {
 public:
  SpanningTreeWalker(const SensorGraph& g, const EnumerationLimits& limits,
                     std::function<void(std::span<const Edge>)> visit)
      : edges_(g.edges()), limits_(limits), visit_(std::move(visit)) {
    std::size_t next = 0;
    for (NodeId id : g.node_ids()) index_[id] = next++;
    n_ = next;
  }

  std::size_t run() {
    chosen_.clear();
    recurse(0);
    return count_;
  }

 private:
  bool spannable(std::size_t from) const {
    DisjointSets sets(n_);
    std::size_t merged = 0;
    for (const Edge& e : chosen_) merged += sets.unite(index_.at(e.u), index_.at(e.v));
    for (std::size_t i = from; i < edges_.size() && merged + 1 < n_; ++i) {
      merged += sets.unite(index_.at(edges_[i].u), index_.at(edges_[i].v));
    }
    return merged + 1 == n_;
  }

  bool joins_components(const Edge& e) const {
    DisjointSets sets(n_);
    for (const Edge& c : chosen_) sets.unite(index_.at(c.u), index_.at(c.v));
    return sets.find(index_.at(e.u)) != sets.find(index_.at(e.v));
  }

  void recurse(std::size_t i) {
    if (chosen_.size() + 1 == n_) {
      if (++count_ > limits_.max_trees) {
        throw SizeLimitError("more than " + std::to_string(limits_.max_trees) +
                             " spanning trees");
      }
      visit_(chosen_);
      return;
    }
    if (i == edges_.size()) return;
    if (joins_components(edges_[i])) {
      chosen_.push_back(edges_[i]);
      recurse(i + 1);
      chosen_.pop_back();
    }
    if (spannable(i + 1)) recurse(i + 1);
  }

  std::vector<Edge> edges_;
  std::map<NodeId, std::size_t> index_;
  std::size_t n_ = 0;
  EnumerationLimits limits_;
  std::function<void(std::span<const Edge>)> visit_;
  std::vector<Edge> chosen_;
  std::size_t count_ = 0;
};

}  // namespace detail

/// Calls `visit(std::span<const Edge>)` once per spanning tree of `g`
/// (undirected edge sets, edges ascending). Returns the number of trees.
/// Throws SizeLimitError when `g` has more than `limits.max_nodes` nodes or
/// more than `limits.max_trees` spanning trees.
template <class Visitor>
std::size_t for_each_spanning_tree(const SensorGraph& g, Visitor&& visit,
                                   const EnumerationLimits& limits = {}) {
  if (g.node_count() > limits.max_nodes) {
    throw SizeLimitError(std::to_string(g.node_count()) + " nodes exceeds the enumeration cap of " +
                         std::to_string(limits.max_nodes));
  }
  if (g.empty() || !is_connected(g)) throw NotConnectedError();
  detail::SpanningTreeWalker walker(
      g, limits, [&](std::span<const Edge> edges) { std::invoke(visit, edges); });
  return walker.run();
}

inline std::vector<std::vector<Edge>> enumerate_spanning_trees(const SensorGraph& g,
                                                                const EnumerationLimits& limits = {}) {
  std::vector<std::vector<Edge>> out;
  for_each_spanning_tree(
      g, [&](std::span<const Edge> edges) { out.emplace_back(edges.begin(), edges.end()); },
      limits);
  return out;
}

/// Orients an undirected spanning tree towards `root`.
inline AggregationTree root_tree(std::span<const Edge> edges, NodeId root) {
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::map<NodeId, NodeId> parent;
  std::vector<NodeId> stack{root};
  std::set<NodeId> seen{root};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId n : adj[v]) {
      if (seen.insert(n).second) {
        parent.emplace(n, v);
        stack.push_back(n);
      }
    }
  }
  if (seen.size() != adj.size() && !adj.empty()) {
    throw ContractViolation("root_tree: edges do not form a tree containing the root");
  }
  return AggregationTree(root, std::move(parent));
}

struct OracleResult {
  Energy optimum = 0.0;
  AggregationTree witness{NodeId{}};
  std::size_t trees_examined = 0;
};

/// Maximum tree energy over every spanning tree and every root.
///
/// The root choice is folded in per tree: nodes of degree >= 2 are internal
/// under any root, and the root adds itself to the internal set. Rooting at
/// an already-internal node is therefore never worse; with two nodes the more
/// energetic one is the better root.
inline OracleResult optimal_tree_energy(const SensorGraph& g, const EnumerationLimits& limits = {}) {
  OracleResult best;
  bool have = false;
  best.trees_examined = for_each_spanning_tree(
      g,
      [&](std::span<const Edge> edges) {
        std::map<NodeId, std::size_t> degree;
        for (const Edge& e : edges) {
          ++degree[e.u];
          ++degree[e.v];
        }
        Energy value = std::numeric_limits<Energy>::infinity();
        std::optional<NodeId> root;
        for (const auto& [id, d] : degree) {
          if (d < 2) continue;
          value = std::min(value, g.energy(id));
          if (!root) root = id;
        }
        if (!root) {
          // One or two nodes: no node is forced internal.
          root = highest_energy_node(g);
          value = g.energy(*root);
        }
        if (!have || value > best.optimum) {
          have = true;
          best.optimum = value;
          best.witness = root_tree(edges, *root);
        }
      },
      limits);
  return best;
}

/// Articulation points (iterative Hopcroft-Tarjan low-link).
inline std::set<NodeId> cut_vertices(const SensorGraph& g) {
  std::set<NodeId> cuts;
  std::map<NodeId, std::size_t> depth;
  std::map<NodeId, std::size_t> low;

  struct Frame {
    NodeId node;
    std::optional<NodeId> parent;
    std::vector<NodeId> adj;
    std::size_t next = 0;
    std::size_t children = 0;
  };

  for (NodeId start : g.node_ids()) {
    if (depth.contains(start)) continue;
    std::vector<Frame> stack;
    depth[start] = low[start] = 0;
    stack.push_back({start, std::nullopt, neighbors(g, start)});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < f.adj.size()) {
        const NodeId n = f.adj[f.next++];
        if (f.parent && n == *f.parent) continue;
        if (auto it = depth.find(n); it != depth.end()) {
          low[f.node] = std::min(low[f.node], it->second);
          continue;
        }
        depth[n] = low[n] = depth[f.node] + 1;
        ++f.children;
        const NodeId parent = f.node;
        stack.push_back({n, parent, neighbors(g, n)});
        continue;
      }
      const Frame done = std::move(stack.back());
      stack.pop_back();
      if (stack.empty()) {
        if (done.children > 1) cuts.insert(done.node);
        continue;
      }
      Frame& up = stack.back();
      low[up.node] = std::min(low[up.node], low[done.node]);
      if (up.parent && low[done.node] >= depth[up.node]) cuts.insert(up.node);
    }
  }
  return cuts;
}

}  // namespace clmt
