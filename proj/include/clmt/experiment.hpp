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

// Random geometric instances and the batch strategy comparison.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "clmt/builders.hpp"
#include "clmt/graph.hpp"
#include "clmt/lifetime_sim.hpp"
#include "clmt/oracle.hpp"
#include "clmt/topology_io.hpp"

namespace clmt {

struct GeometricGraphParams {
  std::size_t nodes = 6;
  /// Link range in the unit square; >= sqrt(2) gives a complete graph.
  double radius = 0.5;
  Energy energy_min = 1.0;
  Energy energy_max = 10.0;
  /// Energies snap to energy_min + k * resolution when > 0.
  Energy energy_resolution = 0.0;
  std::size_t max_redraws = 1000;
};

struct GeneratedGraph {
  SensorGraph graph;
  /// Disconnected samples thrown away before this one.
  std::size_t redraws = 0;
};

/// Unit-square random geometric graph with ids 1..n. Disconnected samples
/// are redrawn; `max_redraws` consecutive failures raise GenerationError.
template <class Rng>
GeneratedGraph random_geometric_graph(const GeometricGraphParams& p, Rng& rng) {
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::uniform_real_distribution<double> energy(p.energy_min, p.energy_max);
  for (std::size_t attempt = 0; attempt <= p.max_redraws; ++attempt) {
    SensorGraph g;
    std::vector<std::pair<double, double>> pos;
    for (std::uint32_t i = 1; i <= p.nodes; ++i) {
      pos.emplace_back(coord(rng), coord(rng));
      Energy e = p.energy_min == p.energy_max ? p.energy_min : energy(rng);
      if (p.energy_resolution > 0.0) {
        e = p.energy_min + std::round((e - p.energy_min) / p.energy_resolution) * p.energy_resolution;
        e = std::min(e, p.energy_max);
      }
      g.add_node(NodeId{i}, e);
    }
    for (std::size_t a = 0; a < pos.size(); ++a) {
      for (std::size_t b = a + 1; b < pos.size(); ++b) {
        const double d = std::hypot(pos[a].first - pos[b].first, pos[a].second - pos[b].second);
        if (d <= p.radius) {
          g.add_edge(NodeId{static_cast<std::uint32_t>(a + 1)},
                     NodeId{static_cast<std::uint32_t>(b + 1)});
        }
      }
    }
    if (is_connected(g)) return {std::move(g), attempt};
  }
  throw GenerationError("no connected sample after " + std::to_string(p.max_redraws) +
                        " redraws (radius " + std::to_string(p.radius) + " too small?)");
}

struct ExperimentConfig {
  std::size_t instances = 10;
  std::size_t min_nodes = 6;
  std::size_t max_nodes = 6;
  double radius = 0.5;
  Energy energy_min = 1.0;
  Energy energy_max = 10.0;
  Energy energy_resolution = 0.0;
  std::uint64_t seed = 42;
  std::vector<Algorithm> strategies{Algorithm::clmt, Algorithm::espan, Algorithm::spanning};
  SimConfig sim{};
  EnumerationLimits oracle_limits{};
  unsigned jobs = 1;
};

inline void validate(const ExperimentConfig& c) {
  if (c.instances < 1) throw ConfigError("instance count must be >= 1");
  if (c.min_nodes < 1 || c.min_nodes > c.max_nodes) throw ConfigError("node-count range is empty");
  if (!(c.radius > 0.0) || !std::isfinite(c.radius)) throw ConfigError("radius must be > 0");
  if (!is_valid_energy(c.energy_min) || !is_valid_energy(c.energy_max) ||
      c.energy_min > c.energy_max) {
    throw ConfigError("energy range is empty or negative");
  }
  if (!is_valid_energy(c.energy_resolution)) throw ConfigError("energy resolution must be >= 0");
  if (c.strategies.empty()) throw ConfigError("no strategies to compare");
  if (std::set<Algorithm>(c.strategies.begin(), c.strategies.end()).size() != c.strategies.size()) {
    throw ConfigError("strategy listed twice");
  }
  if (c.jobs < 1) throw ConfigError("jobs must be >= 1");
  validate(c.sim);
}

/// Independent generator per instance, so instance k is the same whatever
/// the worker count.
inline std::mt19937_64 instance_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

inline GeneratedGraph generate_instance(const ExperimentConfig& c, std::size_t index) {
  auto rng = instance_rng(c.seed, index);
  std::uniform_int_distribution<std::size_t> count(c.min_nodes, c.max_nodes);
  GeometricGraphParams p;
  p.nodes = count(rng);
  p.radius = c.radius;
  p.energy_min = c.energy_min;
  p.energy_max = c.energy_max;
  p.energy_resolution = c.energy_resolution;
  return random_geometric_graph(p, rng);
}

struct ComparisonRow {
  std::size_t instance = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t redraws = 0;
  std::map<Algorithm, Energy> tree_energy;
  /// Empty when the instance is above the enumeration cap.
  std::optional<Energy> oracle;
  std::map<Algorithm, std::uint64_t> functional_lifetime;
};

inline ComparisonRow compare_instance(const ExperimentConfig& c, std::size_t index) {
  GeneratedGraph gen = generate_instance(c, index);
  const SensorGraph& g = gen.graph;
  ComparisonRow row;
  row.instance = index;
  row.nodes = g.node_count();
  row.edges = g.edge_count();
  row.redraws = gen.redraws;
  for (Algorithm a : c.strategies) {
    row.tree_energy[a] = build(g, a).tree_energy;
    SimConfig sim = c.sim;
    sim.strategy = a;
    sim.record_timeline = false;
    row.functional_lifetime[a] = run(g, sim).functional_lifetime_rounds;
  }
  if (g.node_count() <= c.oracle_limits.max_nodes) {
    try {
      row.oracle = optimal_tree_energy(g, c.oracle_limits).optimum;
    } catch (const SizeLimitError&) {
      row.oracle.reset();
    }
  }
  return row;
}

/// Rows come back ordered by instance id regardless of `jobs`.
inline std::vector<ComparisonRow> run_comparison(const ExperimentConfig& c) {
  validate(c);
  std::vector<ComparisonRow> rows(c.instances);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(c.jobs);
  auto worker = [&](unsigned slot) {
    try {
      for (std::size_t i = next++; i < c.instances; i = next++) rows[i] = compare_instance(c, i);
    } catch (...) {
      failures[slot] = std::current_exception();
      next = c.instances;
    }
  };
  if (c.jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < c.jobs; ++j) pool.emplace_back(worker, j);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return rows;
}

inline std::string comparison_csv(const std::vector<ComparisonRow>& rows,
                                  const std::vector<Algorithm>& strategies) {
  std::string out = "instance,nodes,edges,redraws";
  for (Algorithm a : strategies) out += ",tree_energy_" + std::string(to_string(a));
  out += ",oracle_optimum";
  for (Algorithm a : strategies) out += ",lifetime_" + std::string(to_string(a));
  out += "\n";
  for (const ComparisonRow& r : rows) {
    out += std::to_string(r.instance) + "," + std::to_string(r.nodes) + "," +
           std::to_string(r.edges) + "," + std::to_string(r.redraws);
    for (Algorithm a : strategies) out += "," + format_energy(r.tree_energy.at(a));
    out += "," + (r.oracle ? format_energy(*r.oracle) : std::string{});
    for (Algorithm a : strategies) out += "," + std::to_string(r.functional_lifetime.at(a));
    out += "\n";
  }
  return out;
}

}  // namespace clmt
