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

// clmt: build, compare and simulate lifetime-maximizing aggregation trees.
//
// Exit codes: 0 success, 2 input/config error, 3 domain error
// (disconnected graph, generation failure), 4 internal invariant violation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clmt/clmt.hpp"

namespace {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kInputError = 2, kDomainError = 3, kInternalError = 4 };

// Raised when a result fails its own post-checks.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw clmt::ConfigError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw clmt::ConfigError("cannot write " + path);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

clmt::Algorithm algorithm_or_throw(const std::string& name) {
  auto a = clmt::parse_algorithm(name);
  if (!a) throw clmt::ConfigError("unknown algorithm '" + name + "' (expected clmt, espan or spanning)");
  return *a;
}

std::vector<clmt::Algorithm> parse_strategies(const std::string& list) {
  std::vector<clmt::Algorithm> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(algorithm_or_throw(item));
  }
  return out;
}

struct GenOptions {
  std::vector<std::size_t> nodes{6};
  double radius = 0.5;
  double energy_min = 1.0;
  double energy_max = 10.0;
  double energy_resolution = 0.0;
  std::uint64_t seed = 42;
  std::size_t count = 1;
};

void add_generation_flags(CLI::App* cmd, GenOptions& o) {
  cmd->add_option("--nodes", o.nodes, "Node count, or min and max")->expected(1, 2);
  cmd->add_option("--radius", o.radius, "Radio range in the unit square");
  cmd->add_option("--energy-min", o.energy_min, "Lowest initial energy (J)");
  cmd->add_option("--energy-max", o.energy_max, "Highest initial energy (J)");
  cmd->add_option("--energy-resolution", o.energy_resolution, "Snap energies to this grid (0 = off)");
  cmd->add_option("--seed", o.seed, "Seed of the instance stream");
  cmd->add_option("--count", o.count, "Number of instances");
}

clmt::ExperimentConfig experiment_from(const GenOptions& o) {
  clmt::ExperimentConfig c;
  c.instances = o.count;
  c.min_nodes = o.nodes.front();
  c.max_nodes = o.nodes.back();
  c.radius = o.radius;
  c.energy_min = o.energy_min;
  c.energy_max = o.energy_max;
  c.energy_resolution = o.energy_resolution;
  c.seed = o.seed;
  return c;
}

std::optional<clmt::NodeId> root_option(const std::optional<std::uint32_t>& root) {
  if (!root) return std::nullopt;
  return clmt::NodeId{*root};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lifetime-maximizing aggregation trees for sensor networks"};
  app.require_subcommand(1);

  // gen
  GenOptions gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate random geometric topologies");
  add_generation_flags(gen_cmd, gen);
  gen_cmd->add_option("--out", gen_out, "Output directory, or a .json file when --count is 1")
      ->required();

  // build
  std::string build_topology, build_algorithm = "clmt", build_out;
  std::optional<std::uint32_t> build_root;
  auto* build_cmd = app.add_subcommand("build", "Build an aggregation tree");
  build_cmd->add_option("topology", build_topology, "Topology JSON file")->required();
  build_cmd->add_option("--algorithm", build_algorithm, "clmt | espan | spanning");
  build_cmd->add_option("--root", build_root, "Root override");
  build_cmd->add_option("--out", build_out, "Write the outcome JSON here");

  // oracle
  std::string oracle_topology, oracle_out;
  clmt::EnumerationLimits limits;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum tree energy");
  oracle_cmd->add_option("topology", oracle_topology, "Topology JSON file")->required();
  oracle_cmd->add_option("--max-nodes", limits.max_nodes, "Enumeration node cap");
  oracle_cmd->add_option("--max-trees", limits.max_trees, "Enumeration tree cap");
  oracle_cmd->add_option("--out", oracle_out, "Write the oracle result JSON here");

  // compare
  GenOptions cmp;
  cmp.count = 10;
  std::string cmp_strategies = "clmt,espan,spanning", cmp_out;
  clmt::SimConfig cmp_sim;
  std::size_t cmp_cap = limits.max_nodes;
  unsigned cmp_jobs = 1;
  auto* cmp_cmd = app.add_subcommand("compare", "Compare strategies over random instances (CSV)");
  add_generation_flags(cmp_cmd, cmp);
  cmp_cmd->add_option("--strategies", cmp_strategies, "Comma-separated strategies");
  cmp_cmd->add_option("--tx", cmp_sim.tx_cost, "Transmit cost per round (J)");
  cmp_cmd->add_option("--rx", cmp_sim.rx_cost, "Receive cost per child per round (J)");
  cmp_cmd->add_option("--agg", cmp_sim.agg_cost, "Aggregation cost per child per round (J)");
  cmp_cmd->add_option("--rebuild", cmp_sim.rebuild_cost, "Reconstruction cost per survivor (J)");
  cmp_cmd->add_option("--max-rounds", cmp_sim.max_rounds, "Simulation round cap");
  cmp_cmd->add_option("--oracle-cap", cmp_cap, "Largest node count the oracle runs on");
  cmp_cmd->add_option("--jobs", cmp_jobs, "Worker threads");
  cmp_cmd->add_option("--out", cmp_out, "CSV output file (default stdout)");

  // simulate
  std::string sim_topology, sim_config, sim_out, sim_timeline;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate functional lifetime");
  sim_cmd->add_option("topology", sim_topology, "Topology JSON file")->required();
  sim_cmd->add_option("config", sim_config, "Simulation config JSON file")->required();
  sim_cmd->add_option("--out", sim_out, "Write the report JSON here");
  sim_cmd->add_option("--timeline", sim_timeline, "Write the energy timeline CSV here");

  // export-dot
  std::string dot_topology, dot_outcome, dot_algorithm, dot_out;
  std::optional<std::uint32_t> dot_root;
  auto* dot_cmd = app.add_subcommand("export-dot", "Render a topology (and tree) as Graphviz DOT");
  dot_cmd->add_option("topology", dot_topology, "Topology JSON file")->required();
  auto* outcome_opt = dot_cmd->add_option("--outcome", dot_outcome, "Tree from a build outcome file");
  dot_cmd->add_option("--algorithm", dot_algorithm, "Build the tree with this algorithm")
      ->excludes(outcome_opt);
  dot_cmd->add_option("--root", dot_root, "Root override for --algorithm");
  dot_cmd->add_option("--out", dot_out, "DOT output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*gen_cmd) {
      const auto cfg = experiment_from(gen);
      clmt::validate(cfg);
      const bool single_file = cfg.instances == 1 && fs::path(gen_out).extension() == ".json";
      for (std::size_t i = 0; i < cfg.instances; ++i) {
        const auto g = clmt::generate_instance(cfg, i);
        char name[32];
        std::snprintf(name, sizeof name, "topology_%04zu.json", i);
        const std::string path = single_file ? gen_out : (fs::path(gen_out) / name).string();
        write_file(path, clmt::write_topology(g.graph));
        std::cout << path << ": " << g.graph.node_count() << " nodes, " << g.graph.edge_count()
                  << " edges, " << g.redraws << " redraws\n";
      }
    } else if (*build_cmd) {
      const auto g = clmt::parse_topology(read_file(build_topology));
      const auto o = clmt::build(g, algorithm_or_throw(build_algorithm), root_option(build_root));
      if (!clmt::validate(o.tree, g)) throw InvariantViolation("built tree failed validation");
      if (!build_out.empty()) write_file(build_out, clmt::write_outcome(o));
      std::cout << "algorithm " << clmt::to_string(o.algorithm) << "\n"
                << "root " << o.tree.root() << "\n"
                << "tree_energy " << clmt::format_energy(o.tree_energy) << "\n"
                << "bottleneck " << (o.bottleneck ? clmt::to_string(*o.bottleneck) : "none") << "\n";
    } else if (*oracle_cmd) {
      const auto g = clmt::parse_topology(read_file(oracle_topology));
      const auto r = clmt::optimal_tree_energy(g, limits);
      if (!oracle_out.empty()) write_file(oracle_out, clmt::write_oracle_result(r));
      std::cout << "optimum " << clmt::format_energy(r.optimum) << "\n"
                << "trees_examined " << r.trees_examined << "\n"
                << "witness_root " << r.witness.root() << "\n";
    } else if (*cmp_cmd) {
      auto cfg = experiment_from(cmp);
      cfg.strategies = parse_strategies(cmp_strategies);
      cfg.sim = cmp_sim;
      cfg.oracle_limits.max_nodes = cmp_cap;
      cfg.jobs = cmp_jobs;
      clmt::validate(cfg);
      const auto rows = clmt::run_comparison(cfg);
      emit(cmp_out, clmt::comparison_csv(rows, cfg.strategies));
    } else if (*sim_cmd) {
      const auto g = clmt::parse_topology(read_file(sim_topology));
      const auto cfg = clmt::parse_sim_config(read_file(sim_config));
      const auto report = clmt::run(g, cfg);
      if (!sim_out.empty()) write_file(sim_out, clmt::write_outcome(report));
      if (!sim_timeline.empty()) write_file(sim_timeline, clmt::write_timeline_csv(report));
      std::cout << "strategy " << clmt::to_string(report.strategy) << "\n"
                << "functional_lifetime " << report.functional_lifetime_rounds << "\n"
                << "network_lifetime " << report.network_lifetime_rounds << "\n"
                << "reconstructions " << report.reconstructions << "\n"
                << "packets_delivered " << report.packets_delivered << "\n";
    } else if (*dot_cmd) {
      const auto g = clmt::parse_topology(read_file(dot_topology));
      std::optional<clmt::AggregationTree> tree;
      if (!dot_outcome.empty()) {
        tree = clmt::parse_outcome(read_file(dot_outcome)).tree;
      } else if (!dot_algorithm.empty()) {
        tree = clmt::build(g, algorithm_or_throw(dot_algorithm), root_option(dot_root)).tree;
      }
      emit(dot_out, clmt::export_dot(g, tree));
    }
  } catch (const clmt::ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return kInputError;
  } catch (const clmt::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return kInputError;
  } catch (const clmt::InvalidNodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const clmt::ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const clmt::SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const clmt::NotConnectedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const clmt::GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}
