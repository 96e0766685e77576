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

#include <gtest/gtest.h>

#include <sstream>

#include "clmt/experiment.hpp"
#include "support/test_support.hpp"

namespace clmt::testing {
namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.instances = 10;
  c.min_nodes = c.max_nodes = 6;
  c.radius = 0.6;
  c.seed = 42;
  return c;
}

TEST(Generator, DeterministicUnderSeed) {
  const auto c = small_config();
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(generate_instance(c, i).graph, generate_instance(c, i).graph);
  }
  EXPECT_NE(generate_instance(c, 0).graph, generate_instance(c, 1).graph);
}

TEST(Generator, LargeRadiusGivesCompleteGraphs) {
  std::mt19937_64 rng(3);
  GeometricGraphParams p;
  p.nodes = 7;
  p.radius = std::sqrt(2.0);
  for (int i = 0; i < 20; ++i) {
    const auto gen = random_geometric_graph(p, rng);
    EXPECT_EQ(gen.graph.edge_count(), 21u);
    EXPECT_EQ(gen.redraws, 0u);
  }
}

TEST(Generator, SingleNode) {
  std::mt19937_64 rng(3);
  GeometricGraphParams p;
  p.nodes = 1;
  const auto gen = random_geometric_graph(p, rng);
  EXPECT_EQ(gen.graph.node_count(), 1u);
  EXPECT_EQ(gen.graph.edge_count(), 0u);
}

TEST(Generator, EnergiesInRangeAndSnapped) {
  std::mt19937_64 rng(5);
  GeometricGraphParams p;
  p.nodes = 8;
  p.radius = 2.0;
  p.energy_min = 2.0;
  p.energy_max = 5.0;
  p.energy_resolution = 0.5;
  for (int i = 0; i < 20; ++i) {
    for (const auto& [id, e] : random_geometric_graph(p, rng).graph.energies()) {
      EXPECT_GE(e, 2.0);
      EXPECT_LE(e, 5.0);
      EXPECT_EQ(std::fmod(e - 2.0, 0.5), 0.0);
    }
  }
}

TEST(Generator, GivesUpOnTinyRadius) {
  std::mt19937_64 rng(7);
  GeometricGraphParams p;
  p.nodes = 30;
  p.radius = 1e-6;
  EXPECT_THROW(random_geometric_graph(p, rng), GenerationError);
}

TEST(Comparison, OracleDominatesEveryRow) {
  const auto rows = run_comparison(small_config());
  ASSERT_EQ(rows.size(), 10u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.oracle.has_value());
    EXPECT_EQ(r.nodes, 6u);
    for (const auto& [algo, te] : r.tree_energy) EXPECT_LE(te, *r.oracle) << to_string(algo);
  }
}

TEST(Comparison, CompleteGraphsNeedNoRedraws) {
  auto c = small_config();
  c.min_nodes = c.max_nodes = 4;
  c.radius = 2.0;
  for (const auto& r : run_comparison(c)) {
    EXPECT_EQ(r.redraws, 0u);
    EXPECT_EQ(r.edges, 6u);
  }
}

TEST(Comparison, WorkerCountDoesNotChangeOutput) {
  auto c = small_config();
  c.instances = 24;
  c.min_nodes = 3;
  c.max_nodes = 8;
  const std::string serial = comparison_csv(run_comparison(c), c.strategies);
  c.jobs = 4;
  EXPECT_EQ(comparison_csv(run_comparison(c), c.strategies), serial);
}

TEST(Comparison, OracleOmittedAboveCap) {
  auto c = small_config();
  c.instances = 2;
  c.oracle_limits.max_nodes = 5;
  const auto rows = run_comparison(c);
  for (const auto& r : rows) EXPECT_FALSE(r.oracle.has_value());
  const std::string csv = comparison_csv(rows, c.strategies);
  std::istringstream lines(csv);
  std::string header, row;
  std::getline(lines, header);
  EXPECT_EQ(header,
            "instance,nodes,edges,redraws,tree_energy_clmt,tree_energy_espan,tree_energy_spanning,"
            "oracle_optimum,lifetime_clmt,lifetime_espan,lifetime_spanning");
  std::getline(lines, row);
  EXPECT_NE(row.find(",,"), std::string::npos);  // empty oracle cell
}

TEST(Comparison, ConfigErrors) {
  auto c = small_config();
  c.strategies.clear();
  EXPECT_THROW(run_comparison(c), ConfigError);
  c = small_config();
  c.radius = 0.0;
  EXPECT_THROW(run_comparison(c), ConfigError);
  c = small_config();
  c.min_nodes = 7;
  c.max_nodes = 6;
  EXPECT_THROW(run_comparison(c), ConfigError);
  c = small_config();
  c.strategies = {Algorithm::clmt, Algorithm::clmt};
  EXPECT_THROW(run_comparison(c), ConfigError);
}

}  // namespace
}  // namespace clmt::testing
