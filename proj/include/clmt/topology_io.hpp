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
 *  \brief Topology files, result documents and DOT export.
 *
 *  Topology schema (JSON):
 *
 *      {"version": 1,
 *       "nodes": [{"id": 1, "energy": 5.0}, ...],
 *       "edges": [[1, 2], ...]}
 *
 *  "version" may be omitted and defaults to 1. Written documents have sorted
 *  keys and shortest round-trip number formatting, so equal values always
 *  serialize to identical bytes.
 */

#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "clmt/builders.hpp"
#include "clmt/graph.hpp"
#include "clmt/lifetime_sim.hpp"
#include "clmt/oracle.hpp"
#include "clmt/tree.hpp"
#include "json.hpp"

namespace clmt {

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal that parses back to `e`; integral values keep a ".0".
inline std::string format_energy(Energy e) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, e);
  std::string s(buf, end);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace io_detail {

using json = nlohmann::json;
using Kind = ParseError::Kind;

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(Kind::syntax, "byte " + std::to_string(e.byte), e.what());
  }
}

inline const json& member(const json& obj, const char* key, const std::string& at) {
  if (!obj.is_object()) throw ParseError(Kind::schema, at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(Kind::schema, at + "/" + key, "missing required field");
  }
  return *it;
}

inline NodeId as_node_id(const json& j, const std::string& at) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max()) {
    throw ParseError(Kind::schema, at, "node id must be a non-negative 32-bit integer");
  }
  return NodeId{j.get<std::uint32_t>()};
}

inline NodeId key_node_id(const std::string& key, const std::string& at) {
  std::uint32_t id = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
  if (key.empty() || ec != std::errc{} || ptr != key.data() + key.size()) {
    throw ParseError(Kind::schema, at, "key must be a node id");
  }
  return NodeId{id};
}

inline Energy as_energy(const json& j, const std::string& at) {
  if (!j.is_number()) throw ParseError(Kind::schema, at, "energy must be a number");
  const auto e = j.get<double>();
  if (e < 0.0) throw ParseError(Kind::negative_energy, at, "energy must be >= 0");
  return e;
}

inline std::uint64_t as_count(const json& j, const std::string& at) {
  if (!j.is_number_unsigned()) throw ParseError(Kind::schema, at, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

inline void check_version(const json& doc) {
  if (!doc.is_object()) throw ParseError(Kind::schema, "", "document must be an object");
  auto it = doc.find("version");
  if (it == doc.end()) return;
  if (!it->is_number_integer() || it->get<std::int64_t>() != kSchemaVersion) {
    throw ParseError(Kind::unsupported_version, "/version",
                     "unsupported schema version " + it->dump());
  }
}

inline Algorithm as_algorithm(const json& j, const std::string& at) {
  if (!j.is_string()) throw ParseError(Kind::schema, at, "expected an algorithm name");
  auto a = parse_algorithm(j.get<std::string>());
  if (!a) throw ParseError(Kind::schema, at, "unknown algorithm " + j.dump());
  return *a;
}

inline json edge_json(const Edge& e) { return json::array({e.u.value, e.v.value}); }

inline Edge as_edge(const json& j, const std::string& at) {
  if (!j.is_array() || j.size() != 2) throw ParseError(Kind::schema, at, "edge must be [id, id]");
  return Edge::between(as_node_id(j[0], at + "/0"), as_node_id(j[1], at + "/1"));
}

inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace io_detail

inline SensorGraph parse_topology(std::string_view text) {
  using namespace io_detail;
  const json doc = parse_json(text);
  check_version(doc);

  SensorGraph g;
  const json& nodes = member(doc, "nodes", "");
  if (!nodes.is_array()) throw ParseError(Kind::schema, "/nodes", "expected an array");
  if (nodes.empty()) throw ParseError(Kind::schema, "/nodes", "at least one node is required");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string at = "/nodes/" + std::to_string(i);
    const NodeId id = as_node_id(member(nodes[i], "id", at), at + "/id");
    const Energy e = as_energy(member(nodes[i], "energy", at), at + "/energy");
    if (g.contains(id)) throw ParseError(Kind::duplicate_node, at + "/id", "duplicate node id " + to_string(id));
    g.add_node(id, e);
  }

  auto edges_it = doc.find("edges");
  if (edges_it == doc.end()) return g;
  if (!edges_it->is_array()) throw ParseError(Kind::schema, "/edges", "expected an array");
  for (std::size_t i = 0; i < edges_it->size(); ++i) {
    const std::string at = "/edges/" + std::to_string(i);
    const json& pair = (*edges_it)[i];
    if (!pair.is_array() || pair.size() != 2) throw ParseError(Kind::schema, at, "edge must be [id, id]");
    const NodeId a = as_node_id(pair[0], at + "/0");
    const NodeId b = as_node_id(pair[1], at + "/1");
    for (NodeId id : {a, b}) {
      if (!g.contains(id)) {
        throw ParseError(Kind::unknown_endpoint, at, "edge references undeclared node " + to_string(id));
      }
    }
    if (a == b) throw ParseError(Kind::self_loop, at, "self-loop on node " + to_string(a));
    if (g.has_edge(a, b)) {
      throw ParseError(Kind::duplicate_edge, at, "duplicate edge " + to_string(a) + "-" + to_string(b));
    }
    g.add_edge(a, b);
  }
  return g;
}

inline std::string write_topology(const SensorGraph& g) {
  using namespace io_detail;
  json nodes = json::array();
  for (const auto& [id, e] : g.energies()) nodes.push_back({{"id", id.value}, {"energy", e}});
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back(edge_json(e));
  return dump({{"version", kSchemaVersion}, {"nodes", nodes}, {"edges", edges}});
}

namespace io_detail {

inline json outcome_json(const BuildOutcome& o) {
  json parent = json::object();
  for (const auto& [child, p] : o.tree.parents()) parent[to_string(child)] = p.value;
  json trace = json::array();
  for (const SweepStep& s : o.trace) {
    json removed = json::array();
    for (const Edge& e : s.removed) removed.push_back(edge_json(e));
    trace.push_back({{"node", s.node.value},
                     {"keep", s.keep ? json(s.keep->value) : json(nullptr)},
                     {"removed", removed},
                     {"disconnected", s.disconnected}});
  }
  return {{"version", kSchemaVersion},
          {"algorithm", std::string(to_string(o.algorithm))},
          {"root", o.tree.root().value},
          {"parent", parent},
          {"tree_energy", o.tree_energy},
          {"bottleneck", o.bottleneck ? json(o.bottleneck->value) : json(nullptr)},
          {"trace", trace}};
}

inline BuildOutcome outcome_from(const json& doc) {
  check_version(doc);
  BuildOutcome o;
  o.algorithm = as_algorithm(member(doc, "algorithm", ""), "/algorithm");
  const NodeId root = as_node_id(member(doc, "root", ""), "/root");
  const json& parent = member(doc, "parent", "");
  if (!parent.is_object()) throw ParseError(Kind::schema, "/parent", "expected an object");
  std::map<NodeId, NodeId> links;
  for (const auto& [key, value] : parent.items()) {
    links[key_node_id(key, "/parent/" + key)] = as_node_id(value, "/parent/" + key);
  }
  o.tree = AggregationTree(root, std::move(links));
  o.tree_energy = as_energy(member(doc, "tree_energy", ""), "/tree_energy");
  if (const json& b = member(doc, "bottleneck", ""); !b.is_null()) {
    o.bottleneck = as_node_id(b, "/bottleneck");
  }
  const json& trace = member(doc, "trace", "");
  if (!trace.is_array()) throw ParseError(Kind::schema, "/trace", "expected an array");
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const std::string at = "/trace/" + std::to_string(i);
    SweepStep s;
    s.node = as_node_id(member(trace[i], "node", at), at + "/node");
    if (const json& k = member(trace[i], "keep", at); !k.is_null()) s.keep = as_node_id(k, at + "/keep");
    const json& removed = member(trace[i], "removed", at);
    if (!removed.is_array()) throw ParseError(Kind::schema, at + "/removed", "expected an array");
    for (std::size_t r = 0; r < removed.size(); ++r) {
      s.removed.push_back(as_edge(removed[r], at + "/removed/" + std::to_string(r)));
    }
    const json& disc = member(trace[i], "disconnected", at);
    if (!disc.is_boolean()) throw ParseError(Kind::schema, at + "/disconnected", "expected a boolean");
    s.disconnected = disc.get<bool>();
    o.trace.push_back(std::move(s));
  }
  return o;
}

inline json report_json(const SimReport& r) {
  json deaths = json::object();
  for (const auto& [id, round] : r.deaths) deaths[to_string(id)] = round;
  json nodes = json::array();
  for (NodeId id : r.timeline_nodes) nodes.push_back(id.value);
  return {{"version", kSchemaVersion},
          {"strategy", std::string(to_string(r.strategy))},
          {"seed", r.seed},
          {"functional_lifetime_rounds", r.functional_lifetime_rounds},
          {"network_lifetime_rounds", r.network_lifetime_rounds},
          {"reconstructions", r.reconstructions},
          {"packets_delivered", r.packets_delivered},
          {"termination", std::string(to_string(r.termination))},
          {"energy_charged", r.energy_charged},
          {"deaths", deaths},
          {"timeline_nodes", nodes},
          {"energy_timeline", r.energy_timeline}};
}

inline SimReport report_from(const json& doc) {
  check_version(doc);
  SimReport r;
  r.strategy = as_algorithm(member(doc, "strategy", ""), "/strategy");
  r.seed = as_count(member(doc, "seed", ""), "/seed");
  r.functional_lifetime_rounds =
      as_count(member(doc, "functional_lifetime_rounds", ""), "/functional_lifetime_rounds");
  r.network_lifetime_rounds =
      as_count(member(doc, "network_lifetime_rounds", ""), "/network_lifetime_rounds");
  r.reconstructions = as_count(member(doc, "reconstructions", ""), "/reconstructions");
  r.packets_delivered = as_count(member(doc, "packets_delivered", ""), "/packets_delivered");
  const json& term = member(doc, "termination", "");
  bool matched = false;
  for (Termination t : {Termination::max_rounds, Termination::single_survivor,
                        Termination::no_survivors, Termination::disconnected}) {
    if (term.is_string() && term.get<std::string>() == to_string(t)) {
      r.termination = t;
      matched = true;
    }
  }
  if (!matched) throw ParseError(Kind::schema, "/termination", "unknown termination " + term.dump());
  r.energy_charged = as_energy(member(doc, "energy_charged", ""), "/energy_charged");
  const json& deaths = member(doc, "deaths", "");
  if (!deaths.is_object()) throw ParseError(Kind::schema, "/deaths", "expected an object");
  for (const auto& [key, value] : deaths.items()) {
    r.deaths[key_node_id(key, "/deaths/" + key)] = as_count(value, "/deaths/" + key);
  }
  const json& nodes = member(doc, "timeline_nodes", "");
  if (!nodes.is_array()) throw ParseError(Kind::schema, "/timeline_nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    r.timeline_nodes.push_back(as_node_id(nodes[i], "/timeline_nodes/" + std::to_string(i)));
  }
  const json& rows = member(doc, "energy_timeline", "");
  if (!rows.is_array()) throw ParseError(Kind::schema, "/energy_timeline", "expected an array");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string at = "/energy_timeline/" + std::to_string(i);
    if (!rows[i].is_array() || rows[i].size() != r.timeline_nodes.size()) {
      throw ParseError(Kind::schema, at, "row width must match timeline_nodes");
    }
    std::vector<Energy> row;
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      row.push_back(as_energy(rows[i][c], at + "/" + std::to_string(c)));
    }
    r.energy_timeline.push_back(std::move(row));
  }
  return r;
}

}  // namespace io_detail

inline std::string write_outcome(const BuildOutcome& o) { return io_detail::dump(io_detail::outcome_json(o)); }
inline std::string write_outcome(const SimReport& r) { return io_detail::dump(io_detail::report_json(r)); }

inline BuildOutcome parse_outcome(std::string_view text) {
  return io_detail::outcome_from(io_detail::parse_json(text));
}

inline SimReport parse_report(std::string_view text) {
  return io_detail::report_from(io_detail::parse_json(text));
}

inline std::string write_oracle_result(const OracleResult& r) {
  using namespace io_detail;
  json parent = json::object();
  for (const auto& [child, p] : r.witness.parents()) parent[to_string(child)] = p.value;
  return dump({{"version", kSchemaVersion},
               {"optimum", r.optimum},
               {"trees_examined", r.trees_examined},
               {"root", r.witness.root().value},
               {"parent", parent}});
}

/// CSV with columns round,node_id,energy; one line per node per recorded round.
inline std::string write_timeline_csv(const SimReport& r) {
  std::string out = "round,node_id,energy\n";
  for (std::size_t round = 0; round < r.energy_timeline.size(); ++round) {
    for (std::size_t c = 0; c < r.timeline_nodes.size(); ++c) {
      out += std::to_string(round) + "," + to_string(r.timeline_nodes[c]) + "," +
             format_energy(r.energy_timeline[round][c]) + "\n";
    }
  }
  return out;
}

/// Simulation parameters from JSON. Missing fields keep SimConfig defaults.
inline SimConfig parse_sim_config(std::string_view text) {
  using namespace io_detail;
  const json doc = parse_json(text);
  check_version(doc);
  SimConfig cfg;
  auto energy_field = [&](const char* key, Energy& slot) {
    if (auto it = doc.find(key); it != doc.end()) slot = as_energy(*it, std::string("/") + key);
  };
  energy_field("tx_cost", cfg.tx_cost);
  energy_field("rx_cost", cfg.rx_cost);
  energy_field("agg_cost", cfg.agg_cost);
  energy_field("rebuild_cost", cfg.rebuild_cost);
  if (auto it = doc.find("strategy"); it != doc.end()) {
    if (!it->is_string()) throw ParseError(Kind::schema, "/strategy", "expected a string");
    auto a = parse_algorithm(it->get<std::string>());
    if (!a) throw ConfigError("unknown strategy " + it->dump());
    cfg.strategy = *a;
  }
  if (auto it = doc.find("max_rounds"); it != doc.end()) cfg.max_rounds = as_count(*it, "/max_rounds");
  if (auto it = doc.find("seed"); it != doc.end()) cfg.seed = as_count(*it, "/seed");
  if (auto it = doc.find("record_timeline"); it != doc.end()) {
    if (!it->is_boolean()) throw ParseError(Kind::schema, "/record_timeline", "expected a boolean");
    cfg.record_timeline = it->get<bool>();
  }
  validate(cfg);
  return cfg;
}

inline std::string write_sim_config(const SimConfig& cfg) {
  using namespace io_detail;
  return dump({{"version", kSchemaVersion},
               {"tx_cost", cfg.tx_cost},
               {"rx_cost", cfg.rx_cost},
               {"agg_cost", cfg.agg_cost},
               {"rebuild_cost", cfg.rebuild_cost},
               {"strategy", std::string(to_string(cfg.strategy))},
               {"max_rounds", cfg.max_rounds},
               {"seed", cfg.seed},
               {"record_timeline", cfg.record_timeline}});
}

/// Graphviz rendering. Tree links are solid arrows child -> parent, other
/// links dashed and undirected, the root double-circled.
inline std::string export_dot(const SensorGraph& g,
                              const std::optional<AggregationTree>& tree = std::nullopt) {
  if (tree) {
    if (auto report = validate(*tree, g); !report) {
      throw ContractViolation("export_dot: invalid tree: " + report.reasons.front());
    }
  }
  std::ostringstream os;
  os << "digraph clmt {\n  node [shape=circle];\n";
  for (const auto& [id, e] : g.energies()) {
    os << "  " << id << " [label=\"" << id << " (" << format_energy(e) << " J)\"";
    if (tree && tree->root() == id) os << ", shape=doublecircle";
    os << "];\n";
  }
  std::set<Edge> tree_links;
  if (tree) {
    for (const auto& [child, parent] : tree->parents()) {
      os << "  " << child << " -> " << parent << ";\n";
      tree_links.insert(Edge::between(child, parent));
    }
  }
  for (const Edge& e : g.edges()) {
    if (tree_links.contains(e)) continue;
    os << "  " << e.u << " -> " << e.v << " [dir=none, style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace clmt
