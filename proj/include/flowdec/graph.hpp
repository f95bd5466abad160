// Copyright 2026 The Flowdec Authors
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

//==============================================================================
// Core instance types: DAG with a single source/sink, per-edge flow values or
// inexact [lower, upper] bounds, and weighted path decompositions.
//
// Conventions used throughout the library:
//  * Edges carry explicit ids; parallel edges are distinct edges with distinct
//    ids. A path is a sequence of edge ids, so parallel edges never collapse.
//  * Dense per-edge vectors (FlowAssignment, InexactBounds, coverage) are
//    indexed by Graph edge position, i.e. ascending edge id.
//  * Everything here is deterministic; "lexicographic" always means by edge id.
//==============================================================================

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowdec/common.hpp"

namespace flowdec {

struct Edge {
  EdgeId id;
  NodeId from;
  NodeId to;
};

// Immutable DAG container. Construction only checks structural sanity
// (endpoints exist, ids unique); semantic checks live in validate_instance so
// that malformed graphs can still be inspected and reported on.
class Graph {
 public:
  Graph(std::vector<NodeId> nodes, NodeId source, NodeId sink,
        std::vector<Edge> edges)
      : nodes_(std::move(nodes)), source_(source), sink_(sink),
        edges_(std::move(edges)) {
    std::sort(nodes_.begin(), nodes_.end());
    if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
      throw std::invalid_argument("duplicate node id");
    for (size_t i = 0; i < nodes_.size(); ++i)
      node_index_[nodes_[i]] = static_cast<int>(i);
    if (!node_index_.count(source_) || !node_index_.count(sink_))
      throw std::invalid_argument("source/sink not in node list");
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (i > 0 && edges_[i - 1].id == e.id)
        throw std::invalid_argument("duplicate edge id " + std::to_string(e.id));
      if (!node_index_.count(e.from) || !node_index_.count(e.to))
        throw std::invalid_argument("edge endpoint not in node list");
      edge_index_[e.id] = static_cast<int>(i);
    }
    out_.assign(nodes_.size(), {});
    in_.assign(nodes_.size(), {});
    for (size_t i = 0; i < edges_.size(); ++i) {
      out_[node_index_.at(edges_[i].from)].push_back(static_cast<int>(i));
      in_[node_index_.at(edges_[i].to)].push_back(static_cast<int>(i));
    }
    // Adjacency lists stay sorted by edge id because edges_ is.
  }

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int idx) const { return edges_[idx]; }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }

  int node_index(NodeId v) const { return node_index_.at(v); }
  int source_index() const { return node_index_.at(source_); }
  int sink_index() const { return node_index_.at(sink_); }
  bool has_edge_id(EdgeId id) const { return edge_index_.count(id) != 0; }
  int edge_index(EdgeId id) const { return edge_index_.at(id); }

  // Edge positions leaving/entering a node, ascending by edge id.
  const std::vector<int>& out_edges(int node_idx) const { return out_[node_idx]; }
  const std::vector<int>& in_edges(int node_idx) const { return in_[node_idx]; }

  // Node indices in a topological order; throws if the graph has a cycle.
  std::vector<int> topological_order() const {
    std::vector<int> indeg(num_nodes(), 0);
    for (const Edge& e : edges_) indeg[node_index_.at(e.to)]++;
    std::vector<int> order;
    order.reserve(num_nodes());
    std::vector<int> queue;
    for (int v = 0; v < num_nodes(); ++v)
      if (indeg[v] == 0) queue.push_back(v);
    while (!queue.empty()) {
      int v = queue.front();
      queue.erase(queue.begin());
      order.push_back(v);
      for (int e : out_[v]) {
        int w = node_index_.at(edges_[e].to);
        if (--indeg[w] == 0) queue.push_back(w);
      }
    }
    if (static_cast<int>(order.size()) != num_nodes())
      throw Error("graph has a cycle");
    return order;
  }

 private:
  std::vector<NodeId> nodes_;
  NodeId source_, sink_;
  std::vector<Edge> edges_;
  std::unordered_map<NodeId, int> node_index_;
  std::unordered_map<EdgeId, int> edge_index_;
  std::vector<std::vector<int>> out_, in_;
};

// Exact flow: one non-negative value per edge, graph edge order.
struct FlowAssignment {
  std::vector<Flow> value;
};

// Inexact per-edge interval [lower, upper]; absent upper = unbounded.
struct InexactBounds {
  std::vector<Flow> lower;
  std::vector<OptFlow> upper;
};

inline InexactBounds exact_bounds(const FlowAssignment& f) {
  InexactBounds b;
  b.lower = f.value;
  b.upper.reserve(f.value.size());
  for (Flow v : f.value) b.upper.push_back(v);
  return b;
}

// s-t path as a sequence of edge ids (never node ids: parallel edges).
struct Path {
  std::vector<EdgeId> edges;
  friend bool operator==(const Path& a, const Path& b) = default;
  friend auto operator<=>(const Path& a, const Path& b) = default;
};

// Paths plus one positive integer weight each; k = paths.size().
struct WeightedDecomposition {
  std::vector<Path> paths;
  std::vector<Flow> weights;
  int64_t size() const { return static_cast<int64_t>(paths.size()); }
  Flow total_weight() const {
    Flow s = 0;
    for (Flow w : weights) s += w;
    return s;
  }
};

struct ValidationIssue {
  std::string code;     // stable machine-readable tag
  std::string message;
  std::vector<int64_t> ids;  // offending node or edge ids
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  bool has(const std::string& code) const {
    for (const auto& i : issues)
      if (i.code == code) return true;
    return false;
  }
};

//==============================================================================
// Operations
//==============================================================================

// Structural checks on the graph alone: acyclicity, source/sink degrees,
// every node on some s-t path. Findings are data, not errors; callers decide.
inline ValidationReport validate_graph(const Graph& g) {
  ValidationReport report;
  auto add = [&report](const std::string& code, const std::string& msg,
                       std::vector<int64_t> ids = {}) {
    report.issues.push_back({code, msg, std::move(ids)});
  };
  if (g.source() == g.sink()) add("source_is_sink", "source equals sink");
  // Cycle detection via Kahn (re-using topological_order's logic inline so we
  // report instead of throwing).
  bool acyclic = true;
  try {
    (void)g.topological_order();
  } catch (const Error&) {
    acyclic = false;
    add("cycle", "graph is not acyclic");
  }
  if (!g.in_edges(g.source_index()).empty()) {
    std::vector<int64_t> ids;
    for (int e : g.in_edges(g.source_index())) ids.push_back(g.edge(e).id);
    add("source_has_incoming", "source has incoming edges", ids);
  }
  if (!g.out_edges(g.sink_index()).empty()) {
    std::vector<int64_t> ids;
    for (int e : g.out_edges(g.sink_index())) ids.push_back(g.edge(e).id);
    add("sink_has_outgoing", "sink has outgoing edges", ids);
  }
  if (acyclic) {
    // Forward reachability from s and backward from t; every node must see
    // both, otherwise it cannot lie on any s-t path.
    int n = g.num_nodes();
    std::vector<bool> from_s(n, false), to_t(n, false);
    std::vector<int> stack{g.source_index()};
    from_s[g.source_index()] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : g.out_edges(v)) {
        int w = g.node_index(g.edge(e).to);
        if (!from_s[w]) { from_s[w] = true; stack.push_back(w); }
      }
    }
    stack = {g.sink_index()};
    to_t[g.sink_index()] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : g.in_edges(v)) {
        int w = g.node_index(g.edge(e).from);
        if (!to_t[w]) { to_t[w] = true; stack.push_back(w); }
      }
    }
    std::vector<int64_t> orphans;
    for (int v = 0; v < n; ++v)
      if (!from_s[v] || !to_t[v]) orphans.push_back(g.nodes()[v]);
    if (!orphans.empty())
      add("node_off_path", "node lies on no s-t path", orphans);
  }
  return report;
}

// Graph checks plus bound sanity: sizes line up, lower >= 0, lower <= upper.
inline ValidationReport validate_instance(const Graph& g,
                                          const InexactBounds& bounds) {
  ValidationReport report = validate_graph(g);
  auto add = [&report](const std::string& code, const std::string& msg,
                       std::vector<int64_t> ids = {}) {
    report.issues.push_back({code, msg, std::move(ids)});
  };
  if (static_cast<int>(bounds.lower.size()) != g.num_edges() ||
      static_cast<int>(bounds.upper.size()) != g.num_edges()) {
    add("bounds_size_mismatch", "bounds vectors do not match edge count");
    return report;
  }
  std::vector<int64_t> negative, crossed;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (bounds.lower[e] < 0) negative.push_back(g.edge(e).id);
    if (bounds.upper[e] && *bounds.upper[e] < bounds.lower[e])
      crossed.push_back(g.edge(e).id);
  }
  if (!negative.empty()) add("negative_lower", "negative lower bound", negative);
  if (!crossed.empty()) add("lower_above_upper", "lower exceeds upper", crossed);
  return report;
}

// Node ids where inflow != outflow (source and sink excluded).
inline std::vector<NodeId> conservation_violations(const Graph& g,
                                                   const FlowAssignment& f) {
  assert(static_cast<int>(f.value.size()) == g.num_edges());
  std::vector<NodeId> bad;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (v == g.source_index() || v == g.sink_index()) continue;
    Flow in = 0, out = 0;
    for (int e : g.in_edges(v)) in += f.value[e];
    for (int e : g.out_edges(v)) out += f.value[e];
    if (in != out) bad.push_back(g.nodes()[v]);
  }
  return bad;
}

inline bool is_conserved(const Graph& g, const FlowAssignment& f) {
  return conservation_violations(g, f).empty();
}

// |f| = net inflow at the sink.
inline Flow flow_value(const Graph& g, const FlowAssignment& f) {
  Flow v = 0;
  for (int e : g.in_edges(g.sink_index())) v += f.value[e];
  return v;
}

// All s-t paths in lexicographic (by edge-id sequence) order. Throws
// PathExplosionError once more than `cap` paths exist.
inline std::vector<Path> enumerate_st_paths(const Graph& g, size_t cap = 100000) {
  std::vector<Path> paths;
  std::vector<EdgeId> current;
  // DFS trying out-edges in ascending id order emits lexicographic order.
  auto dfs = [&](auto&& self, int v) -> void {
    if (v == g.sink_index()) {
      if (paths.size() >= cap) throw PathExplosionError(cap);
      paths.push_back(Path{current});
      return;
    }
    for (int e : g.out_edges(v)) {
      current.push_back(g.edge(e).id);
      self(self, g.node_index(g.edge(e).to));
      current.pop_back();
    }
  };
  dfs(dfs, g.source_index());
  return paths;
}

// True iff the edge-id sequence is a contiguous s-t path in g.
inline bool is_st_path(const Graph& g, const Path& p) {
  if (p.edges.empty()) return false;
  NodeId at = g.source();
  for (EdgeId id : p.edges) {
    if (!g.has_edge_id(id)) return false;
    const Edge& e = g.edge(g.edge_index(id));
    if (e.from != at) return false;
    at = e.to;
  }
  return at == g.sink();
}

// Per-edge coverage sum_{i: e in P_i} w_i, graph edge order.
inline std::vector<Flow> coverage(const Graph& g,
                                  const WeightedDecomposition& d) {
  std::vector<Flow> cov(g.num_edges(), 0);
  for (size_t i = 0; i < d.paths.size(); ++i)
    for (EdgeId id : d.paths[i].edges) cov[g.edge_index(id)] += d.weights[i];
  return cov;
}

// Greedy path peeling: repeatedly follow, from s, the lexicographically
// smallest outgoing edge with positive residual, peel off the bottleneck
// weight. Each round zeroes at least one edge, so at most |E| paths result.
// Throws NotConservedError if f is not a conserved flow.
inline WeightedDecomposition flow_to_paths(const Graph& g,
                                           const FlowAssignment& f) {
  auto bad = conservation_violations(g, f);
  if (!bad.empty()) throw NotConservedError(bad.front());
  WeightedDecomposition d;
  std::vector<Flow> residual = f.value;
  for (;;) {
    // Find the first positive-residual edge out of s.
    std::vector<EdgeId> edges;
    Flow bottleneck = 0;
    int v = g.source_index();
    while (v != g.sink_index()) {
      int chosen = -1;
      for (int e : g.out_edges(v)) {
        if (residual[e] > 0) { chosen = e; break; }
      }
      if (chosen < 0) break;  // no outgoing residual: flow exhausted at v
      edges.push_back(g.edge(chosen).id);
      bottleneck = bottleneck == 0 ? residual[chosen]
                                   : std::min(bottleneck, residual[chosen]);
      v = g.node_index(g.edge(chosen).to);
    }
    if (v != g.sink_index() || edges.empty()) break;
    for (EdgeId id : edges) residual[g.edge_index(id)] -= bottleneck;
    d.paths.push_back(Path{std::move(edges)});
    d.weights.push_back(bottleneck);
  }
  // Conservation guarantees the walk only stalls when residual is zero.
  return d;
}

// |f| paths of weight one reproducing f exactly (unit expansion of the
// greedy peeling above).
inline WeightedDecomposition trivial_decomposition(const Graph& g,
                                                   const FlowAssignment& f) {
  WeightedDecomposition peeled = flow_to_paths(g, f);
  WeightedDecomposition d;
  for (size_t i = 0; i < peeled.paths.size(); ++i)
    for (Flow u = 0; u < peeled.weights[i]; ++u) {
      d.paths.push_back(peeled.paths[i]);
      d.weights.push_back(1);
    }
  return d;
}

struct Evaluation {
  bool feasible = false;
  double objective = 0.0;   // path_cost * k + weight_cost * sum(w)
  std::vector<Flow> edge_coverage;
  std::vector<EdgeId> violated_edges;
};

// Feasibility and objective of a decomposition against inexact bounds.
// Malformed paths or non-positive weights throw; infeasibility is data.
inline Evaluation evaluate(const Graph& g, const InexactBounds& bounds,
                           const WeightedDecomposition& d, double path_cost,
                           double weight_cost) {
  if (d.paths.size() != d.weights.size())
    throw std::invalid_argument("paths/weights size mismatch");
  for (const Path& p : d.paths)
    if (!is_st_path(g, p)) throw std::invalid_argument("not an s-t path");
  for (Flow w : d.weights)
    if (w <= 0) throw std::invalid_argument("non-positive path weight");
  Evaluation ev;
  ev.edge_coverage = coverage(g, d);
  for (int e = 0; e < g.num_edges(); ++e) {
    Flow c = ev.edge_coverage[e];
    if (c < bounds.lower[e] || (bounds.upper[e] && c > *bounds.upper[e]))
      ev.violated_edges.push_back(g.edge(e).id);
  }
  ev.feasible = ev.violated_edges.empty();
  ev.objective = path_cost * static_cast<double>(d.size()) +
                 weight_cost * static_cast<double>(d.total_weight());
  return ev;
}

}  // namespace flowdec
