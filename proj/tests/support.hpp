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

// Shared test fixtures: the running 7-node example, tiny graph factories, and
// seeded random-instance generators used by the property and acceptance
// suites. Everything here is deterministic given the seed.

#pragma once

#include <optional>
#include <vector>

#include "flowdec/graph.hpp"
#include "flowdec/rng.hpp"

namespace flowdec::testing {

// The 7-node running example: nodes s=0,a=1,b=2,c=3,d=4,e=5,t=6, twelve
// edges, flow value 10. Optimal decomposition: 5 paths, weights {1,2,2,2,3}.
inline Graph small_graph() {
  std::vector<Edge> edges = {
      {0, 0, 1}, {1, 0, 2}, {2, 0, 3},  // s->a:4 s->b:3 s->c:3
      {3, 1, 3}, {4, 1, 4},             // a->c:2 a->d:2
      {5, 2, 3}, {6, 2, 5},             // b->c:1 b->e:2
      {7, 3, 4}, {8, 3, 5},             // c->d:3 c->e:3
      {9, 4, 5}, {10, 4, 6},            // d->e:2 d->t:3
      {11, 5, 6},                       // e->t:7
  };
  return Graph({0, 1, 2, 3, 4, 5, 6}, 0, 6, std::move(edges));
}

inline FlowAssignment small_flow() {
  return FlowAssignment{{4, 3, 3, 2, 2, 1, 2, 3, 3, 2, 3, 7}};
}

inline InexactBounds small_exact_bounds() { return exact_bounds(small_flow()); }

// chain s -> v1 -> ... -> t with the given per-edge flow.
inline Graph chain_graph(int inner_nodes) {
  std::vector<NodeId> nodes;
  for (int i = 0; i <= inner_nodes + 1; ++i) nodes.push_back(i);
  std::vector<Edge> edges;
  for (int i = 0; i <= inner_nodes; ++i) edges.push_back({i, i, i + 1});
  return Graph(nodes, 0, inner_nodes + 1, std::move(edges));
}

// k parallel s->t edges, ids 0..k-1.
inline Graph parallel_graph(int k) {
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, 0, 1});
  return Graph({0, 1}, 0, 1, std::move(edges));
}

struct RandomInstanceOptions {
  int max_nodes = 6;        // includes source and sink
  int max_extra_edges = 4;  // beyond the spanning skeleton
  Flow max_bound = 4;
  bool allow_unbounded_upper = false;
  bool exact = false;       // lower == upper == a conserved flow
};

struct RandomInstance {
  Graph graph;
  InexactBounds bounds;
  std::optional<FlowAssignment> flow;  // set when exact
};

// Random valid DAG: nodes 0..n-1 in topological order, s=0, t=n-1; a skeleton
// keeps every node on an s-t path, extra forward edges are sprinkled on top.
inline Graph random_dag(Rng& rng, int max_nodes, int max_extra_edges) {
  int n = static_cast<int>(rng.uniform_int(2, max_nodes));
  std::vector<NodeId> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(i);
  std::vector<std::pair<NodeId, NodeId>> arcs;
  // Skeleton: each internal node gets one edge from an earlier node and one
  // to a later node; then s reaches everything and everything reaches t.
  for (int v = 1; v < n - 1; ++v) {
    arcs.emplace_back(rng.uniform_int(0, v - 1), v);
    arcs.emplace_back(v, rng.uniform_int(v + 1, n - 1));
  }
  if (n == 2) arcs.emplace_back(0, 1);
  int extra = static_cast<int>(rng.uniform_int(0, max_extra_edges));
  for (int i = 0; i < extra; ++i) {
    NodeId u = rng.uniform_int(0, n - 2);
    NodeId v = rng.uniform_int(u + 1, n - 1);
    if (u == 0 && v == n - 1 && n > 2) continue;  // keep direct arcs rare
    arcs.emplace_back(u, v);  // parallels allowed: distinct ids below
  }
  std::vector<Edge> edges;
  for (size_t i = 0; i < arcs.size(); ++i)
    edges.push_back({static_cast<EdgeId>(i), arcs[i].first, arcs[i].second});
  return Graph(nodes, 0, n - 1, std::move(edges));
}

// Conserved random flow built by routing unit paths along random out-edges.
inline FlowAssignment random_flow(Rng& rng, const Graph& g, Flow max_per_edge) {
  FlowAssignment f{std::vector<Flow>(g.num_edges(), 0)};
  int units = static_cast<int>(rng.uniform_int(0, 2 * max_per_edge));
  for (int u = 0; u < units; ++u) {
    // Route one unit s->t; skip if it would push any edge past max_per_edge.
    std::vector<int> route;
    int v = g.source_index();
    while (v != g.sink_index()) {
      const auto& out = g.out_edges(v);
      int e = out[rng.next_below(out.size())];
      route.push_back(e);
      v = g.node_index(g.edge(e).to);
    }
    bool fits = true;
    for (int e : route)
      if (f.value[e] + 1 > max_per_edge) fits = false;
    if (!fits) continue;
    for (int e : route) f.value[e] += 1;
  }
  return f;
}

// Exhaustive reference for the decomposition objective: every multiset of at
// most k_limit s-t paths, every weight vector in [1, w_limit] per slot, best
// feasible objective wins. nullopt = infeasible within those limits. The
// multiset matches a slot model capped at the same k_max/w_max exactly.
inline std::optional<double> brute_force_reference(
    const Graph& g, const InexactBounds& b, double path_cost,
    double weight_cost, int k_limit, Flow w_limit) {
  std::vector<Path> all = enumerate_st_paths(g);
  std::optional<double> best;
  std::vector<size_t> chosen;
  auto weights = [&](auto&& self, WeightedDecomposition& d, size_t j) -> void {
    if (j == chosen.size()) {
      Evaluation ev = evaluate(g, b, d, path_cost, weight_cost);
      if (ev.feasible && (!best || ev.objective < *best)) best = ev.objective;
      return;
    }
    for (Flow w = 1; w <= w_limit; ++w) {
      d.weights[j] = w;
      self(self, d, j + 1);
    }
  };
  auto pick = [&](auto&& self, size_t from, int left) -> void {
    WeightedDecomposition d;
    for (size_t i : chosen) d.paths.push_back(all[i]);
    d.weights.assign(chosen.size(), 1);
    weights(weights, d, 0);
    if (left == 0) return;
    for (size_t i = from; i < all.size(); ++i) {
      chosen.push_back(i);
      self(self, i, left - 1);
      chosen.pop_back();
    }
  };
  pick(pick, 0, k_limit);
  return best;
}

inline RandomInstance random_instance(Rng& rng,
                                      const RandomInstanceOptions& opt) {
  Graph g = random_dag(rng, opt.max_nodes, opt.max_extra_edges);
  if (opt.exact) {
    FlowAssignment f = random_flow(rng, g, opt.max_bound);
    InexactBounds b = exact_bounds(f);
    return {std::move(g), std::move(b), std::move(f)};
  }
  InexactBounds b;
  for (int e = 0; e < g.num_edges(); ++e) {
    Flow lo = rng.uniform_int(0, opt.max_bound);
    b.lower.push_back(lo);
    if (opt.allow_unbounded_upper && rng.chance(1, 3)) {
      b.upper.push_back(std::nullopt);
    } else {
      b.upper.push_back(rng.uniform_int(lo, opt.max_bound));
    }
  }
  return {std::move(g), std::move(b), std::nullopt};
}

}  // namespace flowdec::testing
