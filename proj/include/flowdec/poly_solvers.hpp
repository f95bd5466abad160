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

// Polynomial-time exact solvers for the two degenerate objectives:
//
//  * solve_weight_min: minimize the total path weight alone. The sum of the
//    weights of any decomposition equals the value of the edge flow it
//    induces, so this is the min-value feasible flow, found by min-cost flow
//    on a wrapped network where each unit entering the original source pays 1.
//
//  * solve_path_min_no_ub: minimize the number of paths alone when no edge
//    has an upper bound. One path of weight sum(lower) saturates every lower
//    bound it touches, so the problem reduces to covering every edge with a
//    positive lower bound by as few s-t paths as possible, again a min-cost
//    flow (each path is one unit crossing the costed entry arc).
//
// Both wrap the original graph with a super source sp and super sink tp:
// sp supplies M units, tp absorbs them, arc (sp, s) costs 1 per unit, arcs
// (t, tp) and the bypass (sp, tp) are free. The bypass makes the supply
// elastic: exactly the decomposed amount crosses the real network.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flowdec/common.hpp"
#include "flowdec/graph.hpp"
#include "flowdec/mincost_flow.hpp"

namespace flowdec {

struct WeightMinReduction {
  McfNetwork network;             // nodes 0..n-1 original, n = sp, n+1 = tp
  std::vector<size_t> edge_arc;   // arc index carrying original edge e
  size_t entry_arc = 0;           // sp -> s, cost 1 per decomposed unit
  size_t bypass_arc = 0;          // sp -> tp, absorbs unused supply for free
  Flow supply = 0;                // elastic supply M at sp
};

namespace detail {

inline void check_bounds_shape(const Graph& g, const InexactBounds& b) {
  if (b.lower.size() != static_cast<size_t>(g.num_edges()) ||
      b.upper.size() != static_cast<size_t>(g.num_edges()))
    throw std::invalid_argument("bounds do not match the edge count");
  for (Flow lo : b.lower)
    if (lo < 0) throw std::invalid_argument("negative lower bound");
}

// Appends the sp/tp wrapper arcs around a network holding the original edges
// and records their indices in r.
inline void wrap_with_super_nodes(const Graph& g, Flow supply,
                                  WeightMinReduction& r) {
  const int sp = g.num_nodes();
  const int tp = g.num_nodes() + 1;
  r.network.num_nodes = g.num_nodes() + 2;
  r.network.demand.assign(r.network.num_nodes, 0);
  r.network.demand[sp] = supply;
  r.network.demand[tp] = -supply;
  r.entry_arc = r.network.arcs.size();
  r.network.arcs.push_back({sp, g.source_index(), 0, supply, 1});
  r.network.arcs.push_back({g.sink_index(), tp, 0, supply, 0});
  r.bypass_arc = r.network.arcs.size();
  r.network.arcs.push_back({sp, tp, 0, supply, 0});
  r.supply = supply;
}

}  // namespace detail

// Wrapped network whose min cost equals the minimum total decomposition
// weight. The elastic supply M bounds the flow value from above: the sum of
// the upper bounds when all are finite, otherwise sum(lower) + 1 (a minimal
// feasible flow never exceeds sum(lower): each unit must cross some edge
// pinned at a positive lower bound, or it could be peeled off).
inline WeightMinReduction build_weight_min_reduction(const Graph& g,
                                                     const InexactBounds& b) {
  detail::check_bounds_shape(g, b);
  bool all_finite = true;
  Flow upper_sum = 0;
  Flow lower_sum = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    lower_sum += b.lower[e];
    if (b.upper[e]) {
      upper_sum += *b.upper[e];
    } else {
      all_finite = false;
    }
  }
  const Flow supply = all_finite ? upper_sum : lower_sum + 1;
  WeightMinReduction r;
  for (int e = 0; e < g.num_edges(); ++e) {
    r.edge_arc.push_back(r.network.arcs.size());
    r.network.arcs.push_back({g.node_index(g.edge(e).from),
                              g.node_index(g.edge(e).to), b.lower[e],
                              b.upper[e], 0});
  }
  detail::wrap_with_super_nodes(g, supply, r);
  return r;
}

struct WeightMinResult {
  SolveStatus status = SolveStatus::kInfeasible;
  Flow total_weight = 0;               // minimum sum of path weights
  FlowAssignment flow;                 // edge coverage achieving it
  WeightedDecomposition decomposition; // peeled paths realizing the flow
};

inline WeightMinResult solve_weight_min(const Graph& g,
                                        const InexactBounds& b) {
  detail::check_bounds_shape(g, b);
  WeightMinResult out;
  for (int e = 0; e < g.num_edges(); ++e)
    if (b.upper[e] && *b.upper[e] < b.lower[e]) return out;  // empty interval
  WeightMinReduction r = build_weight_min_reduction(g, b);
  McfSolution sol = solve_mcf(r.network);
  if (sol.status != McfStatus::kOptimal) return out;
  out.status = SolveStatus::kOptimal;
  out.total_weight = sol.cost;
  out.flow.value.resize(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e)
    out.flow.value[e] = sol.flow[r.edge_arc[e]];
  out.decomposition = flow_to_paths(g, out.flow);
  return out;
}

struct PathMinResult {
  SolveStatus status = SolveStatus::kInfeasible;
  int64_t count = 0;          // minimum number of paths
  std::vector<Path> paths;
  Flow uniform_weight = 0;    // weight given to every path

  // The witness decomposition: every path carries uniform_weight, which
  // saturates each positive lower bound it crosses.
  WeightedDecomposition decomposition() const {
    return {paths, std::vector<Flow>(paths.size(), uniform_weight)};
  }
};

// Minimum number of paths touching every edge with a positive lower bound.
// Only valid without upper bounds: any path can then be fattened to
// sum(lower) so coverage never constrains the count.
inline PathMinResult solve_path_min_no_ub(const Graph& g,
                                          const InexactBounds& b) {
  detail::check_bounds_shape(g, b);
  Flow lower_sum = 0;
  Flow required = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (b.upper[e])
      throw std::invalid_argument(
          "path count minimization requires unbounded uppers");
    lower_sum += b.lower[e];
    if (b.lower[e] > 0) ++required;
  }
  WeightMinReduction r;
  for (int e = 0; e < g.num_edges(); ++e) {
    r.edge_arc.push_back(r.network.arcs.size());
    r.network.arcs.push_back({g.node_index(g.edge(e).from),
                              g.node_index(g.edge(e).to),
                              b.lower[e] > 0 ? Flow{1} : Flow{0}, std::nullopt,
                              0});
  }
  detail::wrap_with_super_nodes(g, required + 1, r);
  McfSolution sol = solve_mcf(r.network);
  PathMinResult out;
  if (sol.status != McfStatus::kOptimal) return out;
  out.status = SolveStatus::kOptimal;
  out.count = sol.cost;
  FlowAssignment cover;
  cover.value.resize(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e)
    cover.value[e] = sol.flow[r.edge_arc[e]];
  out.paths = trivial_decomposition(g, cover).paths;
  out.uniform_weight = out.paths.empty() ? 0 : lower_sum;
  return out;
}

}  // namespace flowdec
