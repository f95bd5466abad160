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

// Integer model for weighted inexact flow decomposition: pick at most k_max
// s-t paths (one per slot) and integer weights so that every edge's covered
// amount lands inside its bounds, minimizing path_cost * (paths used) +
// weight_cost * (total weight).
//
// Per slot i: binary y_i marks the slot used, binaries x_{i,e} trace a unit
// s-t path when y_i = 1, integer w_i in [0, w_max] is the slot weight, and
// z_{i,e} linearizes w_i * x_{i,e}. Coverage sums z over slots per edge.
// Aggregates sum_y and sum_w carry the whole objective, so incumbent-based
// domain filtering in the search acts directly on the two quantities that
// matter. Presolve installs valid bounds on both aggregates from the
// polynomial relaxations (minimum path cover of the lower bounds, minimum
// flow value), which replaces LP-relaxation bounding entirely.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowdec/branch_and_bound.hpp"
#include "flowdec/common.hpp"
#include "flowdec/graph.hpp"
#include "flowdec/linear_model.hpp"
#include "flowdec/poly_solvers.hpp"

namespace flowdec {

struct ObjectiveWeights {
  double path_cost = 1.0;    // per used slot
  double weight_cost = 1.0;  // per unit of total weight
};

struct BuildOptions {
  bool symmetry_breaking = true;  // order used slots first, weights sorted
  bool presolve_cuts = true;      // aggregate bounds + multiplicity rows
  bool zero_weight_slots = false;  // used slots may carry weight 0 (inert)
};

namespace detail {

// Edges sorted by the topological position of their tail (ties by index), so
// per-slot branching follows each walk from the source forward.
inline std::vector<int> forward_edge_order(const Graph& g) {
  std::vector<int> order(static_cast<size_t>(g.num_edges()));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> topo = g.topological_order();
  std::vector<int> pos(static_cast<size_t>(g.num_nodes()), 0);
  for (size_t i = 0; i < topo.size(); ++i)
    pos[static_cast<size_t>(topo[i])] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int c) {
    int pa = pos[static_cast<size_t>(g.node_index(g.edge(a).from))];
    int pc = pos[static_cast<size_t>(g.node_index(g.edge(c).from))];
    return pa != pc ? pa < pc : a < c;
  });
  return order;
}

// Follows unit out-edge choices from source to sink; chosen is indexed by
// edge and holds 0/1 flags.
inline Path traced_path(const Graph& g, const std::vector<Flow>& chosen) {
  std::vector<EdgeId> seq;
  int v = g.source_index();
  while (v != g.sink_index()) {
    int pick = -1;
    for (int e : g.out_edges(v)) {
      if (chosen[static_cast<size_t>(e)] == 1) {
        if (pick >= 0) throw Error("slot traces a branching walk");
        pick = e;
      }
    }
    if (pick < 0) throw Error("slot walk stalls before the sink");
    seq.push_back(g.edge(pick).id);
    v = g.node_index(g.edge(pick).to);
  }
  return Path{std::move(seq)};
}

}  // namespace detail

// Slots any optimum can need. A minimal-slot optimum routes every path
// through an edge pinned at its lower bound, so its path count never exceeds
// sum(lower); the source cut caps it too when every source edge is bounded.
inline Flow default_k_max(const Graph& g, const InexactBounds& b) {
  Flow lower_sum = 0;
  for (Flow lo : b.lower) lower_sum += lo;
  Flow k = std::max<Flow>(lower_sum, 1);
  Flow source_cap = 0;
  bool source_capped = true;
  for (int e : g.out_edges(g.source_index())) {
    if (!b.upper[e]) {
      source_capped = false;
      break;
    }
    source_cap += *b.upper[e];
  }
  if (source_capped) k = std::min(k, source_cap);
  return k;
}

// Largest weight any slot of some optimum can need. Reducing a weight to
// what its own edges still require keeps feasibility and never worsens the
// objective, so max(sum(lower), 1) always suffices; when every edge is
// bounded, the largest upper bound caps a path weight directly.
inline Flow default_w_max(const Graph& g, const InexactBounds& b) {
  Flow lower_sum = 0;
  for (Flow lo : b.lower) lower_sum += lo;
  Flow w = std::max<Flow>(lower_sum, 1);
  bool all_finite = true;
  Flow max_upper = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!b.upper[e]) {
      all_finite = false;
      break;
    }
    max_upper = std::max(max_upper, *b.upper[e]);
  }
  if (all_finite) w = std::min(w, max_upper);
  return w;
}

struct DecompositionModel {
  LinearModel model;
  Flow k_max = 0;
  Flow w_max = 0;
  std::vector<int> y, w;               // variable ids, [slot]
  std::vector<std::vector<int>> x, z;  // variable ids, [slot][edge]
  int sum_y = -1, sum_w = -1;
  bool presolved_infeasible = false;   // no feasible coverage flow exists
};

// Builds the slot model. k_max/w_max of 0 select the defaults above.
inline DecompositionModel build_decomposition_model(
    const Graph& g, const InexactBounds& b, const ObjectiveWeights& obj,
    Flow k_max = 0, Flow w_max = 0, const BuildOptions& opt = {}) {
  detail::check_bounds_shape(g, b);
  DecompositionModel dm;
  dm.k_max = k_max > 0 ? k_max : default_k_max(g, b);
  dm.w_max = w_max > 0 ? w_max : default_w_max(g, b);
  const int K = static_cast<int>(dm.k_max);
  const int E = g.num_edges();
  LinearModel& m = dm.model;

  // Branching follows variable order: slot use flags, then each slot's path
  // edges from the source forward, then its weight. Products and aggregates
  // go last; propagation pins them once the slot variables settle.
  std::vector<int> edge_order = detail::forward_edge_order(g);
  for (int i = 0; i < K; ++i)
    dm.y.push_back(m.add_variable("y" + std::to_string(i), 0, 1));
  for (int i = 0; i < K; ++i) {
    dm.x.emplace_back(static_cast<size_t>(E), -1);
    for (int e : edge_order)
      dm.x[static_cast<size_t>(i)][static_cast<size_t>(e)] = m.add_variable(
          "x" + std::to_string(i) + "_" + std::to_string(g.edge(e).id), 0, 1);
    dm.w.push_back(m.add_variable("w" + std::to_string(i), 0, dm.w_max));
  }
  for (int i = 0; i < K; ++i) {
    dm.z.emplace_back();
    for (int e = 0; e < E; ++e)
      dm.z.back().push_back(m.add_variable(
          "z" + std::to_string(i) + "_" + std::to_string(g.edge(e).id), 0,
          dm.w_max));
  }
  dm.sum_y = m.add_variable("sum_y", 0, dm.k_max);
  dm.sum_w = m.add_variable("sum_w", 0, dm.k_max * dm.w_max);
  m.set_objective_coeff(dm.sum_y, obj.path_cost);
  m.set_objective_coeff(dm.sum_w, obj.weight_cost);

  {
    std::vector<LinearTerm> ty, tw;
    for (int i = 0; i < K; ++i) {
      ty.push_back({dm.y[static_cast<size_t>(i)], 1});
      tw.push_back({dm.w[static_cast<size_t>(i)], 1});
    }
    ty.push_back({dm.sum_y, -1});
    tw.push_back({dm.sum_w, -1});
    m.add_constraint("def_sum_y", std::move(ty), Sense::kEq, 0);
    m.add_constraint("def_sum_w", std::move(tw), Sense::kEq, 0);
  }

  for (int i = 0; i < K; ++i) {
    const auto& xi = dm.x[static_cast<size_t>(i)];
    const std::string si = std::to_string(i);
    {
      std::vector<LinearTerm> t;
      for (int e : g.out_edges(g.source_index()))
        t.push_back({xi[static_cast<size_t>(e)], 1});
      t.push_back({dm.y[static_cast<size_t>(i)], -1});
      m.add_constraint("src" + si, std::move(t), Sense::kEq, 0);
    }
    {
      std::vector<LinearTerm> t;
      for (int e : g.in_edges(g.sink_index()))
        t.push_back({xi[static_cast<size_t>(e)], 1});
      t.push_back({dm.y[static_cast<size_t>(i)], -1});
      m.add_constraint("snk" + si, std::move(t), Sense::kEq, 0);
    }
    for (int v = 0; v < g.num_nodes(); ++v) {
      if (v == g.source_index() || v == g.sink_index()) continue;
      std::vector<LinearTerm> t;
      for (int e : g.in_edges(v)) t.push_back({xi[static_cast<size_t>(e)], 1});
      for (int e : g.out_edges(v))
        t.push_back({xi[static_cast<size_t>(e)], -1});
      if (t.empty()) continue;
      m.add_constraint("bal" + si + "_" + std::to_string(g.nodes()[v]),
                       std::move(t), Sense::kEq, 0);
    }
    if (!opt.zero_weight_slots)
      m.add_constraint("wuse" + si,
                       {{dm.w[static_cast<size_t>(i)], 1},
                        {dm.y[static_cast<size_t>(i)], -1}},
                       Sense::kGe, 0);
    m.add_constraint("wcap" + si,
                     {{dm.w[static_cast<size_t>(i)], 1},
                      {dm.y[static_cast<size_t>(i)], -dm.w_max}},
                     Sense::kLe, 0);
    for (int e = 0; e < E; ++e) {
      const std::string se = std::to_string(g.edge(e).id);
      const int xv = xi[static_cast<size_t>(e)];
      const int zv = dm.z[static_cast<size_t>(i)][static_cast<size_t>(e)];
      const int wv = dm.w[static_cast<size_t>(i)];
      m.add_constraint("zcap" + si + "_" + se, {{zv, 1}, {xv, -dm.w_max}},
                       Sense::kLe, 0);
      m.add_constraint("zw" + si + "_" + se, {{zv, 1}, {wv, -1}}, Sense::kLe,
                       0);
      m.add_constraint("zlink" + si + "_" + se,
                       {{zv, 1}, {wv, -1}, {xv, -dm.w_max}}, Sense::kGe,
                       -dm.w_max);
    }
  }

  for (int e = 0; e < E; ++e) {
    std::vector<LinearTerm> t;
    for (int i = 0; i < K; ++i)
      t.push_back({dm.z[static_cast<size_t>(i)][static_cast<size_t>(e)], 1});
    const std::string se = std::to_string(g.edge(e).id);
    if (b.lower[e] > 0)
      m.add_constraint("cov_lo" + se, t, Sense::kGe, b.lower[e]);
    if (b.upper[e])
      m.add_constraint("cov_hi" + se, std::move(t), Sense::kLe, *b.upper[e]);
  }

  if (opt.symmetry_breaking) {
    // Slots are interchangeable: force used slots first, weights sorted.
    for (int i = 0; i + 1 < K; ++i) {
      m.add_constraint("sym_y" + std::to_string(i),
                       {{dm.y[static_cast<size_t>(i)], 1},
                        {dm.y[static_cast<size_t>(i) + 1], -1}},
                       Sense::kGe, 0);
      m.add_constraint("sym_w" + std::to_string(i),
                       {{dm.w[static_cast<size_t>(i)], 1},
                        {dm.w[static_cast<size_t>(i) + 1], -1}},
                       Sense::kGe, 0);
    }
  }

  if (opt.presolve_cuts) {
    m.add_constraint("agg_wy", {{dm.sum_w, 1}, {dm.sum_y, -1}}, Sense::kGe,
                     0);
    for (int e = 0; e < E; ++e) {
      if (b.lower[e] <= 0) continue;
      if (dm.w_max <= 0) {
        dm.presolved_infeasible = true;
        continue;
      }
      std::vector<LinearTerm> t;
      for (int i = 0; i < K; ++i)
        t.push_back({dm.x[static_cast<size_t>(i)][static_cast<size_t>(e)], 1});
      m.add_constraint("mult" + std::to_string(g.edge(e).id), std::move(t),
                       Sense::kGe, detail::ceil_div(b.lower[e], dm.w_max));
    }
    WeightMinResult wm = solve_weight_min(g, b);
    if (wm.status != SolveStatus::kOptimal) {
      dm.presolved_infeasible = true;
      return dm;
    }
    InexactBounds lowers_only{
        b.lower, std::vector<OptFlow>(static_cast<size_t>(E), std::nullopt)};
    PathMinResult pm = solve_path_min_no_ub(g, lowers_only);
    if (pm.status != SolveStatus::kOptimal || pm.count > dm.k_max ||
        wm.total_weight > dm.k_max * dm.w_max) {
      dm.presolved_infeasible = true;
      return dm;
    }
    m.tighten_variable(dm.sum_y, pm.count, dm.k_max);
    m.tighten_variable(dm.sum_w, wm.total_weight, dm.k_max * dm.w_max);
  }
  return dm;
}

// Reads the used slots out of a solved assignment as weighted paths. Slots
// carrying weight 0 (possible only with zero_weight_slots) are dropped.
inline WeightedDecomposition extract_decomposition(
    const Graph& g, const DecompositionModel& dm,
    const std::vector<Flow>& assignment) {
  WeightedDecomposition d;
  for (size_t i = 0; i < dm.y.size(); ++i) {
    if (assignment[static_cast<size_t>(dm.y[i])] != 1) continue;
    Flow weight = assignment[static_cast<size_t>(dm.w[i])];
    if (weight <= 0) continue;
    std::vector<Flow> chosen;
    for (int xv : dm.x[i])
      chosen.push_back(assignment[static_cast<size_t>(xv)]);
    d.paths.push_back(detail::traced_path(g, chosen));
    d.weights.push_back(weight);
  }
  return d;
}

struct DecompositionSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  double bound = 0.0;
  WeightedDecomposition decomposition;
  int64_t nodes_explored = 0;
  double runtime_seconds = 0.0;
};

inline DecompositionSolution solve_decomposition(
    const Graph& g, const InexactBounds& b, const ObjectiveWeights& obj,
    const SolverConfig& config = {}, const BuildOptions& build_opt = {}) {
  DecompositionModel dm = build_decomposition_model(
      g, b, obj, config.k_max, config.w_max, build_opt);
  DecompositionSolution out;
  if (dm.presolved_infeasible) return out;  // status already kInfeasible
  BnbOptions bo;
  bo.time_limit = config.time_limit_master;
  SolveResult r = solve_model(dm.model, bo);
  out.status = r.status;
  out.objective = r.objective;
  out.bound = r.bound;
  out.nodes_explored = r.nodes_explored;
  out.runtime_seconds = r.runtime_seconds;
  if (!r.assignment.empty())
    out.decomposition = extract_decomposition(g, dm, r.assignment);
  return out;
}

}  // namespace flowdec
