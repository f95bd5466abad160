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

// Two-stage decomposition over a finite set of bound scenarios. The first
// stage commits before the scenario is known, the second stage reacts to it;
// the objective is (paths opened) + (largest summed weight any scenario
// needs). Two commitment levels are supported: opening a number of path
// slots while routing and weights both react per scenario, or fixing the
// path set itself so only the weights react. A slot a scenario does not
// need carries weight 0 there, which keeps feasibility monotone in the slot
// count.
//
// Both levels are solved by the same generate-and-cut loop: a master model
// over a growing subset of scenarios yields the lower bound and a candidate
// first stage, the per-scenario recourse check yields upper bounds, and each
// round either enrolls the worst scenario or adds a cut rejecting the failed
// first stage. A pooled per-scenario baseline (solve each scenario alone,
// count distinct paths once) provides the comparison heuristic.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flowdec/branch_and_bound.hpp"
#include "flowdec/common.hpp"
#include "flowdec/decomposition_model.hpp"
#include "flowdec/graph.hpp"
#include "flowdec/linear_model.hpp"
#include "flowdec/poly_solvers.hpp"
#include "flowdec/robust.hpp"

namespace flowdec {

// What the first stage commits to: only how many paths run (routing and
// weights adapt per scenario), the full path set (weights adapt), or the
// pooled per-scenario baseline.
enum class Formulation { kAdjustablePaths, kAdjustableWeights, kPooled };

struct FirstStage {
  std::vector<Flow> y;                 // 0/1 slot activations
  std::vector<std::vector<Flow>> x;    // [slot][edge] 0/1; set when the
                                       // path set itself is first-stage
  int64_t count() const {
    int64_t c = 0;
    for (Flow v : y) c += v;
    return c;
  }
};

// Rejects first stages a scenario proved unworkable. A positive min_count
// demands at least that many open slots; otherwise the stored 0/1 pattern
// over (y, x) is excluded point-wise.
struct Cut {
  int64_t min_count = 0;
  std::vector<Flow> y_pattern;
  std::vector<std::vector<Flow>> x_pattern;
};

// Minimum number of paths needed to cover every edge that carries a positive
// lower bound in some scenario (upper bounds ignored). Seeds the search's
// lower bound and floors the slot budget of the shared-path model, whose
// paths must cover every scenario's required edges at once.
inline int64_t presolve_lower_bound(const Graph& g,
                                    const std::vector<InexactBounds>& set) {
  if (set.empty()) return 0;
  InexactBounds merged{
      std::vector<Flow>(static_cast<size_t>(g.num_edges()), 0),
      std::vector<OptFlow>(static_cast<size_t>(g.num_edges()), std::nullopt)};
  for (const InexactBounds& b : set) {
    detail::check_bounds_shape(g, b);
    for (int e = 0; e < g.num_edges(); ++e)
      merged.lower[static_cast<size_t>(e)] = std::max(
          merged.lower[static_cast<size_t>(e)], b.lower[static_cast<size_t>(e)]);
  }
  PathMinResult pm = solve_path_min_no_ub(g, merged);
  return pm.status == SolveStatus::kOptimal ? pm.count : 0;
}

// Slot budget: every scenario's own optimum fits in its deterministic
// default, and scenarios can stack their paths onto the same leading slots,
// so the maximum over scenarios suffices when routing adapts. The
// shared-path variant is additionally floored by the cover bound above.
inline Flow adjustable_k_max(const Graph& g,
                             const std::vector<InexactBounds>& set,
                             Formulation f) {
  Flow k = 1;
  for (const InexactBounds& b : set) k = std::max(k, default_k_max(g, b));
  if (f == Formulation::kAdjustableWeights)
    k = std::max<Flow>(k, presolve_lower_bound(g, set));
  return k;
}

// Weight cap: within each scenario a recourse weight reduces to what its own
// path's bounds still need, so the per-scenario deterministic default covers
// every scenario's recourse.
inline Flow adjustable_w_max(const Graph& g,
                             const std::vector<InexactBounds>& set) {
  Flow w = 1;
  for (const InexactBounds& b : set) w = std::max(w, default_w_max(g, b));
  return w;
}

struct MasterModel {
  LinearModel model;
  Flow k_max = 0;
  Flow w_max = 0;
  std::vector<int> y;                            // shared slot activations
  std::vector<std::vector<std::vector<int>>> x;  // [block][slot][edge]; a
                                                 // single block when the
                                                 // path set is shared
  std::vector<std::vector<int>> w;               // [scenario][slot]
  std::vector<std::vector<std::vector<int>>> z;  // [scenario][slot][edge]
  int sum_y = -1;
  int w_cap = -1;  // largest summed weight over enrolled scenarios
};

// Builds the first-stage model over the enrolled scenarios, with per-slot
// unit-path rows per routing block, per-scenario coverage via linearized
// weight-times-route products, and the pending cuts appended. Objective:
// slots opened plus the weight cap. k_max/w_max of 0 pick the defaults.
inline MasterModel build_master(Formulation f, const Graph& g,
                                const std::vector<InexactBounds>& subset,
                                Flow k_max = 0, Flow w_max = 0,
                                const std::vector<Cut>& cuts = {}) {
  if (f == Formulation::kPooled)
    throw std::invalid_argument("pooled baseline has no master model");
  if (subset.empty())
    throw std::invalid_argument("master needs at least one scenario");
  for (const InexactBounds& b : subset) detail::check_bounds_shape(g, b);
  MasterModel mm;
  mm.k_max = k_max > 0 ? k_max : adjustable_k_max(g, subset, f);
  mm.w_max = w_max > 0 ? w_max : adjustable_w_max(g, subset);
  const int K = static_cast<int>(mm.k_max);
  const int E = g.num_edges();
  const size_t S = subset.size();
  const size_t B = f == Formulation::kAdjustablePaths ? S : 1;
  LinearModel& m = mm.model;
  const std::vector<int> edge_order = detail::forward_edge_order(g);

  for (int i = 0; i < K; ++i)
    mm.y.push_back(m.add_variable("y" + std::to_string(i), 0, 1));
  mm.x.resize(B);
  mm.w.resize(S);
  for (size_t blk = 0; blk < B; ++blk) {
    for (int i = 0; i < K; ++i) {
      mm.x[blk].emplace_back(static_cast<size_t>(E), -1);
      for (int e : edge_order)
        mm.x[blk][static_cast<size_t>(i)][static_cast<size_t>(e)] =
            m.add_variable("x" + std::to_string(blk) + "_" + std::to_string(i) +
                               "_" + std::to_string(g.edge(e).id),
                           0, 1);
      if (B == S)  // weights branch right after their scenario's routing
        mm.w[blk].push_back(
            m.add_variable("w" + std::to_string(blk) + "_" + std::to_string(i),
                           0, mm.w_max));
    }
  }
  if (B != S) {
    for (size_t s = 0; s < S; ++s)
      for (int i = 0; i < K; ++i)
        mm.w[s].push_back(
            m.add_variable("w" + std::to_string(s) + "_" + std::to_string(i), 0,
                           mm.w_max));
  }
  mm.z.resize(S);
  for (size_t s = 0; s < S; ++s) {
    for (int i = 0; i < K; ++i) {
      mm.z[s].emplace_back();
      for (int e = 0; e < E; ++e)
        mm.z[s].back().push_back(
            m.add_variable("z" + std::to_string(s) + "_" + std::to_string(i) +
                               "_" + std::to_string(g.edge(e).id),
                           0, mm.w_max));
    }
  }
  mm.sum_y = m.add_variable("sum_y", 0, mm.k_max);
  mm.w_cap = m.add_variable("w_cap", 0, mm.k_max * mm.w_max);
  m.set_objective_coeff(mm.sum_y, 1.0);
  m.set_objective_coeff(mm.w_cap, 1.0);

  {
    std::vector<LinearTerm> t;
    for (int yv : mm.y) t.push_back({yv, 1});
    t.push_back({mm.sum_y, -1});
    m.add_constraint("def_sum_y", std::move(t), Sense::kEq, 0);
  }

  for (size_t blk = 0; blk < B; ++blk) {
    const std::string sb = std::to_string(blk) + "_";
    for (int i = 0; i < K; ++i) {
      const auto& xi = mm.x[blk][static_cast<size_t>(i)];
      const std::string si = sb + std::to_string(i);
      {
        std::vector<LinearTerm> t;
        for (int e : g.out_edges(g.source_index()))
          t.push_back({xi[static_cast<size_t>(e)], 1});
        t.push_back({mm.y[static_cast<size_t>(i)], -1});
        m.add_constraint("src" + si, std::move(t), Sense::kEq, 0);
      }
      {
        std::vector<LinearTerm> t;
        for (int e : g.in_edges(g.sink_index()))
          t.push_back({xi[static_cast<size_t>(e)], 1});
        t.push_back({mm.y[static_cast<size_t>(i)], -1});
        m.add_constraint("snk" + si, std::move(t), Sense::kEq, 0);
      }
      for (int v = 0; v < g.num_nodes(); ++v) {
        if (v == g.source_index() || v == g.sink_index()) continue;
        std::vector<LinearTerm> t;
        for (int e : g.in_edges(v))
          t.push_back({xi[static_cast<size_t>(e)], 1});
        for (int e : g.out_edges(v))
          t.push_back({xi[static_cast<size_t>(e)], -1});
        if (t.empty()) continue;
        m.add_constraint("bal" + si + "_" + std::to_string(g.nodes()[v]),
                         std::move(t), Sense::kEq, 0);
      }
    }
  }

  for (size_t s = 0; s < S; ++s) {
    const InexactBounds& b = subset[s];
    const size_t blk = B == S ? s : 0;
    const std::string ss = std::to_string(s);
    {
      std::vector<LinearTerm> t;
      for (int wv : mm.w[s]) t.push_back({wv, 1});
      t.push_back({mm.w_cap, -1});
      m.add_constraint("cap" + ss, std::move(t), Sense::kLe, 0);
    }
    for (int i = 0; i < K; ++i) {
      const std::string si = ss + "_" + std::to_string(i);
      const int wv = mm.w[s][static_cast<size_t>(i)];
      m.add_constraint(
          "wcap" + si,
          {{wv, 1}, {mm.y[static_cast<size_t>(i)], -mm.w_max}}, Sense::kLe, 0);
      for (int e = 0; e < E; ++e) {
        const std::string se = std::to_string(g.edge(e).id);
        const int xv = mm.x[blk][static_cast<size_t>(i)][static_cast<size_t>(e)];
        const int zv = mm.z[s][static_cast<size_t>(i)][static_cast<size_t>(e)];
        m.add_constraint("zcap" + si + "_" + se, {{zv, 1}, {xv, -mm.w_max}},
                         Sense::kLe, 0);
        m.add_constraint("zw" + si + "_" + se, {{zv, 1}, {wv, -1}}, Sense::kLe,
                         0);
        m.add_constraint("zlink" + si + "_" + se,
                         {{zv, 1}, {wv, -1}, {xv, -mm.w_max}}, Sense::kGe,
                         -mm.w_max);
      }
    }
    for (int e = 0; e < E; ++e) {
      std::vector<LinearTerm> t;
      for (int i = 0; i < K; ++i)
        t.push_back({mm.z[s][static_cast<size_t>(i)][static_cast<size_t>(e)],
                     1});
      const std::string se = std::to_string(g.edge(e).id);
      if (b.lower[static_cast<size_t>(e)] > 0)
        m.add_constraint("cov_lo" + ss + "_" + se, t, Sense::kGe,
                         b.lower[static_cast<size_t>(e)]);
      if (b.upper[static_cast<size_t>(e)])
        m.add_constraint("cov_hi" + ss + "_" + se, std::move(t), Sense::kLe,
                         *b.upper[static_cast<size_t>(e)]);
    }
  }

  // Slots are interchangeable: open slots first; and one shared reordering
  // can additionally sort the first scenario's weights.
  for (int i = 0; i + 1 < K; ++i) {
    m.add_constraint("sym_y" + std::to_string(i),
                     {{mm.y[static_cast<size_t>(i)], 1},
                      {mm.y[static_cast<size_t>(i) + 1], -1}},
                     Sense::kGe, 0);
    m.add_constraint("sym_w" + std::to_string(i),
                     {{mm.w[0][static_cast<size_t>(i)], 1},
                      {mm.w[0][static_cast<size_t>(i) + 1], -1}},
                     Sense::kGe, 0);
  }

  // Valid floors from the polynomial relaxations, per enrolled scenario.
  Flow cover_floor = 0;
  Flow weight_floor = 0;
  for (size_t s = 0; s < S; ++s) {
    const InexactBounds& b = subset[s];
    const size_t blk = B == S ? s : 0;
    const std::string ss = std::to_string(s);
    WeightMinResult wm = solve_weight_min(g, b);
    if (wm.status != SolveStatus::kOptimal) {
      m.add_constraint("void" + ss, {}, Sense::kGe, 1);  // no coverage flow
      continue;
    }
    weight_floor = std::max(weight_floor, wm.total_weight);
    if (wm.total_weight > 0) {
      std::vector<LinearTerm> t;
      for (int wv : mm.w[s]) t.push_back({wv, 1});
      m.add_constraint("wmin" + ss, std::move(t), Sense::kGe, wm.total_weight);
    }
    if (f == Formulation::kAdjustablePaths) {
      InexactBounds lowers_only{
          b.lower,
          std::vector<OptFlow>(static_cast<size_t>(E), std::nullopt)};
      PathMinResult pm = solve_path_min_no_ub(g, lowers_only);
      if (pm.status == SolveStatus::kOptimal)
        cover_floor = std::max<Flow>(cover_floor, pm.count);
    }
    for (int e = 0; e < E; ++e) {
      if (b.lower[static_cast<size_t>(e)] <= 0) continue;
      std::vector<LinearTerm> t;
      for (int i = 0; i < K; ++i)
        t.push_back({mm.x[blk][static_cast<size_t>(i)][static_cast<size_t>(e)],
                     1});
      m.add_constraint(
          "mult" + ss + "_" + std::to_string(g.edge(e).id), std::move(t),
          Sense::kGe,
          detail::ceil_div(b.lower[static_cast<size_t>(e)], mm.w_max));
    }
  }
  if (f == Formulation::kAdjustableWeights)
    cover_floor = static_cast<Flow>(presolve_lower_bound(g, subset));
  if (cover_floor > mm.k_max || weight_floor > mm.k_max * mm.w_max) {
    m.add_constraint("void", {}, Sense::kGe, 1);
  } else {
    m.tighten_variable(mm.sum_y, cover_floor, mm.k_max);
    m.tighten_variable(mm.w_cap, weight_floor, mm.k_max * mm.w_max);
  }

  for (size_t j = 0; j < cuts.size(); ++j) {
    const Cut& c = cuts[j];
    const std::string name = "cut" + std::to_string(j);
    if (c.min_count > 0) {
      std::vector<LinearTerm> t;
      for (int yv : mm.y) t.push_back({yv, 1});
      m.add_constraint(name, std::move(t), Sense::kGe, c.min_count);
      continue;
    }
    if (c.y_pattern.size() != static_cast<size_t>(K) ||
        c.x_pattern.size() != static_cast<size_t>(K))
      throw std::invalid_argument("cut pattern does not fit the model");
    std::vector<LinearTerm> t;
    Flow ones = 0;
    for (int i = 0; i < K; ++i) {
      if (c.y_pattern[static_cast<size_t>(i)] == 1) {
        t.push_back({mm.y[static_cast<size_t>(i)], -1});
        ++ones;
      } else {
        t.push_back({mm.y[static_cast<size_t>(i)], 1});
      }
      if (c.x_pattern[static_cast<size_t>(i)].size() !=
          static_cast<size_t>(E))
        throw std::invalid_argument("cut pattern does not fit the model");
      for (int e = 0; e < E; ++e) {
        const int xv = mm.x[0][static_cast<size_t>(i)][static_cast<size_t>(e)];
        if (c.x_pattern[static_cast<size_t>(i)][static_cast<size_t>(e)] == 1) {
          t.push_back({xv, -1});
          ++ones;
        } else {
          t.push_back({xv, 1});
        }
      }
    }
    m.add_constraint(name, std::move(t), Sense::kGe, 1 - ones);
  }
  return mm;
}

inline FirstStage extract_first_stage(const MasterModel& mm, Formulation f,
                                      const std::vector<Flow>& assignment) {
  FirstStage fs;
  for (int yv : mm.y) fs.y.push_back(assignment[static_cast<size_t>(yv)]);
  if (f == Formulation::kAdjustableWeights) {
    for (const auto& row : mm.x[0]) {
      fs.x.emplace_back();
      for (int xv : row)
        fs.x.back().push_back(assignment[static_cast<size_t>(xv)]);
    }
  }
  return fs;
}

struct ScenarioRecourse {
  SolveStatus status = SolveStatus::kInfeasible;
  WeightedDecomposition decomposition;  // the paths the scenario weights
  Flow total_weight = 0;
};

struct SubOutcome {
  // kOptimal: every scenario solved to proven minimum weight; kFeasible:
  // every scenario has a recourse but some minimum is unproven;
  // kInfeasible/kTimeLimit: blocking_scenario is the first one that
  // rejected the first stage or ran out of time.
  SolveStatus status = SolveStatus::kInfeasible;
  size_t blocking_scenario = 0;
  size_t worst_scenario = 0;  // largest summed weight, ties to lowest index
  Flow worst_weight = 0;
  std::vector<ScenarioRecourse> per_scenario;
};

// Checks a first stage against every scenario independently. With routing
// adjustable, each scenario solves a fixed-slot decomposition minimizing
// total weight (slots may go inert at weight 0); with routing fixed, each
// scenario only weighs the given paths.
inline SubOutcome solve_subproblem(Formulation f, const Graph& g,
                                   const FirstStage& first_stage,
                                   const std::vector<InexactBounds>& scenarios,
                                   Flow w_max = 0,
                                   const SolverConfig& config = {}) {
  if (f == Formulation::kPooled)
    throw std::invalid_argument("pooled baseline has no subproblem");
  if (scenarios.empty())
    throw std::invalid_argument("subproblem needs at least one scenario");
  const Flow wb = w_max > 0 ? w_max : adjustable_w_max(g, scenarios);
  const int64_t k = first_stage.count();
  SubOutcome out;

  std::vector<Path> fixed;  // open slots' paths when routing is first-stage
  std::vector<std::vector<char>> on_edge;
  if (f == Formulation::kAdjustableWeights) {
    if (first_stage.x.size() != first_stage.y.size())
      throw std::invalid_argument("first stage is missing its paths");
    for (size_t i = 0; i < first_stage.y.size(); ++i) {
      if (first_stage.y[i] != 1) continue;
      fixed.push_back(detail::traced_path(g, first_stage.x[i]));
      on_edge.emplace_back(static_cast<size_t>(g.num_edges()), 0);
      for (EdgeId id : fixed.back().edges)
        on_edge.back()[static_cast<size_t>(g.edge_index(id))] = 1;
    }
  }

  for (size_t s = 0; s < scenarios.size(); ++s) {
    const InexactBounds& b = scenarios[s];
    detail::check_bounds_shape(g, b);
    ScenarioRecourse rec;
    if (f == Formulation::kAdjustablePaths && k == 0) {
      bool covered = true;
      for (int e = 0; e < g.num_edges(); ++e)
        if (b.lower[static_cast<size_t>(e)] > 0 ||
            (b.upper[static_cast<size_t>(e)] &&
             *b.upper[static_cast<size_t>(e)] < 0))
          covered = false;
      if (!covered) {
        out.status = SolveStatus::kInfeasible;
        out.blocking_scenario = s;
        return out;
      }
      rec.status = SolveStatus::kOptimal;
    } else if (f == Formulation::kAdjustablePaths) {
      BuildOptions bo;
      bo.zero_weight_slots = true;
      DecompositionModel dm = build_decomposition_model(
          g, b, ObjectiveWeights{0.0, 1.0}, k, wb, bo);
      if (dm.presolved_infeasible) {
        out.status = SolveStatus::kInfeasible;
        out.blocking_scenario = s;
        return out;
      }
      for (int yv : dm.y) dm.model.tighten_variable(yv, 1, 1);
      BnbOptions so;
      so.time_limit = config.time_limit_sub;
      SolveResult r = solve_model(dm.model, so);
      if (r.status == SolveStatus::kInfeasible) {
        out.status = SolveStatus::kInfeasible;
        out.blocking_scenario = s;
        return out;
      }
      if (r.assignment.empty()) {
        out.status = SolveStatus::kTimeLimit;
        out.blocking_scenario = s;
        return out;
      }
      rec.status = r.status;
      rec.decomposition = extract_decomposition(g, dm, r.assignment);
      rec.total_weight = rec.decomposition.total_weight();
    } else {
      LinearModel m;
      std::vector<int> wv;
      for (size_t j = 0; j < fixed.size(); ++j)
        wv.push_back(m.add_variable("w" + std::to_string(j), 0, wb));
      int total = m.add_variable("sum_w", 0,
                                 static_cast<Flow>(fixed.size()) * wb);
      m.set_objective_coeff(total, 1.0);
      {
        std::vector<LinearTerm> t;
        for (int v : wv) t.push_back({v, 1});
        t.push_back({total, -1});
        m.add_constraint("def_sum_w", std::move(t), Sense::kEq, 0);
      }
      for (int e = 0; e < g.num_edges(); ++e) {
        std::vector<LinearTerm> t;
        for (size_t j = 0; j < fixed.size(); ++j)
          if (on_edge[j][static_cast<size_t>(e)]) t.push_back({wv[j], 1});
        const std::string se = std::to_string(g.edge(e).id);
        if (b.lower[static_cast<size_t>(e)] > 0)
          m.add_constraint("cov_lo" + se, t, Sense::kGe,
                           b.lower[static_cast<size_t>(e)]);
        if (b.upper[static_cast<size_t>(e)])
          m.add_constraint("cov_hi" + se, std::move(t), Sense::kLe,
                           *b.upper[static_cast<size_t>(e)]);
      }
      BnbOptions so;
      so.time_limit = config.time_limit_sub;
      SolveResult r = solve_model(m, so);
      if (r.status == SolveStatus::kInfeasible) {
        out.status = SolveStatus::kInfeasible;
        out.blocking_scenario = s;
        return out;
      }
      if (r.assignment.empty()) {
        out.status = SolveStatus::kTimeLimit;
        out.blocking_scenario = s;
        return out;
      }
      rec.status = r.status;
      for (size_t j = 0; j < fixed.size(); ++j) {
        Flow weight = r.assignment[static_cast<size_t>(wv[j])];
        if (weight <= 0) continue;
        rec.decomposition.paths.push_back(fixed[j]);
        rec.decomposition.weights.push_back(weight);
      }
      rec.total_weight = rec.decomposition.total_weight();
    }
    if (rec.total_weight > out.worst_weight) {
      out.worst_weight = rec.total_weight;
      out.worst_scenario = s;
    }
    out.per_scenario.push_back(std::move(rec));
  }
  out.status = SolveStatus::kOptimal;
  for (const ScenarioRecourse& rec : out.per_scenario)
    if (rec.status != SolveStatus::kOptimal) out.status = SolveStatus::kFeasible;
  return out;
}

// Cut for a first stage some scenario rejected: with adjustable routing any
// same-or-smaller slot count fails the same scenario (inert slots make
// feasibility monotone in the count), so demand one more; with fixed routing
// only this exact pattern is known bad, so exclude just it.
inline Cut make_cut(Formulation f, const FirstStage& first_stage) {
  Cut c;
  if (f == Formulation::kAdjustablePaths) {
    c.min_count = first_stage.count() + 1;
  } else {
    c.y_pattern = first_stage.y;
    c.x_pattern = first_stage.x;
  }
  return c;
}

struct AdjustableResult {
  Formulation formulation = Formulation::kAdjustablePaths;
  SolveStatus status = SolveStatus::kInfeasible;
  int64_t slot_count = 0;  // first-stage paths opened
  Flow worst_weight = 0;   // largest summed recourse weight over scenarios
  double objective = 0.0;  // slot_count + worst_weight
  std::vector<Path> first_stage_paths;     // shared or pooled set; empty
                                           // when routing adapts
  std::vector<ScenarioRecourse> recourse;  // one entry per scenario
  int64_t infeasible_scenario = -1;
  int64_t iterations = 0;
  double runtime_seconds = 0.0;
};

struct CcgIteration {
  int64_t iteration = 0;       // 1-based
  double lower_bound = 0.0;    // master value after this round
  double upper_bound = 0.0;    // running minimum after this round
  double sub_value = 0.0;      // this round's raw first stage + worst weight
  bool sub_feasible = false;
  int64_t scenario_added = -1;
  double elapsed_seconds = 0.0;
};

struct CcgState {
  double lower_bound = -std::numeric_limits<double>::infinity();
  double upper_bound = std::numeric_limits<double>::infinity();
  int64_t iterations = 0;
  std::vector<size_t> active;  // scenarios enrolled in the master
  std::vector<Cut> cuts;
  FirstStage incumbent;  // empty y when no feasible first stage was seen
  std::vector<CcgIteration> log;
};

struct CcgOutcome {
  AdjustableResult result;
  CcgState state;
};

// Solves each scenario on its own, then pools the distinct paths (compared
// by edge sequence) and charges the worst scenario's summed weight. An upper
// bound on the shared-path optimum whenever the pool fits the slot budget.
inline AdjustableResult naive_solve(const Graph& g,
                                    const DiscreteUncertainty& u,
                                    const SolverConfig& config = {}) {
  if (u.scenarios.empty())
    throw std::invalid_argument("scenario set is empty");
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  AdjustableResult res;
  res.formulation = Formulation::kPooled;
  std::vector<std::vector<EdgeId>> pool;
  bool all_optimal = true;
  for (size_t s = 0; s < u.scenarios.size(); ++s) {
    if (elapsed() > config.time_limit_total) {
      res.status = SolveStatus::kTimeLimit;
      res.runtime_seconds = elapsed();
      return res;
    }
    DecompositionSolution sol =
        solve_deterministic(g, u.scenarios[s], ObjectiveWeights{1.0, 1.0},
                            config);
    if (sol.status == SolveStatus::kInfeasible ||
        (sol.status == SolveStatus::kTimeLimit &&
         sol.decomposition.paths.empty())) {
      res.status = sol.status;
      res.infeasible_scenario =
          sol.status == SolveStatus::kInfeasible ? static_cast<int64_t>(s)
                                                 : res.infeasible_scenario;
      res.runtime_seconds = elapsed();
      return res;
    }
    if (sol.status != SolveStatus::kOptimal) all_optimal = false;
    ScenarioRecourse rec;
    rec.status = sol.status;
    rec.decomposition = sol.decomposition;
    rec.total_weight = sol.decomposition.total_weight();
    res.worst_weight = std::max(res.worst_weight, rec.total_weight);
    for (const Path& p : sol.decomposition.paths)
      if (std::find(pool.begin(), pool.end(), p.edges) == pool.end())
        pool.push_back(p.edges);
    res.recourse.push_back(std::move(rec));
  }
  res.slot_count = static_cast<int64_t>(pool.size());
  res.objective = static_cast<double>(res.slot_count + res.worst_weight);
  for (std::vector<EdgeId>& edges : pool)
    res.first_stage_paths.push_back(Path{std::move(edges)});
  res.status = all_optimal ? SolveStatus::kOptimal : SolveStatus::kFeasible;
  res.runtime_seconds = elapsed();
  return res;
}

// The generate-and-cut loop: enroll scenario 0, then alternate master solves
// (lower bound, candidate first stage) with full recourse checks (upper
// bound or an infeasibility cut) until the bounds meet. Each round enrolls
// the worst or blocking scenario; the reported upper bound is the running
// minimum, with the raw per-round value kept in the log.
inline CcgOutcome ccg_solve(Formulation f, const Graph& g,
                            const DiscreteUncertainty& u,
                            const SolverConfig& config = {}) {
  if (f == Formulation::kPooled)
    throw std::invalid_argument("pooled baseline has no master; use naive_solve");
  if (u.scenarios.empty())
    throw std::invalid_argument("scenario set is empty");
  const std::vector<InexactBounds>& all = u.scenarios;
  for (const InexactBounds& b : all) detail::check_bounds_shape(g, b);
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  const Flow K = config.k_max > 0 ? config.k_max : adjustable_k_max(g, all, f);
  const Flow W = config.w_max > 0 ? config.w_max : adjustable_w_max(g, all);

  CcgOutcome out;
  out.result.formulation = f;
  CcgState& st = out.state;
  // Slot-count floor: a shared path set must cover the union of required
  // edges, while adjustable routing only has to cover each scenario alone.
  if (f == Formulation::kAdjustableWeights) {
    st.lower_bound = static_cast<double>(presolve_lower_bound(g, all));
  } else {
    int64_t floor_count = 0;
    for (const InexactBounds& b : all)
      floor_count = std::max(floor_count, presolve_lower_bound(g, {b}));
    st.lower_bound = static_cast<double>(floor_count);
  }
  st.active = {0};
  bool have_incumbent = false;
  FirstStage best_fs;
  std::vector<ScenarioRecourse> best_recourse;
  Flow best_worst = 0;
  SolveStatus final_status = SolveStatus::kTimeLimit;

  while (true) {
    if (st.upper_bound - st.lower_bound <= config.epsilon) {
      final_status = SolveStatus::kOptimal;
      break;
    }
    double remaining = config.time_limit_total - elapsed();
    if (remaining <= 0) break;

    std::vector<InexactBounds> subset;
    for (size_t idx : st.active) subset.push_back(all[idx]);
    MasterModel mm = build_master(f, g, subset, K, W, st.cuts);
    BnbOptions mo;
    mo.time_limit = std::min(config.time_limit_master, remaining);
    SolveResult mr = solve_model(mm.model, mo);
    if (mr.status == SolveStatus::kInfeasible) {
      final_status = SolveStatus::kInfeasible;
      break;
    }
    bool master_optimal = mr.status == SolveStatus::kOptimal;
    if (mr.assignment.empty()) {
      // Out of master time without a point: push on to the first feasible
      // one; its value is no valid floor, so the lower bound stays put.
      remaining = config.time_limit_total - elapsed();
      if (remaining <= 0) break;
      BnbOptions fallback;
      fallback.time_limit = remaining;
      fallback.stop_at_first_incumbent = true;
      mr = solve_model(mm.model, fallback);
      master_optimal = false;
      if (mr.status == SolveStatus::kInfeasible) {
        final_status = SolveStatus::kInfeasible;
        break;
      }
      if (mr.assignment.empty()) break;
    }
    if (master_optimal) st.lower_bound = mr.objective;
    FirstStage fs = extract_first_stage(mm, f, mr.assignment);

    remaining = config.time_limit_total - elapsed();
    if (remaining <= 0) break;
    SolverConfig sub_cfg = config;
    sub_cfg.time_limit_sub = std::min(config.time_limit_sub, remaining);
    SubOutcome sub = solve_subproblem(f, g, fs, all, W, sub_cfg);

    st.iterations += 1;
    CcgIteration row;
    row.iteration = st.iterations;
    row.lower_bound = st.lower_bound;
    if (sub.status == SolveStatus::kTimeLimit) {
      row.upper_bound = st.upper_bound;
      row.elapsed_seconds = elapsed();
      st.log.push_back(row);
      break;
    }
    if (sub.status == SolveStatus::kInfeasible) {
      st.cuts.push_back(make_cut(f, fs));
      if (std::find(st.active.begin(), st.active.end(),
                    sub.blocking_scenario) == st.active.end()) {
        st.active.push_back(sub.blocking_scenario);
        row.scenario_added = static_cast<int64_t>(sub.blocking_scenario);
      }
    } else {
      row.sub_feasible = true;
      const double raw = static_cast<double>(fs.count() + sub.worst_weight);
      row.sub_value = raw;
      if (raw < st.upper_bound) {
        st.upper_bound = raw;
        best_fs = fs;
        best_recourse = std::move(sub.per_scenario);
        best_worst = sub.worst_weight;
        have_incumbent = true;
        st.incumbent = best_fs;
      }
      if (std::find(st.active.begin(), st.active.end(), sub.worst_scenario) ==
          st.active.end()) {
        st.active.push_back(sub.worst_scenario);
        row.scenario_added = static_cast<int64_t>(sub.worst_scenario);
      }
    }
    row.upper_bound = st.upper_bound;
    row.elapsed_seconds = elapsed();
    st.log.push_back(row);
  }

  AdjustableResult& res = out.result;
  res.status = final_status;
  res.iterations = st.iterations;
  if (have_incumbent) {
    res.slot_count = best_fs.count();
    res.worst_weight = best_worst;
    res.objective = static_cast<double>(res.slot_count + best_worst);
    res.recourse = std::move(best_recourse);
    if (f == Formulation::kAdjustableWeights) {
      for (size_t i = 0; i < best_fs.y.size(); ++i)
        if (best_fs.y[i] == 1)
          res.first_stage_paths.push_back(detail::traced_path(g, best_fs.x[i]));
    }
  }
  res.runtime_seconds = elapsed();
  return out;
}

}  // namespace flowdec
