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

#include "flowdec/adjustable.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "flowdec/branch_and_bound.hpp"
#include "flowdec/graph.hpp"
#include "support.hpp"

namespace flowdec {
namespace {

using testing::brute_force_reference;
using testing::chain_graph;
using testing::parallel_graph;
using testing::random_dag;
using testing::random_flow;
using testing::small_exact_bounds;
using testing::small_graph;

InexactBounds bounds_of(std::vector<Flow> lower, std::vector<OptFlow> upper) {
  return InexactBounds{std::move(lower), std::move(upper)};
}

InexactBounds pinned(std::vector<Flow> value) {
  std::vector<OptFlow> upper(value.begin(), value.end());
  return InexactBounds{std::move(value), std::move(upper)};
}

FirstStage open_slots(int k) {
  FirstStage fs;
  fs.y.assign(static_cast<size_t>(k), 1);
  return fs;
}

FirstStage fixed_paths(const Graph& g,
                       const std::vector<std::vector<EdgeId>>& paths) {
  FirstStage fs;
  for (const std::vector<EdgeId>& seq : paths) {
    fs.y.push_back(1);
    std::vector<Flow> row(static_cast<size_t>(g.num_edges()), 0);
    for (EdgeId id : seq) row[static_cast<size_t>(g.edge_index(id))] = 1;
    fs.x.push_back(std::move(row));
  }
  return fs;
}

TEST(PresolveBound, CoversTheMergedLowerBounds) {
  Graph g = small_graph();
  EXPECT_EQ(presolve_lower_bound(g, {small_exact_bounds()}), 5);

  Graph p = parallel_graph(2);
  InexactBounds zero = bounds_of({0, 0}, {std::nullopt, std::nullopt});
  EXPECT_EQ(presolve_lower_bound(p, {zero}), 0);

  InexactBounds left = bounds_of({1, 0}, {std::nullopt, std::nullopt});
  InexactBounds right = bounds_of({0, 1}, {std::nullopt, std::nullopt});
  EXPECT_EQ(presolve_lower_bound(p, {left}), 1);
  EXPECT_EQ(presolve_lower_bound(p, {left, right}), 2);
}

TEST(AdjustableCaps, TrackTheHungriestScenario) {
  Graph g = small_graph();
  std::vector<InexactBounds> set = {small_exact_bounds(), small_exact_bounds()};
  EXPECT_EQ(adjustable_k_max(g, set, Formulation::kAdjustablePaths), 10);
  EXPECT_EQ(adjustable_k_max(g, set, Formulation::kAdjustableWeights), 10);
  EXPECT_EQ(adjustable_w_max(g, set), 7);

  // Disjoint single-edge demands: each scenario alone needs one slot, a
  // shared path set needs one per demanded edge.
  Graph p = parallel_graph(2);
  std::vector<InexactBounds> disjoint = {
      bounds_of({1, 0}, {std::nullopt, std::nullopt}),
      bounds_of({0, 1}, {std::nullopt, std::nullopt})};
  EXPECT_EQ(adjustable_k_max(p, disjoint, Formulation::kAdjustablePaths), 1);
  EXPECT_EQ(adjustable_k_max(p, disjoint, Formulation::kAdjustableWeights), 2);
  EXPECT_EQ(adjustable_w_max(p, disjoint), 1);
}

TEST(MasterModel, CarriesOneRoutingBlockPerScenarioWhenRoutingAdapts) {
  Graph g = small_graph();
  std::vector<InexactBounds> set = {small_exact_bounds(), small_exact_bounds()};
  MasterModel ma = build_master(Formulation::kAdjustablePaths, g, set);
  // 10 slots, 12 edges, 2 scenarios: 10 y + 2*120 x + 2*10 w + 2*120 z
  // + sum_y + w_cap.
  EXPECT_EQ(ma.model.num_variables(), 512);
  EXPECT_EQ(ma.x.size(), 2u);

  MasterModel la = build_master(Formulation::kAdjustableWeights, g, set);
  EXPECT_EQ(la.model.num_variables(), 392);  // one shared routing block
  EXPECT_EQ(la.x.size(), 1u);
}

TEST(SubProblem, FixedPathsForceTheUniqueWeights) {
  Graph g = small_graph();
  FirstStage fs = fixed_paths(g, {{1, 5, 8, 11},
                                  {0, 4, 9, 11},
                                  {0, 3, 8, 11},
                                  {1, 6, 11},
                                  {2, 7, 10}});
  SubOutcome out = solve_subproblem(Formulation::kAdjustableWeights, g, fs,
                                    {small_exact_bounds()}, 7);
  ASSERT_EQ(out.status, SolveStatus::kOptimal);
  ASSERT_EQ(out.per_scenario.size(), 1u);
  EXPECT_EQ(out.worst_weight, 10);
  std::vector<Flow> w = out.per_scenario[0].decomposition.weights;
  std::sort(w.begin(), w.end());
  EXPECT_EQ(w, (std::vector<Flow>{1, 2, 2, 2, 3}));
}

TEST(SubProblem, MissingCoverageRejectsTheFixedPaths) {
  Graph g = small_graph();
  // Without the path through b->c (edge 5), its demand of 1 is unreachable.
  FirstStage fs = fixed_paths(
      g, {{0, 4, 9, 11}, {0, 3, 8, 11}, {1, 6, 11}, {2, 7, 10}});
  SubOutcome out = solve_subproblem(Formulation::kAdjustableWeights, g, fs,
                                    {small_exact_bounds()}, 7);
  EXPECT_EQ(out.status, SolveStatus::kInfeasible);
  EXPECT_EQ(out.blocking_scenario, 0u);
}

TEST(SubProblem, ZeroSlotsOnlyCoverZeroDemand) {
  Graph g = chain_graph(1);
  SubOutcome idle = solve_subproblem(
      Formulation::kAdjustablePaths, g, open_slots(0),
      {bounds_of({0, 0}, {std::nullopt, std::nullopt})});
  EXPECT_EQ(idle.status, SolveStatus::kOptimal);
  EXPECT_EQ(idle.worst_weight, 0);

  SubOutcome starved = solve_subproblem(Formulation::kAdjustablePaths, g,
                                        open_slots(0), {pinned({1, 1})});
  EXPECT_EQ(starved.status, SolveStatus::kInfeasible);
  EXPECT_EQ(starved.blocking_scenario, 0u);
}

TEST(SubProblem, WorstScenarioPicksTheLargestWeightNeed) {
  Graph g = chain_graph(1);
  SubOutcome out = solve_subproblem(Formulation::kAdjustablePaths, g,
                                    open_slots(1),
                                    {pinned({2, 2}), pinned({5, 5})});
  ASSERT_EQ(out.status, SolveStatus::kOptimal);
  EXPECT_EQ(out.worst_scenario, 1u);
  EXPECT_EQ(out.worst_weight, 5);
  EXPECT_EQ(out.per_scenario[0].total_weight, 2);
  EXPECT_EQ(out.per_scenario[1].total_weight, 5);

  SubOutcome tie = solve_subproblem(Formulation::kAdjustablePaths, g,
                                    open_slots(1),
                                    {pinned({3, 3}), pinned({3, 3})});
  ASSERT_EQ(tie.status, SolveStatus::kOptimal);
  EXPECT_EQ(tie.worst_scenario, 0u);  // ties go to the lowest index
}

TEST(Cuts, MinimumCountForcesExtraSlotsOpen) {
  Graph p = parallel_graph(2);
  std::vector<InexactBounds> set = {pinned({1, 1})};
  MasterModel plain = build_master(Formulation::kAdjustablePaths, p, set, 4);
  SolveResult r0 = solve_model(plain.model);
  ASSERT_EQ(r0.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(r0.objective, 4.0);  // two slots, two units of weight

  Cut c;
  c.min_count = 3;
  MasterModel cutm =
      build_master(Formulation::kAdjustablePaths, p, set, 4, 0, {c});
  EXPECT_EQ(cutm.model.num_constraints(), plain.model.num_constraints() + 1);
  SolveResult r1 = solve_model(cutm.model);
  ASSERT_EQ(r1.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(r1.objective, 5.0);  // third slot opens but stays inert
  Flow open = 0;
  for (int yv : cutm.y) open += r1.assignment[static_cast<size_t>(yv)];
  EXPECT_EQ(open, 3);
}

TEST(Cuts, NoGoodExcludesExactlyTheRejectedPattern) {
  Graph p = parallel_graph(2);
  std::vector<InexactBounds> set = {
      bounds_of({1, 0}, {Flow{1}, std::nullopt})};
  MasterModel plain = build_master(Formulation::kAdjustableWeights, p, set);
  SolveResult r0 = solve_model(plain.model);
  ASSERT_EQ(r0.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(r0.objective, 2.0);
  FirstStage fs =
      extract_first_stage(plain, Formulation::kAdjustableWeights, r0.assignment);
  ASSERT_EQ(fs.count(), 1);

  Cut c = make_cut(Formulation::kAdjustableWeights, fs);
  EXPECT_EQ(c.min_count, 0);
  MasterModel cutm =
      build_master(Formulation::kAdjustableWeights, p, set, 0, 0, {c});
  EXPECT_EQ(cutm.model.num_constraints(), plain.model.num_constraints() + 1);
  // The only way to cover the demanded edge was the rejected pattern.
  SolveResult r1 = solve_model(cutm.model);
  EXPECT_EQ(r1.status, SolveStatus::kInfeasible);
}

TEST(Ccg, SingleScenarioCollapsesToTheDeterministicOptimum) {
  Graph g = small_graph();
  DiscreteUncertainty u{{small_exact_bounds()}};
  for (Formulation f :
       {Formulation::kAdjustablePaths, Formulation::kAdjustableWeights}) {
    CcgOutcome out = ccg_solve(f, g, u);
    ASSERT_EQ(out.result.status, SolveStatus::kOptimal);
    EXPECT_DOUBLE_EQ(out.result.objective, 15.0);
    EXPECT_EQ(out.result.slot_count, 5);
    EXPECT_EQ(out.result.worst_weight, 10);
    EXPECT_EQ(out.result.iterations, 1);
    EXPECT_DOUBLE_EQ(out.state.lower_bound, out.state.upper_bound);
    ASSERT_EQ(out.result.recourse.size(), 1u);
    Evaluation ev = evaluate(g, u.scenarios[0],
                             out.result.recourse[0].decomposition, 1.0, 1.0);
    EXPECT_TRUE(ev.feasible);
    ASSERT_EQ(out.state.log.size(), 1u);
    EXPECT_TRUE(out.state.log[0].sub_feasible);
    EXPECT_EQ(out.state.log[0].scenario_added, -1);
    if (f == Formulation::kAdjustableWeights)
      EXPECT_EQ(out.result.first_stage_paths.size(), 5u);
    else
      EXPECT_TRUE(out.result.first_stage_paths.empty());
  }
}

TEST(Ccg, DisjointDemandsShareOneAdaptiveSlot) {
  Graph p = parallel_graph(3);
  DiscreteUncertainty u{{bounds_of({1, 0, 0}, {std::nullopt, std::nullopt,
                                               std::nullopt}),
                         bounds_of({0, 1, 0}, {std::nullopt, std::nullopt,
                                               std::nullopt}),
                         bounds_of({0, 0, 1}, {std::nullopt, std::nullopt,
                                               std::nullopt})}};
  CcgOutcome ma = ccg_solve(Formulation::kAdjustablePaths, p, u);
  ASSERT_EQ(ma.result.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(ma.result.objective, 2.0);  // one slot, one unit anywhere

  CcgOutcome la = ccg_solve(Formulation::kAdjustableWeights, p, u);
  ASSERT_EQ(la.result.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(la.result.objective, 4.0);  // three fixed paths, one unit
  EXPECT_EQ(la.result.first_stage_paths.size(), 3u);
}

TEST(Ccg, MatchesTheTwoStageReferenceOnRandomPairs) {
  Rng rng(77);
  int compared = 0;
  for (int trial = 0; trial < 60 && compared < 12; ++trial) {
    Graph g = random_dag(rng, 5, 3);
    if (g.num_edges() > 8) continue;
    auto draw = [&] {
      FlowAssignment f = random_flow(rng, g, 2);
      InexactBounds b;
      for (int e = 0; e < g.num_edges(); ++e) {
        b.lower.push_back(std::max<Flow>(0, f.value[static_cast<size_t>(e)] -
                                                1));
        b.upper.push_back(f.value[static_cast<size_t>(e)] + 1);
      }
      return b;
    };
    DiscreteUncertainty u{{draw(), draw()}};
    SolverConfig cfg;
    cfg.k_max = 3;
    cfg.w_max = 3;

    std::optional<double> best;
    for (int k = 0; k <= 3; ++k) {
      double worst = 0.0;
      bool ok = true;
      for (const InexactBounds& b : u.scenarios) {
        std::optional<double> r = brute_force_reference(g, b, 0.0, 1.0, k, 3);
        if (!r) {
          ok = false;
          break;
        }
        worst = std::max(worst, *r);
      }
      if (ok && (!best || k + worst < *best)) best = k + worst;
    }

    CcgOutcome out = ccg_solve(Formulation::kAdjustablePaths, g, u, cfg);
    if (!best) {
      EXPECT_EQ(out.result.status, SolveStatus::kInfeasible)
          << "trial " << trial;
      continue;
    }
    ASSERT_EQ(out.result.status, SolveStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(out.result.objective, *best, 1e-6) << "trial " << trial;
    ASSERT_EQ(out.result.recourse.size(), u.scenarios.size());
    for (size_t s = 0; s < u.scenarios.size(); ++s) {
      const ScenarioRecourse& rec = out.result.recourse[s];
      Evaluation ev =
          evaluate(g, u.scenarios[s], rec.decomposition, 1.0, 1.0);
      EXPECT_TRUE(ev.feasible) << "trial " << trial << " scenario " << s;
      EXPECT_LE(static_cast<int64_t>(rec.decomposition.paths.size()),
                out.result.slot_count);
    }
    double prev_lb = -1e18;
    double prev_ub = 1e18;
    for (const CcgIteration& row : out.state.log) {
      EXPECT_GE(row.lower_bound, prev_lb - 1e-9);
      EXPECT_LE(row.upper_bound, prev_ub + 1e-9);
      prev_lb = row.lower_bound;
      prev_ub = row.upper_bound;
    }
    ++compared;
  }
  ASSERT_GE(compared, 12);
}

TEST(Ccg, CommitmentLevelsAndThePooledBaselineAreOrdered) {
  Rng rng(123);
  int compared = 0;
  for (int trial = 0; trial < 80 && compared < 20; ++trial) {
    Graph g = random_dag(rng, 5, 2);
    if (g.num_edges() > 7) continue;
    auto draw = [&] {
      FlowAssignment f = random_flow(rng, g, 2);
      InexactBounds b;
      for (int e = 0; e < g.num_edges(); ++e) {
        b.lower.push_back(std::max<Flow>(0, f.value[static_cast<size_t>(e)] -
                                                1));
        b.upper.push_back(f.value[static_cast<size_t>(e)] + 1);
      }
      return b;
    };
    DiscreteUncertainty u{{draw(), draw()}};
    CcgOutcome ma = ccg_solve(Formulation::kAdjustablePaths, g, u);
    CcgOutcome la = ccg_solve(Formulation::kAdjustableWeights, g, u);
    AdjustableResult nv = naive_solve(g, u);
    if (ma.result.status == SolveStatus::kOptimal &&
        la.result.status == SolveStatus::kOptimal) {
      EXPECT_LE(ma.result.objective, la.result.objective + 1e-6)
          << "trial " << trial;
    }
    if (la.result.status == SolveStatus::kOptimal &&
        nv.status == SolveStatus::kOptimal &&
        nv.slot_count <= adjustable_k_max(g, u.scenarios,
                                          Formulation::kAdjustableWeights)) {
      EXPECT_LE(la.result.objective, nv.objective + 1e-6) << "trial " << trial;
    }
    if (ma.result.status == SolveStatus::kOptimal &&
        la.result.status == SolveStatus::kOptimal &&
        nv.status == SolveStatus::kOptimal)
      ++compared;
  }
  ASSERT_GE(compared, 20);
}

TEST(Ccg, InfeasibleWithinTheSlotBudget) {
  Graph p = parallel_graph(2);
  DiscreteUncertainty u{{pinned({1, 1})}};
  SolverConfig cfg;
  cfg.k_max = 1;
  CcgOutcome out = ccg_solve(Formulation::kAdjustablePaths, p, u, cfg);
  EXPECT_EQ(out.result.status, SolveStatus::kInfeasible);
  EXPECT_EQ(out.result.iterations, 0);
}

TEST(Ccg, ZeroTimeBudgetReportsTheLimit) {
  Graph g = small_graph();
  DiscreteUncertainty u{{small_exact_bounds()}};
  SolverConfig cfg;
  cfg.time_limit_total = 0.0;
  CcgOutcome out = ccg_solve(Formulation::kAdjustablePaths, g, u, cfg);
  EXPECT_EQ(out.result.status, SolveStatus::kTimeLimit);
}

TEST(Naive, PoolsDistinctPathsAcrossScenarios) {
  Graph g = chain_graph(1);
  AdjustableResult same = naive_solve(
      g, DiscreteUncertainty{{pinned({2, 2}), pinned({3, 3})}});
  ASSERT_EQ(same.status, SolveStatus::kOptimal);
  EXPECT_EQ(same.slot_count, 1);  // both scenarios ride the only chain
  EXPECT_EQ(same.worst_weight, 3);
  EXPECT_DOUBLE_EQ(same.objective, 4.0);
  EXPECT_EQ(same.first_stage_paths.size(), 1u);

  Graph p = parallel_graph(2);
  AdjustableResult split = naive_solve(
      p, DiscreteUncertainty{{pinned({1, 0}), pinned({0, 1})}});
  ASSERT_EQ(split.status, SolveStatus::kOptimal);
  EXPECT_EQ(split.slot_count, 2);  // one pooled path per demanded edge
  EXPECT_EQ(split.worst_weight, 1);
  EXPECT_DOUBLE_EQ(split.objective, 3.0);
}

TEST(Naive, ReportsTheFirstInfeasibleScenario) {
  Graph g = chain_graph(1);
  DiscreteUncertainty u{{pinned({2, 2}),
                         bounds_of({2, 2}, {Flow{1}, Flow{1}})}};
  AdjustableResult res = naive_solve(g, u);
  EXPECT_EQ(res.status, SolveStatus::kInfeasible);
  EXPECT_EQ(res.infeasible_scenario, 1);
}

}  // namespace
}  // namespace flowdec
