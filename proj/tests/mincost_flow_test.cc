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

#include "flowdec/mincost_flow.hpp"

#include <optional>

#include "flowdec/rng.hpp"
#include "gtest/gtest.h"

namespace flowdec {
namespace {

// Exhaustive oracle: enumerate every integer flow within bounds (unbounded
// uppers capped generously above the solver's internal substitute) and take
// the cheapest one meeting all demands. Independent of the residual-graph
// machinery under test.
std::optional<Flow> brute_force_min_cost(const McfNetwork& net) {
  Flow cap_sub = 0;
  for (Flow d : net.demand) cap_sub += d > 0 ? d : -d;
  for (const McfArc& a : net.arcs) cap_sub += a.lower;
  cap_sub += 3;  // strictly larger than the solver's cap, to probe it

  const size_t m = net.arcs.size();
  std::vector<Flow> f(m, 0);
  std::optional<Flow> best;
  auto rec = [&](auto&& self, size_t i, Flow cost_so_far) -> void {
    if (best && cost_so_far >= *best + 1) return;  // costs are integers
    if (i == m) {
      for (int v = 0; v < net.num_nodes; ++v) {
        Flow net_out = 0;
        for (size_t a = 0; a < m; ++a) {
          if (net.arcs[a].from == v) net_out += f[a];
          if (net.arcs[a].to == v) net_out -= f[a];
        }
        if (net_out != net.demand[v]) return;
      }
      if (!best || cost_so_far < *best) best = cost_so_far;
      return;
    }
    const McfArc& a = net.arcs[i];
    Flow hi = a.upper ? *a.upper : cap_sub;
    for (Flow x = a.lower; x <= hi; ++x) {
      f[i] = x;
      self(self, i + 1, cost_so_far + x * a.cost);
    }
  };
  rec(rec, 0, 0);
  return best;
}

TEST(EliminateLowerBounds, ShiftsDemandAndOffsetsCost) {
  McfNetwork net;
  net.num_nodes = 2;
  net.demand = {2, -2};
  net.arcs = {{0, 1, 2, Flow{4}, 1}};
  LowerBoundFree lf = eliminate_lower_bounds(net);
  EXPECT_EQ(lf.cost_offset, 2);
  ASSERT_EQ(lf.network.arcs.size(), 1u);
  EXPECT_EQ(lf.network.arcs[0].lower, 0);
  EXPECT_EQ(*lf.network.arcs[0].upper, 2);
  EXPECT_EQ(lf.network.arcs[0].cost, 1);
  // Tail loses the forced 2 units, head gains them.
  EXPECT_EQ(lf.network.demand[0], 0);
  EXPECT_EQ(lf.network.demand[1], 0);
}

TEST(EliminateLowerBounds, UnboundedUpperStaysUnbounded) {
  McfNetwork net;
  net.num_nodes = 2;
  net.demand = {1, -1};
  net.arcs = {{0, 1, 1, std::nullopt, 3}};
  LowerBoundFree lf = eliminate_lower_bounds(net);
  EXPECT_FALSE(lf.network.arcs[0].upper.has_value());
  EXPECT_EQ(lf.cost_offset, 3);
}

TEST(SolveMcf, SupplyChainCostsPerUnit) {
  // s' -> s -> t -> t' with cost 1 on the first arc only; supply 3.
  McfNetwork net;
  net.num_nodes = 4;
  net.demand = {3, 0, 0, -3};
  net.arcs = {{0, 1, 0, std::nullopt, 1},
              {1, 2, 0, std::nullopt, 0},
              {2, 3, 0, std::nullopt, 0}};
  McfSolution sol = solve_mcf(net);
  ASSERT_EQ(sol.status, McfStatus::kOptimal);
  EXPECT_EQ(sol.cost, 3);
  EXPECT_EQ(sol.flow, (std::vector<Flow>{3, 3, 3}));
}

TEST(SolveMcf, PrefersCheapArc) {
  McfNetwork net;
  net.num_nodes = 2;
  net.demand = {3, -3};
  net.arcs = {{0, 1, 0, Flow{2}, 5}, {0, 1, 0, Flow{9}, 1}};
  McfSolution sol = solve_mcf(net);
  ASSERT_EQ(sol.status, McfStatus::kOptimal);
  EXPECT_EQ(sol.cost, 3);
  EXPECT_EQ(sol.flow, (std::vector<Flow>{0, 3}));
}

TEST(SolveMcf, LowerBoundForcesExpensiveArc) {
  McfNetwork net;
  net.num_nodes = 2;
  net.demand = {3, -3};
  net.arcs = {{0, 1, 2, Flow{9}, 5}, {0, 1, 0, Flow{9}, 1}};
  McfSolution sol = solve_mcf(net);
  ASSERT_EQ(sol.status, McfStatus::kOptimal);
  EXPECT_EQ(sol.flow, (std::vector<Flow>{2, 1}));
  EXPECT_EQ(sol.cost, 11);
}

TEST(SolveMcf, DetectsInfeasibleCapacity) {
  McfNetwork net;
  net.num_nodes = 2;
  net.demand = {5, -5};
  net.arcs = {{0, 1, 0, Flow{4}, 0}};
  EXPECT_EQ(solve_mcf(net).status, McfStatus::kInfeasible);
}

TEST(SolveMcf, DetectsInfeasibleLowerBounds) {
  // Forced 3 units into a node that can only forward 1.
  McfNetwork net;
  net.num_nodes = 3;
  net.demand = {0, 0, 0};
  net.arcs = {{0, 1, 3, std::nullopt, 0}, {1, 2, 0, Flow{1}, 0},
              {2, 0, 0, std::nullopt, 0}, {1, 0, 0, Flow{0}, 0}};
  EXPECT_EQ(solve_mcf(net).status, McfStatus::kInfeasible);
}

TEST(SolveMcf, RejectsUnbalancedDemand) {
  McfNetwork net;
  net.num_nodes = 2;
  net.demand = {1, 0};
  EXPECT_THROW(solve_mcf(net), std::invalid_argument);
}

TEST(SolveMcf, RejectsNegativeCost) {
  McfNetwork net;
  net.num_nodes = 2;
  net.demand = {0, 0};
  net.arcs = {{0, 1, 0, Flow{1}, -1}};
  EXPECT_THROW(solve_mcf(net), std::invalid_argument);
}

TEST(SolveMcf, MatchesBruteForceOnRandomNetworks) {
  Rng rng(11);
  int optimal_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    McfNetwork net;
    net.num_nodes = static_cast<int>(rng.uniform_int(2, 4));
    net.demand.assign(net.num_nodes, 0);
    // Balanced random demands.
    for (int v = 0; v + 1 < net.num_nodes; ++v)
      net.demand[v] = rng.uniform_int(-2, 2);
    Flow acc = 0;
    for (int v = 0; v + 1 < net.num_nodes; ++v) acc += net.demand[v];
    net.demand[net.num_nodes - 1] = -acc;
    int m = static_cast<int>(rng.uniform_int(1, 5));
    for (int i = 0; i < m; ++i) {
      McfArc a;
      a.from = static_cast<int>(rng.next_below(net.num_nodes));
      a.to = static_cast<int>(rng.next_below(net.num_nodes));
      if (a.from == a.to) a.to = (a.to + 1) % net.num_nodes;
      a.lower = rng.uniform_int(0, 2);
      a.upper = rng.chance(1, 4) ? OptFlow{}
                                 : OptFlow{a.lower + rng.uniform_int(0, 2)};
      a.cost = rng.uniform_int(0, 3);
      net.arcs.push_back(a);
    }
    std::optional<Flow> expect = brute_force_min_cost(net);
    McfSolution got = solve_mcf(net);
    if (expect) {
      ASSERT_EQ(got.status, McfStatus::kOptimal) << "trial " << trial;
      EXPECT_EQ(got.cost, *expect) << "trial " << trial;
      // Returned flow must itself be feasible and priced correctly.
      Flow cost_check = 0;
      for (size_t i = 0; i < net.arcs.size(); ++i) {
        const McfArc& a = net.arcs[i];
        EXPECT_GE(got.flow[i], a.lower);
        if (a.upper) {
          EXPECT_LE(got.flow[i], *a.upper);
        }
        cost_check += got.flow[i] * a.cost;
      }
      EXPECT_EQ(cost_check, got.cost);
      for (int v = 0; v < net.num_nodes; ++v) {
        Flow net_out = 0;
        for (size_t i = 0; i < net.arcs.size(); ++i) {
          if (net.arcs[i].from == v) net_out += got.flow[i];
          if (net.arcs[i].to == v) net_out -= got.flow[i];
        }
        EXPECT_EQ(net_out, net.demand[v]) << "trial " << trial;
      }
      ++optimal_seen;
    } else {
      EXPECT_EQ(got.status, McfStatus::kInfeasible) << "trial " << trial;
      ++infeasible_seen;
    }
  }
  // The generator must exercise both outcomes.
  EXPECT_GT(optimal_seen, 10);
  EXPECT_GT(infeasible_seen, 5);
}

}  // namespace
}  // namespace flowdec
