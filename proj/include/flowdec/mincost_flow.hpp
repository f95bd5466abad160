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
// Integer min-cost flow with lower bounds and node demands.
//
// Conventions:
//  * demand d(v) > 0 means v supplies d(v) units (net outflow = d(v));
//    d(v) < 0 means v absorbs -d(v). Demands must sum to zero.
//  * arc bounds are [lower, upper]; an absent upper is unbounded and is
//    replaced internally by sum(|d|) + sum(lower), a provable cap on any
//    minimal feasible flow.
//  * costs are non-negative (all uses here have costs in {0, 1}), which lets
//    successive shortest paths run on Dijkstra with potentials.
//
// Pipeline: eliminate lower bounds -> feasibility max-flow phase -> successive
// shortest augmenting paths for the min-cost completion.
//==============================================================================

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "flowdec/common.hpp"

namespace flowdec {

struct McfArc {
  int from = 0;
  int to = 0;
  Flow lower = 0;
  OptFlow upper;  // absent = unbounded
  Flow cost = 0;
};

struct McfNetwork {
  int num_nodes = 0;
  std::vector<Flow> demand;  // size num_nodes; positive = supply
  std::vector<McfArc> arcs;
};

enum class McfStatus { kOptimal, kInfeasible };

struct McfSolution {
  McfStatus status = McfStatus::kInfeasible;
  Flow cost = 0;
  std::vector<Flow> flow;  // per arc, original network terms
};

// Result of shifting arc lower bounds to zero: flows translate back by
// flow_original = flow_shifted + lower, costs by the fixed offset.
struct LowerBoundFree {
  McfNetwork network;
  Flow cost_offset = 0;
};

inline void check_mcf_input(const McfNetwork& net) {
  if (static_cast<int>(net.demand.size()) != net.num_nodes)
    throw std::invalid_argument("demand size mismatch");
  Flow total = std::accumulate(net.demand.begin(), net.demand.end(), Flow{0});
  if (total != 0) throw std::invalid_argument("demands do not sum to zero");
  for (const McfArc& a : net.arcs) {
    if (a.from < 0 || a.from >= net.num_nodes || a.to < 0 ||
        a.to >= net.num_nodes)
      throw std::invalid_argument("arc endpoint out of range");
    if (a.lower < 0) throw std::invalid_argument("negative arc lower bound");
    if (a.upper && *a.upper < a.lower)
      throw std::invalid_argument("arc lower exceeds upper");
    if (a.cost < 0) throw std::invalid_argument("negative arc cost");
  }
}

// Standard transform: arc (l, u, c) becomes (0, u-l, c); pushing the
// mandatory l units shifts demand by -l at the tail and +l at the head and
// contributes c*l to the fixed cost offset.
inline LowerBoundFree eliminate_lower_bounds(const McfNetwork& net) {
  LowerBoundFree out;
  out.network.num_nodes = net.num_nodes;
  out.network.demand = net.demand;
  for (const McfArc& a : net.arcs) {
    McfArc b = a;
    b.lower = 0;
    if (a.upper) b.upper = *a.upper - a.lower;
    out.network.arcs.push_back(b);
    out.network.demand[a.from] -= a.lower;
    out.network.demand[a.to] += a.lower;
    out.cost_offset += a.cost * a.lower;
  }
  return out;
}

namespace detail {

// Residual graph with paired arcs: arc i and i^1 are mutual reverses.
struct Residual {
  std::vector<int> head, to;
  std::vector<std::vector<int>> adj;
  std::vector<Flow> cap;
  std::vector<Flow> cost;

  explicit Residual(int n) : adj(n) {}

  void add(int u, int v, Flow capacity, Flow c) {
    adj[u].push_back(static_cast<int>(to.size()));
    to.push_back(v);
    cap.push_back(capacity);
    cost.push_back(c);
    adj[v].push_back(static_cast<int>(to.size()));
    to.push_back(u);
    cap.push_back(0);
    cost.push_back(-c);
  }

  int n() const { return static_cast<int>(adj.size()); }
};

// Plain BFS augmenting max-flow (Edmonds-Karp); capacities are small here.
inline Flow max_flow(Residual& r, int s, int t) {
  Flow total = 0;
  for (;;) {
    std::vector<int> pred_arc(r.n(), -1);
    std::vector<int> q{s};
    pred_arc[s] = -2;
    for (size_t qi = 0; qi < q.size() && pred_arc[t] == -1; ++qi) {
      int v = q[qi];
      for (int a : r.adj[v]) {
        if (r.cap[a] > 0 && pred_arc[r.to[a]] == -1) {
          pred_arc[r.to[a]] = a;
          q.push_back(r.to[a]);
        }
      }
    }
    if (pred_arc[t] == -1) return total;
    Flow push = std::numeric_limits<Flow>::max();
    for (int v = t; v != s;) {
      int a = pred_arc[v];
      push = std::min(push, r.cap[a]);
      v = r.to[a ^ 1];
    }
    for (int v = t; v != s;) {
      int a = pred_arc[v];
      r.cap[a] -= push;
      r.cap[a ^ 1] += push;
      v = r.to[a ^ 1];
    }
    total += push;
  }
}

// Successive shortest paths with node potentials. Requires non-negative arc
// costs; reduced costs stay non-negative across augmentations.
inline Flow min_cost_max_flow(Residual& r, int s, int t, Flow* flow_pushed) {
  const Flow kInf = std::numeric_limits<Flow>::max() / 4;
  std::vector<Flow> pot(r.n(), 0);
  Flow total_cost = 0;
  Flow total_flow = 0;
  for (;;) {
    std::vector<Flow> dist(r.n(), kInf);
    std::vector<int> pred_arc(r.n(), -1);
    using Item = std::pair<Flow, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[s] = 0;
    pq.emplace(0, s);
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d != dist[v]) continue;
      for (int a : r.adj[v]) {
        if (r.cap[a] <= 0) continue;
        int w = r.to[a];
        Flow nd = d + r.cost[a] + pot[v] - pot[w];
        assert(r.cost[a] + pot[v] - pot[w] >= 0);
        if (nd < dist[w]) {
          dist[w] = nd;
          pred_arc[w] = a;
          pq.emplace(nd, w);
        }
      }
    }
    if (dist[t] >= kInf) break;
    for (int v = 0; v < r.n(); ++v)
      if (dist[v] < kInf) pot[v] += dist[v];
    Flow push = std::numeric_limits<Flow>::max();
    for (int v = t; v != s;) {
      int a = pred_arc[v];
      push = std::min(push, r.cap[a]);
      v = r.to[a ^ 1];
    }
    for (int v = t; v != s;) {
      int a = pred_arc[v];
      r.cap[a] -= push;
      r.cap[a ^ 1] += push;
      total_cost += push * r.cost[a];
      v = r.to[a ^ 1];
    }
    total_flow += push;
  }
  *flow_pushed = total_flow;
  return total_cost;
}

}  // namespace detail

// Min-cost feasible flow meeting all demands and arc bounds.
inline McfSolution solve_mcf(const McfNetwork& net) {
  check_mcf_input(net);
  // Finite substitute for unbounded uppers: no minimal feasible flow needs
  // more than total supply plus total forced lower-bound flow on any arc.
  Flow cap_sub = 0;
  for (Flow d : net.demand) cap_sub += d > 0 ? d : -d;
  for (const McfArc& a : net.arcs) cap_sub += a.lower;

  LowerBoundFree shifted = eliminate_lower_bounds(net);
  const McfNetwork& zn = shifted.network;

  const int n = zn.num_nodes;
  const int super_s = n, super_t = n + 1;
  Flow required = 0;

  auto build = [&](detail::Residual& r) {
    for (const McfArc& a : zn.arcs) {
      Flow cap = a.upper ? *a.upper : cap_sub;
      r.add(a.from, a.to, cap, a.cost);
    }
    for (int v = 0; v < n; ++v) {
      if (zn.demand[v] > 0) r.add(super_s, v, zn.demand[v], 0);
      if (zn.demand[v] < 0) r.add(v, super_t, -zn.demand[v], 0);
    }
  };
  for (int v = 0; v < n; ++v)
    if (zn.demand[v] > 0) required += zn.demand[v];

  // Feasibility phase: a plain max-flow decides whether all shifted supply
  // can reach the shifted demand before any cost optimization runs.
  {
    detail::Residual r(n + 2);
    build(r);
    if (detail::max_flow(r, super_s, super_t) < required)
      return McfSolution{McfStatus::kInfeasible, 0, {}};
  }

  // Cost phase on a fresh residual.
  detail::Residual r(n + 2);
  build(r);
  Flow pushed = 0;
  Flow cost = detail::min_cost_max_flow(r, super_s, super_t, &pushed);
  assert(pushed == required);

  McfSolution sol;
  sol.status = McfStatus::kOptimal;
  sol.flow.resize(net.arcs.size());
  for (size_t i = 0; i < net.arcs.size(); ++i) {
    // Forward residual arc 2i; flow sent = reverse capacity.
    sol.flow[i] = r.cap[2 * i + 1] + net.arcs[i].lower;
  }
  sol.cost = cost + shifted.cost_offset;
  return sol;
}

}  // namespace flowdec
