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

// Strict robustness under uncertain edge bounds: one decomposition must stay
// feasible for every admissible realization. Feasibility for all scenarios
// is a per-edge envelope condition (largest reachable lower, smallest
// reachable upper), and each supported uncertainty class admits that
// envelope in closed form, so the strict problem collapses to one
// deterministic solve on the envelope.

#pragma once

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "flowdec/common.hpp"
#include "flowdec/decomposition_model.hpp"
#include "flowdec/graph.hpp"
#include "flowdec/poly_solvers.hpp"

namespace flowdec {

// Finitely many explicit scenarios.
struct DiscreteUncertainty {
  std::vector<InexactBounds> scenarios;
};

// Every bound end ranges over its own interval, independently per edge.
struct IntervalUncertainty {
  std::vector<Flow> lower_min, lower_max;
  std::vector<OptFlow> upper_min, upper_max;
};

// Deviations from nominal bounds, with the total deviation capped by gamma:
// a lower can rise from nominal toward its extreme, an upper can drop toward
// its extreme, and one realization spends at most gamma in total.
struct BudgetUncertainty {
  InexactBounds nominal;               // hat bounds
  std::vector<Flow> lower_extreme;     // largest reachable lower, per edge
  std::vector<OptFlow> upper_extreme;  // smallest reachable upper, per edge
  Flow gamma = 0;
};

using UncertaintySet =
    std::variant<DiscreteUncertainty, IntervalUncertainty, BudgetUncertainty>;

namespace detail {

inline void check_edge_count(size_t got, size_t want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) +
                                " does not match the edge count");
}

}  // namespace detail

inline InexactBounds reduce_discrete(const Graph& g,
                                     const DiscreteUncertainty& u) {
  if (u.scenarios.empty())
    throw std::invalid_argument("discrete uncertainty needs a scenario");
  const size_t E = static_cast<size_t>(g.num_edges());
  for (const InexactBounds& s : u.scenarios) {
    detail::check_edge_count(s.lower.size(), E, "scenario lower bounds");
    detail::check_edge_count(s.upper.size(), E, "scenario upper bounds");
  }
  InexactBounds env = u.scenarios.front();
  for (size_t s = 1; s < u.scenarios.size(); ++s)
    for (size_t e = 0; e < E; ++e) {
      env.lower[e] = std::max(env.lower[e], u.scenarios[s].lower[e]);
      env.upper[e] = min_upper(env.upper[e], u.scenarios[s].upper[e]);
    }
  return env;
}

inline InexactBounds reduce_interval(const Graph& g,
                                     const IntervalUncertainty& u) {
  const size_t E = static_cast<size_t>(g.num_edges());
  detail::check_edge_count(u.lower_min.size(), E, "lower_min");
  detail::check_edge_count(u.lower_max.size(), E, "lower_max");
  detail::check_edge_count(u.upper_min.size(), E, "upper_min");
  detail::check_edge_count(u.upper_max.size(), E, "upper_max");
  for (size_t e = 0; e < E; ++e) {
    if (u.lower_min[e] > u.lower_max[e])
      throw std::invalid_argument("lower bound range is inverted");
    if (u.upper_max[e] && (!u.upper_min[e] || *u.upper_min[e] > *u.upper_max[e]))
      throw std::invalid_argument("upper bound range is inverted");
  }
  return {u.lower_max, u.upper_min};
}

inline InexactBounds reduce_budget(const Graph& g,
                                   const BudgetUncertainty& u) {
  const size_t E = static_cast<size_t>(g.num_edges());
  detail::check_edge_count(u.nominal.lower.size(), E, "nominal lower bounds");
  detail::check_edge_count(u.nominal.upper.size(), E, "nominal upper bounds");
  detail::check_edge_count(u.lower_extreme.size(), E, "lower extremes");
  detail::check_edge_count(u.upper_extreme.size(), E, "upper extremes");
  if (u.gamma < 0) throw std::invalid_argument("negative deviation budget");
  InexactBounds env;
  env.lower.resize(E);
  env.upper.resize(E);
  for (size_t e = 0; e < E; ++e) {
    if (u.lower_extreme[e] < u.nominal.lower[e])
      throw std::invalid_argument("lower extreme below its nominal");
    // The whole budget can hit one edge, so each edge sees its own extreme
    // clipped by gamma.
    env.lower[e] = std::min(u.nominal.lower[e] + u.gamma, u.lower_extreme[e]);
    if (!u.nominal.upper[e]) {
      env.upper[e] = std::nullopt;  // an unbounded edge cannot drop to finite
    } else {
      if (!u.upper_extreme[e] || *u.upper_extreme[e] > *u.nominal.upper[e])
        throw std::invalid_argument("upper extreme above its nominal");
      env.upper[e] =
          std::max(*u.nominal.upper[e] - u.gamma, *u.upper_extreme[e]);
    }
  }
  return env;
}

// Per-edge worst case over the whole uncertainty set.
inline InexactBounds worst_case_bounds(const Graph& g,
                                       const UncertaintySet& u) {
  return std::visit(
      [&](const auto& v) -> InexactBounds {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DiscreteUncertainty>)
          return reduce_discrete(g, v);
        else if constexpr (std::is_same_v<T, IntervalUncertainty>)
          return reduce_interval(g, v);
        else
          return reduce_budget(g, v);
      },
      u);
}

// Throws StrictInfeasibleError when the envelope is empty on some edges:
// those edges can never be covered by one decomposition for all scenarios.
inline void check_strict_feasible(const Graph& g, const InexactBounds& env) {
  std::vector<EdgeId> crossed;
  for (int e = 0; e < g.num_edges(); ++e)
    if (env.upper[e] && *env.upper[e] < env.lower[e])
      crossed.push_back(g.edge(e).id);
  if (!crossed.empty()) throw StrictInfeasibleError(std::move(crossed));
}

// One deterministic solve, routed to the cheapest capable method: pure
// weight minimization and (upper-free) pure path minimization have
// polynomial solvers; everything else goes through the integer model.
// Explicit k_max/w_max caps always force the integer model: the polynomial
// solvers answer the uncapped problem, which derived caps never cut off
// but caller-chosen caps can.
inline DecompositionSolution solve_deterministic(const Graph& g,
                                                 const InexactBounds& b,
                                                 const ObjectiveWeights& obj,
                                                 const SolverConfig& config =
                                                     {}) {
  if (obj.path_cost < 0 || obj.weight_cost < 0)
    throw std::invalid_argument("objective weights must be nonnegative");
  const bool capped = config.k_max != 0 || config.w_max != 0;
  if (obj.path_cost == 0 && !capped) {
    WeightMinResult wm = solve_weight_min(g, b);
    DecompositionSolution out;
    out.status = wm.status;
    if (wm.status == SolveStatus::kOptimal) {
      out.objective =
          obj.weight_cost * static_cast<double>(wm.total_weight);
      out.bound = out.objective;
      out.decomposition = wm.decomposition;
    }
    return out;
  }
  bool any_upper = false;
  for (const OptFlow& up : b.upper)
    if (up) any_upper = true;
  if (obj.weight_cost == 0 && !any_upper && !capped) {
    PathMinResult pm = solve_path_min_no_ub(g, b);
    DecompositionSolution out;
    out.status = pm.status;
    if (pm.status == SolveStatus::kOptimal) {
      out.objective = obj.path_cost * static_cast<double>(pm.count);
      out.bound = out.objective;
      out.decomposition = pm.decomposition();
    }
    return out;
  }
  return solve_decomposition(g, b, obj, config);
}

struct StrictResult {
  InexactBounds envelope;
  DecompositionSolution solution;
};

// Strict robust solve: reduce the set to its envelope, reject crossed
// bounds with a diagnostic, then solve the envelope deterministically.
inline StrictResult solve_strict(const Graph& g, const UncertaintySet& u,
                                 const ObjectiveWeights& obj,
                                 const SolverConfig& config = {}) {
  StrictResult out;
  out.envelope = worst_case_bounds(g, u);
  check_strict_feasible(g, out.envelope);
  out.solution = solve_deterministic(g, out.envelope, obj, config);
  return out;
}

}  // namespace flowdec
