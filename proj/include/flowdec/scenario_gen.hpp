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

// Seeded scenario generation: each scenario superposes p distinct unit-weight
// s-t paths into a flow f, draws per-edge lower bounds a little below f, and
// sets uppers a fixed slack above it. A nominal scenario built the same way
// anchors a deviation budget; candidates whose total bound deviation exceeds
// the budget are rejected. Also builds the partition-gadget family of hard
// instances (3b parallel front edges demanding the sizes, b parallel back
// edges demanding the group sum).

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowdec/common.hpp"
#include "flowdec/graph.hpp"
#include "flowdec/rng.hpp"

namespace flowdec {

struct GenConfig {
  int p = 10;                // distinct paths superposed per scenario
  double gamma_prime = 0.2;  // budget as a fraction of the nominal bound mass
  int count = 5;             // scenarios to accept
  uint64_t seed = 0;
  std::vector<EdgeId> auxiliary_edges;  // lower bounds pinned to 0
  int64_t max_rejections = 0;           // 0 picks 1000 * count
};

struct GeneratedSet {
  InexactBounds nominal;
  double gamma = 0.0;  // realized budget: gamma_prime * sum(lower + upper)
  std::vector<InexactBounds> scenarios;
  int64_t rejections = 0;
};

// Upper-bound slack above the sampled flow: half the path count, rounded up.
inline Flow upper_slack(int p) { return (p + 1) / 2; }

// Draws config.count scenarios around a freshly sampled nominal one.
// Deterministic given (graph, config). Throws TooFewPathsError when the
// graph cannot supply p distinct paths and RejectionLimitError when the
// budget keeps rejecting candidates.
inline GeneratedSet generate(const Graph& g, const GenConfig& cfg) {
  if (cfg.p < 1) throw std::invalid_argument("need at least one path");
  if (cfg.count < 1) throw std::invalid_argument("need at least one scenario");
  if (cfg.gamma_prime < 0)
    throw std::invalid_argument("budget fraction must be nonnegative");
  const std::vector<Path> paths = enumerate_st_paths(g);
  if (paths.size() < static_cast<size_t>(cfg.p))
    throw TooFewPathsError(paths.size(), static_cast<size_t>(cfg.p));
  const size_t E = static_cast<size_t>(g.num_edges());
  std::vector<char> aux(E, 0);
  for (EdgeId id : cfg.auxiliary_edges) {
    if (!g.has_edge_id(id))
      throw std::invalid_argument("auxiliary edge " + std::to_string(id) +
                                  " is not in the graph");
    aux[static_cast<size_t>(g.edge_index(id))] = 1;
  }

  Rng rng(cfg.seed);
  auto sample_flow = [&] {
    // Partial Fisher-Yates: the first p entries become a uniform
    // without-replacement sample.
    std::vector<size_t> idx(paths.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::vector<Flow> f(E, 0);
    for (int i = 0; i < cfg.p; ++i) {
      size_t j = static_cast<size_t>(i) +
                 rng.next_below(idx.size() - static_cast<size_t>(i));
      std::swap(idx[static_cast<size_t>(i)], idx[j]);
      for (EdgeId id : paths[idx[static_cast<size_t>(i)]].edges)
        f[static_cast<size_t>(g.edge_index(id))] += 1;
    }
    return f;
  };

  const Flow slack = upper_slack(cfg.p);
  GeneratedSet out;
  {
    std::vector<Flow> f = sample_flow();
    for (size_t e = 0; e < E; ++e) {
      out.nominal.lower.push_back(aux[e] ? 0 : f[e]);
      out.nominal.upper.push_back(f[e] + slack);
    }
  }
  double mass = 0.0;
  for (size_t e = 0; e < E; ++e)
    mass += static_cast<double>(out.nominal.lower[e] + *out.nominal.upper[e]);
  out.gamma = cfg.gamma_prime * mass;

  const int64_t limit =
      cfg.max_rejections > 0 ? cfg.max_rejections : 1000 * cfg.count;
  while (out.scenarios.size() < static_cast<size_t>(cfg.count)) {
    std::vector<Flow> f = sample_flow();
    InexactBounds b;
    for (size_t e = 0; e < E; ++e) {
      b.lower.push_back(
          aux[e] ? 0 : rng.uniform_int(std::max<Flow>(0, f[e] - 2), f[e]));
      b.upper.push_back(f[e] + slack);
    }
    Flow deviation = 0;
    for (size_t e = 0; e < E; ++e)
      deviation += std::abs(b.lower[e] - out.nominal.lower[e]) +
                   std::abs(*b.upper[e] - *out.nominal.upper[e]);
    if (static_cast<double>(deviation) <= out.gamma + 1e-9) {
      out.scenarios.push_back(std::move(b));
    } else if (++out.rejections >= limit) {
      throw RejectionLimitError(limit);
    }
  }
  return out;
}

struct HardInstance {
  Graph graph;
  InexactBounds bounds;  // demanded lowers only; every upper is unbounded
};

// Partition gadget: 3b parallel source edges demanding the sizes, b parallel
// sink edges each demanding the group target. An optimal decomposition must
// split the sizes into b triples of equal sum, so the instance is easy to
// state and hard to solve.
inline HardInstance gen_hard_instance(int64_t b, Flow target,
                                      const std::vector<Flow>& sizes) {
  if (b <= 0 || target <= 0)
    throw std::invalid_argument("group count and target must be positive");
  if (sizes.size() != static_cast<size_t>(3 * b))
    throw BadSizesError("expected " + std::to_string(3 * b) + " sizes, got " +
                        std::to_string(sizes.size()));
  Flow sum = 0;
  for (Flow s : sizes) {
    if (s <= 0) throw BadSizesError("sizes must be positive");
    sum += s;
  }
  if (sum != static_cast<Flow>(b) * target)
    throw BadSizesError("sizes sum to " + std::to_string(sum) +
                        " but b*target is " +
                        std::to_string(static_cast<Flow>(b) * target));
  std::vector<Edge> edges;
  for (size_t i = 0; i < sizes.size(); ++i)
    edges.push_back({static_cast<EdgeId>(i), 0, 1});
  for (int64_t j = 0; j < b; ++j)
    edges.push_back({static_cast<EdgeId>(3 * b + j), 1, 2});
  HardInstance out{Graph({0, 1, 2}, 0, 2, std::move(edges)), {}};
  out.bounds.lower = sizes;
  out.bounds.lower.insert(out.bounds.lower.end(), static_cast<size_t>(b),
                          target);
  out.bounds.upper.assign(out.bounds.lower.size(), std::nullopt);
  return out;
}

// Whether every size sits strictly between a quarter and a third of the
// target. Informational only: sizes below a third of the target always sum
// short of b*target, so valid instances never satisfy this and callers may
// at most warn about it.
inline bool sizes_strictly_between_quarter_and_third(
    Flow target, const std::vector<Flow>& sizes) {
  for (Flow s : sizes)
    if (!(4 * s > target && 3 * s < target)) return false;
  return true;
}

}  // namespace flowdec
