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

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowdec {

using NodeId = int64_t;
using EdgeId = int64_t;
using Flow = int64_t;

// An absent value means "no upper bound". Never encode unboundedness as a
// large magic number; finite caps are substituted only inside solvers that
// need them.
using OptFlow = std::optional<Flow>;

inline Flow min_with(OptFlow a, Flow b) { return a ? std::min(*a, b) : b; }

// min over two optional uppers, absent = +infinity.
inline OptFlow min_upper(OptFlow a, OptFlow b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

// max over two optional uppers, absent = +infinity.
inline OptFlow max_upper(OptFlow a, OptFlow b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

enum class SolveStatus {
  kOptimal,
  kFeasible,    // incumbent found, optimality not proven
  kInfeasible,
  kTimeLimit,   // limit hit; an incumbent may still be attached
};

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kTimeLimit: return "time_limit";
  }
  return "unknown";
}

enum class Backend { kBuiltin };

// Shared knobs for every solve entry point. k_max/w_max of 0 mean "derive the
// documented default from the instance".
struct SolverConfig {
  int64_t k_max = 0;
  int64_t w_max = 0;
  double epsilon = 1e-6;
  double time_limit_master = 1800.0;
  double time_limit_sub = 180.0;
  double time_limit_total = 86400.0;
  Backend backend = Backend::kBuiltin;
  uint64_t seed = 0;
};

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// enumerate_st_paths hit its cap; the instance has too many paths to list.
struct PathExplosionError : Error {
  explicit PathExplosionError(size_t cap)
      : Error("s-t path enumeration exceeded cap of " + std::to_string(cap)),
        cap(cap) {}
  size_t cap;
};

// A flow assignment violates conservation at some internal node.
struct NotConservedError : Error {
  explicit NotConservedError(NodeId node)
      : Error("flow not conserved at node " + std::to_string(node)),
        node(node) {}
  NodeId node;
};

// Worst-case reduction produced an empty interval on the listed edges.
struct StrictInfeasibleError : Error {
  explicit StrictInfeasibleError(std::vector<EdgeId> edges)
      : Error("strict robust problem infeasible: lower exceeds upper on " +
              std::to_string(edges.size()) + " edge(s)"),
        edges(std::move(edges)) {}
  std::vector<EdgeId> edges;
};

// Scenario generator asked for more distinct paths than the graph has.
struct TooFewPathsError : Error {
  TooFewPathsError(size_t available, size_t requested)
      : Error("graph has " + std::to_string(available) + " s-t paths but " +
              std::to_string(requested) + " were requested"),
        available(available),
        requested(requested) {}
  size_t available;
  size_t requested;
};

// Scenario generator exhausted its rejection budget.
struct RejectionLimitError : Error {
  explicit RejectionLimitError(int64_t limit)
      : Error("scenario generation exceeded rejection limit " +
              std::to_string(limit)),
        limit(limit) {}
  int64_t limit;
};

// Hard-instance generator got sizes that do not sum to b*B.
struct BadSizesError : Error {
  explicit BadSizesError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace flowdec
