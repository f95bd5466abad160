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

// Library walkthrough: build a small network, decompose an exact flow into
// weighted paths, then widen every edge into an interval and solve the
// strict worst case over it.

#include <iostream>

#include "flowdec/decomposition_model.hpp"
#include "flowdec/robust.hpp"

using namespace flowdec;

namespace {

void print(const char* label, const DecompositionSolution& sol) {
  std::cout << label << ": status=" << static_cast<int>(sol.status)
            << " paths=" << sol.decomposition.paths.size()
            << " total_weight=" << sol.decomposition.total_weight()
            << " objective=" << sol.objective << "\n";
  for (size_t i = 0; i < sol.decomposition.paths.size(); ++i) {
    std::cout << "  w=" << sol.decomposition.weights[i] << " edges";
    for (EdgeId id : sol.decomposition.paths[i].edges) std::cout << " " << id;
    std::cout << "\n";
  }
}

}  // namespace

int main() {
  // Two routes from 0 to 3 sharing the middle node.
  std::vector<Edge> edges = {
      {0, 0, 1}, {1, 0, 2}, {2, 1, 2}, {3, 1, 3}, {4, 2, 3},
  };
  Graph g({0, 1, 2, 3}, 0, 3, std::move(edges));

  // An exact flow: every edge must carry exactly its recorded value.
  InexactBounds exact;
  exact.lower = {3, 1, 1, 2, 2};
  for (Flow v : exact.lower) exact.upper.push_back(v);

  print("exact", solve_deterministic(g, exact, ObjectiveWeights{1.0, 1.0}));

  // Widen each edge to [v-1, v+1]; fewer paths may now suffice.
  InexactBounds wide;
  for (size_t e = 0; e < exact.lower.size(); ++e) {
    wide.lower.push_back(exact.lower[e] > 0 ? exact.lower[e] - 1 : 0);
    wide.upper.push_back(*exact.upper[e] + 1);
  }
  print("widened", solve_deterministic(g, wide, ObjectiveWeights{1.0, 1.0}));

  // Strict robustness: one decomposition that works for every bound vector
  // between the exact and the widened one.
  IntervalUncertainty u;
  u.lower_min = wide.lower;
  u.lower_max = exact.lower;
  u.upper_min.assign(exact.upper.begin(), exact.upper.end());
  u.upper_max = wide.upper;
  StrictResult strict = solve_strict(g, u, ObjectiveWeights{1.0, 1.0});
  print("strict", strict.solution);
  return 0;
}
