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

#include "flowdec/graph.hpp"

#include <algorithm>

#include "gtest/gtest.h"
#include "support.hpp"

namespace flowdec {
namespace {

using testing::chain_graph;
using testing::parallel_graph;
using testing::random_instance;
using testing::RandomInstanceOptions;
using testing::small_exact_bounds;
using testing::small_flow;
using testing::small_graph;

TEST(Graph, ConstructionAndLookup) {
  Graph g = small_graph();
  EXPECT_EQ(g.num_nodes(), 7);
  EXPECT_EQ(g.num_edges(), 12);
  EXPECT_EQ(g.source(), 0);
  EXPECT_EQ(g.sink(), 6);
  EXPECT_EQ(g.edge(g.edge_index(7)).from, 3);
  EXPECT_EQ(g.edge(g.edge_index(7)).to, 4);
  // Adjacency sorted by edge id.
  EXPECT_EQ(g.out_edges(g.node_index(0)), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(g.in_edges(g.node_index(6)), (std::vector<int>{10, 11}));
}

TEST(Graph, RejectsDuplicateEdgeIds) {
  EXPECT_THROW(Graph({0, 1}, 0, 1, {{0, 0, 1}, {0, 0, 1}}),
               std::invalid_argument);
}

TEST(Graph, TopologicalOrderThrowsOnCycle) {
  Graph g({0, 1, 2}, 0, 2, {{0, 0, 1}, {1, 1, 2}, {2, 2, 1}});
  EXPECT_THROW(g.topological_order(), Error);
}

TEST(Validate, CleanInstancePasses) {
  ValidationReport r = validate_instance(small_graph(), small_exact_bounds());
  EXPECT_TRUE(r.ok());
}

TEST(Validate, ReportsCycleInsteadOfThrowing) {
  Graph g({0, 1, 2}, 0, 2, {{0, 0, 1}, {1, 1, 2}, {2, 2, 1}});
  ValidationReport r = validate_graph(g);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(r.has("cycle"));
}

TEST(Validate, ReportsSinkToSourceEdge) {
  // An edge back into the source makes it non-source-like.
  Graph g({0, 1}, 0, 1, {{0, 0, 1}, {1, 1, 0}});
  ValidationReport r = validate_graph(g);
  EXPECT_TRUE(r.has("cycle"));
  EXPECT_TRUE(r.has("source_has_incoming"));
  EXPECT_TRUE(r.has("sink_has_outgoing"));
}

TEST(Validate, ReportsNodeOffEveryPath) {
  // Node 2 dangles: reachable from s but never reaches t.
  Graph g({0, 1, 2}, 0, 1, {{0, 0, 1}, {1, 0, 2}});
  ValidationReport r = validate_graph(g);
  EXPECT_TRUE(r.has("node_off_path"));
  ASSERT_EQ(r.issues.size(), 1u);
  EXPECT_EQ(r.issues[0].ids, (std::vector<int64_t>{2}));
}

TEST(Validate, ReportsCrossedBounds) {
  Graph g = parallel_graph(2);
  InexactBounds b{{3, 0}, {Flow{2}, std::nullopt}};
  ValidationReport r = validate_instance(g, b);
  EXPECT_TRUE(r.has("lower_above_upper"));
}

TEST(Conservation, SmallFlowConserved) {
  EXPECT_TRUE(is_conserved(small_graph(), small_flow()));
  EXPECT_EQ(flow_value(small_graph(), small_flow()), 10);
}

TEST(Conservation, PerturbationReportsNode) {
  FlowAssignment f = small_flow();
  f.value[9] += 1;  // d->e
  auto bad = conservation_violations(small_graph(), f);
  // Node d=4 loses a unit, node e=5 gains one.
  EXPECT_EQ(bad, (std::vector<NodeId>{4, 5}));
}

TEST(EnumeratePaths, SmallGraphHasTwelve) {
  auto paths = enumerate_st_paths(small_graph());
  EXPECT_EQ(paths.size(), 12u);
  // Lexicographic by edge-id sequence; first path follows smallest ids.
  EXPECT_EQ(paths.front().edges, (std::vector<EdgeId>{0, 3, 7, 9, 11}));
  EXPECT_EQ(paths.back().edges, (std::vector<EdgeId>{2, 8, 11}));
  EXPECT_TRUE(std::is_sorted(paths.begin(), paths.end()));
  for (const Path& p : paths) EXPECT_TRUE(is_st_path(small_graph(), p));
}

TEST(EnumeratePaths, CapThrows) {
  EXPECT_THROW(enumerate_st_paths(small_graph(), 5), PathExplosionError);
}

TEST(EnumeratePaths, CountsMatchPerNodeProducts) {
  // Chain has one path; k parallel edges have k.
  EXPECT_EQ(enumerate_st_paths(chain_graph(3)).size(), 1u);
  EXPECT_EQ(enumerate_st_paths(parallel_graph(4)).size(), 4u);
}

TEST(TrivialDecomposition, UnitWeightsReproduceFlow) {
  Graph g = small_graph();
  WeightedDecomposition d = trivial_decomposition(g, small_flow());
  EXPECT_EQ(d.size(), 10);  // |f|
  for (Flow w : d.weights) EXPECT_EQ(w, 1);
  EXPECT_EQ(coverage(g, d), small_flow().value);
}

TEST(TrivialDecomposition, ThrowsWhenNotConserved) {
  FlowAssignment f = small_flow();
  f.value[0] += 1;
  EXPECT_THROW(trivial_decomposition(small_graph(), f), NotConservedError);
}

TEST(FlowToPaths, AtMostEdgeCountAndExact) {
  Graph g = small_graph();
  WeightedDecomposition d = flow_to_paths(g, small_flow());
  EXPECT_LE(d.size(), g.num_edges());
  EXPECT_EQ(coverage(g, d), small_flow().value);
  for (Flow w : d.weights) EXPECT_GE(w, 1);
}

TEST(FlowToPaths, ZeroFlowGivesEmptyDecomposition) {
  Graph g = small_graph();
  FlowAssignment zero{std::vector<Flow>(g.num_edges(), 0)};
  WeightedDecomposition d = flow_to_paths(g, zero);
  EXPECT_EQ(d.size(), 0);
}

TEST(FlowToPaths, RandomConservedFlowsStayFeasible) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    RandomInstanceOptions opt;
    opt.exact = true;
    auto inst = random_instance(rng, opt);
    WeightedDecomposition d = flow_to_paths(inst.graph, *inst.flow);
    EXPECT_LE(d.size(), inst.graph.num_edges());
    EXPECT_EQ(coverage(inst.graph, d), inst.flow->value);
    if (flow_value(inst.graph, *inst.flow) > 0) {
      Evaluation ev = evaluate(inst.graph, inst.bounds, d, 1.0, 1.0);
      EXPECT_TRUE(ev.feasible);
    }
  }
}

TEST(Evaluate, ObjectiveAndFeasibility) {
  Graph g = small_graph();
  WeightedDecomposition d = trivial_decomposition(g, small_flow());
  Evaluation ev = evaluate(g, small_exact_bounds(), d, 1.0, 1.0);
  EXPECT_TRUE(ev.feasible);
  EXPECT_DOUBLE_EQ(ev.objective, 20.0);  // 10 paths + total weight 10
}

TEST(Evaluate, FlagsViolatedEdges) {
  Graph g = parallel_graph(2);
  InexactBounds b{{1, 1}, {Flow{2}, Flow{2}}};
  WeightedDecomposition d{{Path{{0}}}, {3}};  // edge 0 covered 3 > 2, edge 1 at 0 < 1
  Evaluation ev = evaluate(g, b, d, 1.0, 0.0);
  EXPECT_FALSE(ev.feasible);
  EXPECT_EQ(ev.violated_edges, (std::vector<EdgeId>{0, 1}));
}

TEST(Evaluate, RejectsMalformedInput) {
  Graph g = small_graph();
  WeightedDecomposition not_a_path{{Path{{0, 7}}}, {1}};  // a->? gap
  EXPECT_THROW(evaluate(g, small_exact_bounds(), not_a_path, 1, 1),
               std::invalid_argument);
  WeightedDecomposition zero_weight{{Path{{2, 8, 11}}}, {0}};
  EXPECT_THROW(evaluate(g, small_exact_bounds(), zero_weight, 1, 1),
               std::invalid_argument);
}

TEST(Evaluate, EmptyDecompositionFeasibleOnlyWithZeroLowers) {
  Graph g = parallel_graph(1);
  WeightedDecomposition empty;
  InexactBounds zeros{{0}, {std::nullopt}};
  EXPECT_TRUE(evaluate(g, zeros, empty, 1, 1).feasible);
  InexactBounds positive{{1}, {std::nullopt}};
  EXPECT_FALSE(evaluate(g, positive, empty, 1, 1).feasible);
}

}  // namespace
}  // namespace flowdec
