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

// Command-line surface. Subcommands: solve (deterministic decomposition),
// strict (worst-case envelope over an uncertainty set), adjustable (two-stage
// over a scenario file, or the pooled baseline), gen-scenarios, gen-hard,
// and experiment (method-comparison grid emitting CSV). Exit codes: 0 solved
// (optimal or feasible), 1 bad input, 2 infeasible, 3 time limit, 4 internal.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flowdec/adjustable.hpp"
#include "flowdec/decomposition_model.hpp"
#include "flowdec/io.hpp"
#include "flowdec/robust.hpp"
#include "flowdec/scenario_gen.hpp"

namespace {

using namespace flowdec;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInfeasibleExit = 2;
constexpr int kTimeLimitExit = 3;
constexpr int kInternal = 4;

int exit_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
    case SolveStatus::kFeasible:
      return kOk;
    case SolveStatus::kInfeasible:
      return kInfeasibleExit;
    case SolveStatus::kTimeLimit:
      return kTimeLimitExit;
  }
  return kInternal;
}

uint64_t env_seed() {
  const char* s = std::getenv("FLOWDEC_SEED");
  return s ? std::strtoull(s, nullptr, 10) : 0;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

struct Loaded {
  Instance inst;
  Graph graph;
  InexactBounds bounds;
};

Loaded load(const std::string& path) {
  Instance inst = parse_instance(read_file(path));
  try {
    Graph g = instance_graph(inst);
    ValidationReport rep = validate_graph(g);
    if (!rep.ok()) {
      std::string msg = "instance is not a valid flow network:";
      for (const auto& issue : rep.issues) msg += " " + issue.code + ";";
      throw ParseError(msg);
    }
    InexactBounds b = effective_bounds(inst);
    return {std::move(inst), std::move(g), std::move(b)};
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

void print_paths(const WeightedDecomposition& d) {
  for (size_t i = 0; i < d.paths.size(); ++i) {
    std::cout << "path: w=" << d.weights[i] << " edges";
    for (EdgeId id : d.paths[i].edges) std::cout << " " << id;
    std::cout << "\n";
  }
}

void print_solution(const std::string& name,
                    const DecompositionSolution& sol) {
  std::cout << "instance: " << name << "\n";
  std::cout << "status: " << status_name(sol.status) << "\n";
  if (sol.status == SolveStatus::kOptimal ||
      sol.status == SolveStatus::kFeasible) {
    std::cout << "k: " << sol.decomposition.paths.size() << "\n";
    std::cout << "total_weight: " << sol.decomposition.total_weight() << "\n";
    std::cout << "objective: " << detail::format_number(sol.objective) << "\n";
  }
  std::cout << "runtime_seconds: " << detail::format_number(sol.runtime_seconds)
            << "\n";
  print_paths(sol.decomposition);
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  double ay = 1.0;
  double aw = 1.0;
  SolverConfig config;
  std::string backend = "builtin";
  std::string export_lp;
};

int run_solve(const SolveArgs& a) {
  Loaded in = load(a.instance);
  if (!a.export_lp.empty()) {
    DecompositionModel dm = build_decomposition_model(
        in.graph, in.bounds, ObjectiveWeights{a.ay, a.aw},
        a.config.k_max, a.config.w_max);
    write_file(a.export_lp, write_lp(dm.model));
  }
  DecompositionSolution sol = solve_deterministic(
      in.graph, in.bounds, ObjectiveWeights{a.ay, a.aw}, a.config);
  print_solution(in.inst.name, sol);
  return exit_for(sol.status);
}

// ---- strict ---------------------------------------------------------------

struct StrictArgs {
  std::string instance;
  std::string uncertainty = "discrete";
  std::string scenarios;
  Flow gamma = 0;
  Flow deviation = 1;
  double ay = 1.0;
  double aw = 1.0;
  SolverConfig config;
  std::string export_lp;
};

UncertaintySet strict_set(const StrictArgs& a, const Loaded& in) {
  if (a.uncertainty == "discrete") {
    if (a.scenarios.empty())
      throw ParseError("discrete uncertainty needs --scenarios");
    ScenarioFile file = parse_scenarios(read_file(a.scenarios), in.graph);
    return DiscreteUncertainty{file.scenarios};
  }
  const size_t E = in.bounds.lower.size();
  if (a.uncertainty == "interval") {
    IntervalUncertainty u;
    for (size_t e = 0; e < E; ++e) {
      u.lower_min.push_back(in.bounds.lower[e]);
      u.lower_max.push_back(in.bounds.lower[e] + a.deviation);
      const OptFlow& up = in.bounds.upper[e];
      u.upper_min.push_back(
          up ? OptFlow{std::max<Flow>(0, *up - a.deviation)} : OptFlow{});
      u.upper_max.push_back(up);
    }
    return u;
  }
  BudgetUncertainty u;
  u.nominal = in.bounds;
  for (size_t e = 0; e < E; ++e) {
    u.lower_extreme.push_back(in.bounds.lower[e] + a.deviation);
    const OptFlow& up = in.bounds.upper[e];
    u.upper_extreme.push_back(
        up ? OptFlow{std::max<Flow>(0, *up - a.deviation)} : OptFlow{});
  }
  u.gamma = a.gamma;
  return u;
}

int run_strict(const StrictArgs& a) {
  Loaded in = load(a.instance);
  UncertaintySet set = strict_set(a, in);
  StrictResult res =
      solve_strict(in.graph, set, ObjectiveWeights{a.ay, a.aw}, a.config);
  if (!a.export_lp.empty()) {
    DecompositionModel dm = build_decomposition_model(
        in.graph, res.envelope, ObjectiveWeights{a.ay, a.aw},
        a.config.k_max, a.config.w_max);
    write_file(a.export_lp, write_lp(dm.model));
  }
  print_solution(in.inst.name, res.solution);
  return exit_for(res.solution.status);
}

// ---- adjustable -----------------------------------------------------------

struct AdjustableArgs {
  std::string instance;
  std::string scenarios;
  std::string formulation = "ma";
  SolverConfig config;
};

Formulation parse_formulation(const std::string& s) {
  if (s == "ma") return Formulation::kAdjustablePaths;
  if (s == "la") return Formulation::kAdjustableWeights;
  return Formulation::kPooled;
}

void print_adjustable(const std::string& name, const AdjustableResult& res,
                      const std::vector<CcgIteration>& log) {
  std::cout << "instance: " << name << "\n";
  std::cout << "formulation: "
            << (res.formulation == Formulation::kAdjustablePaths  ? "ma"
                : res.formulation == Formulation::kAdjustableWeights
                    ? "la"
                    : "naive")
            << "\n";
  std::cout << "status: " << status_name(res.status) << "\n";
  if (res.status == SolveStatus::kOptimal ||
      res.status == SolveStatus::kFeasible) {
    std::cout << "Y: " << res.slot_count << "\n";
    std::cout << "W: " << res.worst_weight << "\n";
    std::cout << "objective: " << detail::format_number(res.objective) << "\n";
  }
  if (res.infeasible_scenario >= 0)
    std::cout << "infeasible_scenario: " << res.infeasible_scenario << "\n";
  std::cout << "iterations: " << res.iterations << "\n";
  std::cout << "runtime_seconds: " << detail::format_number(res.runtime_seconds)
            << "\n";
  for (const CcgIteration& it : log) {
    std::cout << "iter " << it.iteration << ": lb="
              << detail::format_number(it.lower_bound)
              << " ub=" << detail::format_number(it.upper_bound)
              << " sub=" << detail::format_number(it.sub_value)
              << " feasible=" << (it.sub_feasible ? 1 : 0)
              << " added=" << it.scenario_added << "\n";
  }
  for (const Path& p : res.first_stage_paths) {
    std::cout << "path: edges";
    for (EdgeId id : p.edges) std::cout << " " << id;
    std::cout << "\n";
  }
  for (size_t s = 0; s < res.recourse.size(); ++s)
    std::cout << "scenario " << s
              << ": weight=" << res.recourse[s].total_weight << "\n";
}

int run_adjustable(const AdjustableArgs& a) {
  Loaded in = load(a.instance);
  ScenarioFile file = parse_scenarios(read_file(a.scenarios), in.graph);
  DiscreteUncertainty u{file.scenarios};
  Formulation f = parse_formulation(a.formulation);
  if (f == Formulation::kPooled) {
    AdjustableResult res = naive_solve(in.graph, u, a.config);
    print_adjustable(in.inst.name, res, {});
    return exit_for(res.status);
  }
  CcgOutcome out = ccg_solve(f, in.graph, u, a.config);
  print_adjustable(in.inst.name, out.result, out.state.log);
  return exit_for(out.result.status);
}

// ---- gen-scenarios --------------------------------------------------------

struct GenScenariosArgs {
  std::string instance;
  GenConfig gen;
  std::string out;
};

int run_gen_scenarios(const GenScenariosArgs& a) {
  Loaded in = load(a.instance);
  GeneratedSet set = generate(in.graph, a.gen);
  emit(serialize_scenarios(to_scenario_file(set), in.graph), a.out);
  return kOk;
}

// ---- gen-hard -------------------------------------------------------------

struct GenHardArgs {
  int64_t b = 1;
  Flow target = 1;
  std::vector<Flow> sizes;
  std::string name;
  std::string out;
};

int run_gen_hard(const GenHardArgs& a) {
  HardInstance hi = gen_hard_instance(a.b, a.target, a.sizes);
  if (!sizes_strictly_between_quarter_and_third(a.target, a.sizes))
    std::cerr << "note: sizes leave the strict (target/4, target/3) range\n";
  Instance inst;
  inst.name = a.name.empty() ? "hard_3partition_b" + std::to_string(a.b)
                             : a.name;
  inst.source = 0;
  inst.sink = 2;
  inst.nodes = {0, 1, 2};
  for (int e = 0; e < hi.graph.num_edges(); ++e) {
    InstanceEdgeSpec spec;
    spec.id = hi.graph.edge(e).id;
    spec.from = hi.graph.edge(e).from;
    spec.to = hi.graph.edge(e).to;
    spec.lower = hi.bounds.lower[static_cast<size_t>(e)];
    inst.edges.push_back(spec);
  }
  emit(serialize_instance(inst), a.out);
  return kOk;
}

// ---- experiment -----------------------------------------------------------

struct ExperimentArgs {
  std::string instance;
  std::vector<int> set_sizes = {2, 5};
  std::vector<double> gamma_primes = {0.1, 0.2, 0.3};
  std::vector<uint64_t> seeds;
  std::vector<std::string> methods = {"ma", "la", "naive"};
  int p = 10;
  SolverConfig config;
  std::string out;
};

int run_experiment(const ExperimentArgs& a) {
  Loaded in = load(a.instance);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!a.out.empty()) {
    file.open(a.out, std::ios::binary);
    if (!file) throw Error("cannot write " + a.out);
    os = &file;
  }
  *os << kResultCsvHeader << "\n" << std::flush;
  for (int size : a.set_sizes) {
    for (double gp : a.gamma_primes) {
      for (uint64_t seed : a.seeds) {
        GenConfig gen;
        gen.p = a.p;
        gen.count = size;
        gen.gamma_prime = gp;
        gen.seed = seed;
        DiscreteUncertainty u{generate(in.graph, gen).scenarios};
        for (const std::string& method : a.methods) {
          ResultRow row;
          row.instance = in.inst.name;
          row.method = method;
          row.set_size = size;
          row.gamma_prime = gp;
          row.seed = seed;
          Formulation f = parse_formulation(method);
          AdjustableResult res =
              f == Formulation::kPooled
                  ? naive_solve(in.graph, u, a.config)
                  : ccg_solve(f, in.graph, u, a.config).result;
          row.y = res.slot_count;
          row.w = res.worst_weight;
          row.objective = res.objective;
          row.iterations = res.iterations;
          row.runtime_seconds = res.runtime_seconds;
          row.status = status_name(res.status);
          *os << csv_line(row) << "\n" << std::flush;
        }
      }
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum weighted inexact flow decomposition toolkit"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand(
      "solve", "decompose one instance into weighted paths");
  solve->add_option("instance", sa.instance, "instance JSON file")->required();
  solve->add_option("--ay", sa.ay, "cost per path")->check(CLI::NonNegativeNumber);
  solve->add_option("--aw", sa.aw, "cost per unit of weight")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--kmax", sa.config.k_max, "path slot cap (0 = derive)");
  solve->add_option("--wmax", sa.config.w_max, "per-path weight cap (0 = derive)");
  solve->add_option("--backend", sa.backend, "solver backend")
      ->check(CLI::IsMember({"builtin"}));
  solve->add_option("--time-limit", sa.config.time_limit_master,
                    "seconds before the search stops");
  solve->add_option("--export-lp", sa.export_lp,
                    "also write the integer model in LP format");

  StrictArgs ta;
  CLI::App* strict = app.add_subcommand(
      "strict", "solve the worst-case envelope of an uncertainty set");
  strict->add_option("instance", ta.instance, "instance JSON file")->required();
  strict->add_option("--uncertainty", ta.uncertainty, "uncertainty family")
      ->check(CLI::IsMember({"discrete", "interval", "budget"}));
  strict->add_option("--scenarios", ta.scenarios,
                     "scenario JSON file (discrete family)");
  strict->add_option("--gamma", ta.gamma, "total deviation budget (budget family)");
  strict->add_option("--deviation", ta.deviation,
                     "per-edge bound deviation (interval and budget families)");
  strict->add_option("--ay", ta.ay, "cost per path")
      ->check(CLI::NonNegativeNumber);
  strict->add_option("--aw", ta.aw, "cost per unit of weight")
      ->check(CLI::NonNegativeNumber);
  strict->add_option("--kmax", ta.config.k_max, "path slot cap (0 = derive)");
  strict->add_option("--wmax", ta.config.w_max, "per-path weight cap (0 = derive)");
  strict->add_option("--time-limit", ta.config.time_limit_master,
                     "seconds before the search stops");
  strict->add_option("--export-lp", ta.export_lp,
                     "also write the envelope's integer model in LP format");

  AdjustableArgs aa;
  CLI::App* adj = app.add_subcommand(
      "adjustable", "two-stage solve over a scenario set");
  adj->add_option("instance", aa.instance, "instance JSON file")->required();
  adj->add_option("--scenarios", aa.scenarios, "scenario JSON file")->required();
  adj->add_option("--formulation", aa.formulation,
                  "ma (paths adapt), la (weights adapt), naive (pooled)")
      ->check(CLI::IsMember({"ma", "la", "naive"}));
  adj->add_option("--epsilon", aa.config.epsilon, "optimality gap tolerance");
  adj->add_option("--kmax", aa.config.k_max, "path slot cap (0 = derive)");
  adj->add_option("--wmax", aa.config.w_max, "per-path weight cap (0 = derive)");
  adj->add_option("--time-limit-master", aa.config.time_limit_master,
                  "seconds per master solve");
  adj->add_option("--time-limit-sub", aa.config.time_limit_sub,
                  "seconds per scenario sub-solve");
  adj->add_option("--time-limit-total", aa.config.time_limit_total,
                  "seconds for the whole run");

  GenScenariosArgs ga;
  CLI::App* gen = app.add_subcommand(
      "gen-scenarios", "draw a scenario set around a sampled nominal flow");
  gen->add_option("instance", ga.instance, "instance JSON file")->required();
  gen->add_option("--p", ga.gen.p, "paths superposed per scenario");
  gen->add_option("--gamma-prime", ga.gen.gamma_prime,
                  "deviation budget fraction");
  gen->add_option("--count", ga.gen.count, "scenarios to accept");
  CLI::Option* seed_opt =
      gen->add_option("--seed", ga.gen.seed, "generator seed");
  gen->add_option("--aux", ga.gen.auxiliary_edges,
                  "edge ids whose lower bounds stay 0")
      ->delimiter(',');
  gen->add_option("--max-rejections", ga.gen.max_rejections,
                  "rejection budget (0 = 1000 per scenario)");
  gen->add_option("--out", ga.out, "write here instead of stdout");

  GenHardArgs ha;
  CLI::App* hard = app.add_subcommand(
      "gen-hard", "emit a partition-gadget instance");
  hard->add_option("--b", ha.b, "number of groups")->required();
  hard->add_option("--B", ha.target, "per-group target sum")->required();
  hard->add_option("--sizes", ha.sizes, "3b item sizes")
      ->required()
      ->delimiter(',');
  hard->add_option("--name", ha.name, "instance name");
  hard->add_option("--out", ha.out, "write here instead of stdout");

  ExperimentArgs ea;
  CLI::App* exp = app.add_subcommand(
      "experiment", "method-comparison grid emitting CSV rows");
  exp->add_option("instance", ea.instance, "instance JSON file")->required();
  exp->add_option("--set-sizes", ea.set_sizes, "scenario-set sizes")
      ->delimiter(',');
  exp->add_option("--gamma-primes", ea.gamma_primes,
                  "deviation budget fractions")
      ->delimiter(',');
  CLI::Option* seeds_opt =
      exp->add_option("--seeds", ea.seeds, "generator seeds")->delimiter(',');
  exp->add_option("--methods", ea.methods, "subset of ma,la,naive")
      ->delimiter(',');
  exp->add_option("--p", ea.p, "paths superposed per scenario");
  exp->add_option("--epsilon", ea.config.epsilon, "optimality gap tolerance");
  exp->add_option("--kmax", ea.config.k_max, "path slot cap (0 = derive)");
  exp->add_option("--wmax", ea.config.w_max, "per-path weight cap (0 = derive)");
  exp->add_option("--time-limit-master", ea.config.time_limit_master,
                  "seconds per master solve");
  exp->add_option("--time-limit-sub", ea.config.time_limit_sub,
                  "seconds per scenario sub-solve");
  exp->add_option("--time-limit-total", ea.config.time_limit_total,
                  "seconds per method run");
  exp->add_option("--out", ea.out, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (seed_opt->count() == 0) ga.gen.seed = env_seed();
  if (seeds_opt->count() == 0) ea.seeds = {env_seed() ? env_seed() : 1};
  for (const std::string& m : ea.methods)
    if (m != "ma" && m != "la" && m != "naive") {
      std::cerr << "error: unknown method " << m << "\n";
      return kUsage;
    }

  try {
    if (solve->parsed()) return run_solve(sa);
    if (strict->parsed()) return run_strict(ta);
    if (adj->parsed()) return run_adjustable(aa);
    if (gen->parsed()) return run_gen_scenarios(ga);
    if (hard->parsed()) return run_gen_hard(ha);
    if (exp->parsed()) return run_experiment(ea);
  } catch (const StrictInfeasibleError& e) {
    std::cout << "status: infeasible\ncrossed_edges:";
    for (EdgeId id : e.edges) std::cout << " " << id;
    std::cout << "\n";
    return kInfeasibleExit;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TooFewPathsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BadSizesError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
