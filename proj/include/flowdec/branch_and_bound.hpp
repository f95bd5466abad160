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

// Depth-first branch and bound over bounded integer variables. Nodes are
// processed with feasibility-based bound tightening run to a fixpoint (each
// row tightens the variables it touches from the row's slack), plus domain
// filtering against the incumbent through the objective. Branching picks the
// lowest-indexed undecided variable and bisects its domain, lower half first,
// so variable creation order doubles as branching priority. All constraint
// arithmetic is exact in 64-bit integers; only the objective uses doubles.

#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "flowdec/common.hpp"
#include "flowdec/linear_model.hpp"

namespace flowdec {

struct BnbOptions {
  double time_limit = 1800.0;           // seconds
  bool stop_at_first_incumbent = false; // accept the first feasible point
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;        // incumbent value when one exists
  double bound = 0.0;            // proven lower bound on the optimum
  std::vector<Flow> assignment;  // incumbent variable values
  int64_t nodes_explored = 0;
  double runtime_seconds = 0.0;
};

namespace detail {

inline Flow floor_div(Flow a, Flow b) {
  Flow q = a / b;
  Flow r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline Flow ceil_div(Flow a, Flow b) { return -floor_div(-a, b); }

class BnbSolver {
 public:
  BnbSolver(const LinearModel& m, const BnbOptions& opt) : m_(m), opt_(opt) {
    const int n = m.num_variables();
    lo_.reserve(n);
    hi_.reserve(n);
    for (int i = 0; i < n; ++i) {
      lo_.push_back(m.variable(i).lower);
      hi_.push_back(m.variable(i).upper);
    }
    obj_ = m.objective();
    granule_ = 1.0;
    for (double c : obj_)
      if (c != 0.0 && c != std::floor(c)) granule_ = 1e-9;
    for (int c = 0; c < m.num_constraints(); ++c) {
      const ModelConstraint& con = m.constraint(c);
      if (con.sense != Sense::kGe) add_row(con.terms, con.rhs, false);
      if (con.sense != Sense::kLe) add_row(con.terms, con.rhs, true);
    }
    watch_.resize(n);
    for (size_t r = 0; r < rows_.size(); ++r)
      for (const LinearTerm& t : rows_[r].terms)
        watch_[static_cast<size_t>(t.var)].push_back(static_cast<int>(r));
    in_queue_.assign(rows_.size(), false);
  }

  SolveResult solve() {
    const auto t0 = std::chrono::steady_clock::now();
    deadline_ = t0 + std::chrono::duration_cast<
                         std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(opt_.time_limit));
    for (size_t r = 0; r < rows_.size(); ++r) enqueue(static_cast<int>(r));
    const double root = dfs();
    SolveResult res;
    res.nodes_explored = nodes_;
    res.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (incumbent_value_) {
      res.objective = *incumbent_value_;
      res.assignment = incumbent_;
      res.bound = std::min(root, *incumbent_value_);
      res.status = timed_out_                 ? SolveStatus::kTimeLimit
                   : opt_.stop_at_first_incumbent ? SolveStatus::kFeasible
                                                  : SolveStatus::kOptimal;
    } else {
      res.bound = root;
      res.status =
          timed_out_ ? SolveStatus::kTimeLimit : SolveStatus::kInfeasible;
    }
    return res;
  }

 private:
  struct Row {
    std::vector<LinearTerm> terms;
    Flow rhs = 0;
  };
  struct Change {
    int var;
    Flow old_lo, old_hi;
  };
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  // Stores terms*sign(le ? +1 : -1) as one "sum <= rhs" row, merging
  // repeated variables and dropping zero coefficients.
  void add_row(const std::vector<LinearTerm>& terms, Flow rhs, bool negate) {
    std::vector<Flow> coeff(static_cast<size_t>(m_.num_variables()), 0);
    for (const LinearTerm& t : terms)
      coeff[static_cast<size_t>(t.var)] += negate ? -t.coeff : t.coeff;
    Row row;
    row.rhs = negate ? -rhs : rhs;
    for (int v = 0; v < m_.num_variables(); ++v)
      if (coeff[static_cast<size_t>(v)] != 0)
        row.terms.push_back({v, coeff[static_cast<size_t>(v)]});
    rows_.push_back(std::move(row));
  }

  void enqueue(int r) {
    if (in_queue_[static_cast<size_t>(r)]) return;
    in_queue_[static_cast<size_t>(r)] = true;
    queue_.push_back(r);
  }

  void on_shrink(int var) {
    for (int r : watch_[static_cast<size_t>(var)]) enqueue(r);
  }

  bool set_hi(int var, Flow nh) {
    trail_.push_back({var, lo_[var], hi_[var]});
    hi_[var] = nh;
    if (lo_[var] > hi_[var]) return false;
    on_shrink(var);
    return true;
  }

  bool set_lo(int var, Flow nl) {
    trail_.push_back({var, lo_[var], hi_[var]});
    lo_[var] = nl;
    if (lo_[var] > hi_[var]) return false;
    on_shrink(var);
    return true;
  }

  void undo(size_t mark) {
    while (trail_.size() > mark) {
      const Change& c = trail_.back();
      lo_[c.var] = c.old_lo;
      hi_[c.var] = c.old_hi;
      trail_.pop_back();
    }
  }

  void clear_queue() {
    for (int r : queue_) in_queue_[static_cast<size_t>(r)] = false;
    queue_.clear();
  }

  // Drains the row queue, shrinking domains from row slacks. False = conflict.
  bool propagate_rows() {
    while (!queue_.empty()) {
      int r = queue_.front();
      queue_.pop_front();
      in_queue_[static_cast<size_t>(r)] = false;
      const Row& row = rows_[static_cast<size_t>(r)];
      Flow min_act = 0;
      for (const LinearTerm& t : row.terms)
        min_act += t.coeff > 0 ? t.coeff * lo_[t.var] : t.coeff * hi_[t.var];
      const Flow slack = row.rhs - min_act;
      if (slack < 0) return false;
      for (const LinearTerm& t : row.terms) {
        if (t.coeff > 0) {
          Flow nh = lo_[t.var] + slack / t.coeff;
          if (nh < hi_[t.var] && !set_hi(t.var, nh)) return false;
        } else {
          Flow nl = hi_[t.var] + ceil_div(slack, t.coeff);
          if (nl > lo_[t.var] && !set_lo(t.var, nl)) return false;
        }
      }
    }
    return true;
  }

  double objective_lower_bound() const {
    double lb = 0.0;
    for (size_t i = 0; i < obj_.size(); ++i)
      lb += obj_[i] > 0 ? obj_[i] * static_cast<double>(lo_[i])
                        : obj_[i] * static_cast<double>(hi_[i]);
    return lb;
  }

  // Shrinks domains that cannot participate in an improving solution.
  bool filter_objective(bool& changed) {
    if (!incumbent_value_) return true;
    const double cutoff = *incumbent_value_ - granule_;
    const double lb = objective_lower_bound();
    if (lb > cutoff + 1e-12) return false;
    for (int i = 0; i < m_.num_variables(); ++i) {
      const double c = obj_[static_cast<size_t>(i)];
      if (c > 0) {
        double room = cutoff - (lb - c * static_cast<double>(lo_[i]));
        Flow nh = static_cast<Flow>(std::floor(room / c + 1e-9));
        if (nh < hi_[i]) {
          if (!set_hi(i, nh)) return false;
          changed = true;
        }
      } else if (c < 0) {
        double room = cutoff - (lb - c * static_cast<double>(hi_[i]));
        Flow nl = static_cast<Flow>(std::ceil(room / c - 1e-9));
        if (nl > lo_[i]) {
          if (!set_lo(i, nl)) return false;
          changed = true;
        }
      }
    }
    return true;
  }

  bool full_propagate() {
    for (;;) {
      if (!propagate_rows()) {
        clear_queue();
        return false;
      }
      bool changed = false;
      if (!filter_objective(changed)) {
        clear_queue();
        return false;
      }
      if (!changed) return true;
    }
  }

  bool time_up() { return std::chrono::steady_clock::now() >= deadline_; }

  // Explores the subtree below the current domains. Returns a valid lower
  // bound on any feasible objective inside it; +inf when it is empty or
  // cannot hold an improving solution.
  double dfs() {
    ++nodes_;
    const size_t mark = trail_.size();
    if (!full_propagate()) {
      undo(mark);
      return kInf;
    }
    const double lb = objective_lower_bound();
    if (incumbent_value_ && lb > *incumbent_value_ - granule_ + 1e-12) {
      undo(mark);
      return kInf;
    }
    int v = -1;
    for (int i = 0; i < m_.num_variables(); ++i)
      if (lo_[i] < hi_[i]) {
        v = i;
        break;
      }
    if (v < 0) {
      // Every variable fixed: a candidate leaf. Propagation already proved
      // all rows hold; re-check against the source model as a guard.
      const bool ok = m_.satisfies(lo_);
      assert(ok);
      if (ok) {
        incumbent_value_ = lb;
        incumbent_ = lo_;
      }
      undo(mark);
      return ok ? lb : kInf;
    }
    if (time_up()) {
      timed_out_ = true;
      undo(mark);
      return lb;
    }
    const Flow mid = lo_[v] + (hi_[v] - lo_[v]) / 2;
    const size_t branch_mark = trail_.size();
    set_hi(v, mid);
    const double down = dfs();
    undo(branch_mark);
    clear_queue();
    if (timed_out_ || (opt_.stop_at_first_incumbent && incumbent_value_)) {
      undo(mark);
      return std::min(down, lb);
    }
    set_lo(v, mid + 1);
    const double up = dfs();
    undo(mark);
    clear_queue();
    return std::min(down, up);
  }

  const LinearModel& m_;
  BnbOptions opt_;
  std::vector<Row> rows_;
  std::vector<std::vector<int>> watch_;
  std::vector<Flow> lo_, hi_;
  std::vector<double> obj_;
  double granule_ = 1.0;
  std::vector<Change> trail_;
  std::deque<int> queue_;
  std::vector<bool> in_queue_;
  std::optional<double> incumbent_value_;
  std::vector<Flow> incumbent_;
  int64_t nodes_ = 0;
  bool timed_out_ = false;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace detail

inline SolveResult solve_model(const LinearModel& m,
                               const BnbOptions& opt = {}) {
  return detail::BnbSolver(m, opt).solve();
}

}  // namespace flowdec
