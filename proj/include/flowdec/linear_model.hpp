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

// Integer linear models: bounded integer variables, linear constraints with
// integer coefficients, a real-valued minimization objective, and an LP-file
// writer for interoperability with external solvers.

#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flowdec/common.hpp"

namespace flowdec {

struct ModelVariable {
  std::string name;
  Flow lower = 0;
  Flow upper = 1;
};

struct LinearTerm {
  int var = 0;
  Flow coeff = 0;
};

enum class Sense { kLe, kGe, kEq };

struct ModelConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::kLe;
  Flow rhs = 0;
};

// A minimization model over bounded integer variables.
class LinearModel {
 public:
  int add_variable(std::string name, Flow lower, Flow upper) {
    if (lower > upper) throw std::invalid_argument("empty variable domain");
    variables_.push_back({std::move(name), lower, upper});
    objective_.push_back(0.0);
    return static_cast<int>(variables_.size()) - 1;
  }

  void set_objective_coeff(int var, double coeff) {
    objective_.at(static_cast<size_t>(var)) = coeff;
  }

  int add_constraint(std::string name, std::vector<LinearTerm> terms,
                     Sense sense, Flow rhs) {
    for (const LinearTerm& t : terms)
      if (t.var < 0 || t.var >= num_variables())
        throw std::invalid_argument("constraint references unknown variable");
    constraints_.push_back({std::move(name), std::move(terms), sense, rhs});
    return static_cast<int>(constraints_.size()) - 1;
  }

  // Shrinks a variable's domain; used to install presolved bounds.
  void tighten_variable(int var, Flow lower, Flow upper) {
    ModelVariable& v = variables_.at(static_cast<size_t>(var));
    v.lower = std::max(v.lower, lower);
    v.upper = min_with(v.upper, upper);
    if (v.lower > v.upper)
      throw std::invalid_argument("tightening emptied the domain");
  }

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const ModelVariable& variable(int i) const {
    return variables_.at(static_cast<size_t>(i));
  }
  const ModelConstraint& constraint(int i) const {
    return constraints_.at(static_cast<size_t>(i));
  }
  const std::vector<double>& objective() const { return objective_; }

  double objective_value(const std::vector<Flow>& assignment) const {
    double v = 0.0;
    for (size_t i = 0; i < objective_.size(); ++i)
      v += objective_[i] * static_cast<double>(assignment[i]);
    return v;
  }

  bool satisfies(const std::vector<Flow>& assignment) const {
    if (assignment.size() != variables_.size()) return false;
    for (size_t i = 0; i < variables_.size(); ++i)
      if (assignment[i] < variables_[i].lower ||
          assignment[i] > variables_[i].upper)
        return false;
    for (const ModelConstraint& c : constraints_) {
      Flow lhs = 0;
      for (const LinearTerm& t : c.terms)
        lhs += t.coeff * assignment[static_cast<size_t>(t.var)];
      if (c.sense == Sense::kLe && lhs > c.rhs) return false;
      if (c.sense == Sense::kGe && lhs < c.rhs) return false;
      if (c.sense == Sense::kEq && lhs != c.rhs) return false;
    }
    return true;
  }

 private:
  std::vector<ModelVariable> variables_;
  std::vector<ModelConstraint> constraints_;
  std::vector<double> objective_;
};

namespace detail {

inline std::string lp_number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::ostringstream os;
    os << static_cast<long long>(v);
    return os.str();
  }
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline void lp_terms(std::ostringstream& os,
                     const std::vector<std::pair<int, double>>& terms,
                     const LinearModel& m) {
  bool first = true;
  for (const auto& [var, coeff] : terms) {
    if (coeff == 0.0) continue;
    if (first) {
      if (coeff < 0) os << "- ";
      first = false;
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    double mag = std::abs(coeff);
    if (mag != 1.0) os << lp_number(mag) << " ";
    os << m.variable(var).name;
  }
  if (first) os << "0 " << m.variable(0).name;
}

}  // namespace detail

// Serializes the model in LP format (minimization, integer variables).
inline std::string write_lp(const LinearModel& m) {
  if (m.num_variables() == 0) throw std::invalid_argument("empty model");
  std::ostringstream os;
  os << "Minimize\n obj: ";
  std::vector<std::pair<int, double>> obj_terms;
  for (int i = 0; i < m.num_variables(); ++i)
    obj_terms.emplace_back(i, m.objective()[static_cast<size_t>(i)]);
  detail::lp_terms(os, obj_terms, m);
  os << "\nSubject To\n";
  for (int c = 0; c < m.num_constraints(); ++c) {
    const ModelConstraint& con = m.constraint(c);
    os << " " << con.name << ": ";
    std::vector<std::pair<int, double>> terms;
    for (const LinearTerm& t : con.terms)
      terms.emplace_back(t.var, static_cast<double>(t.coeff));
    detail::lp_terms(os, terms, m);
    const char* sense = con.sense == Sense::kLe   ? "<="
                        : con.sense == Sense::kGe ? ">="
                                                  : "=";
    os << " " << sense << " " << con.rhs << "\n";
  }
  os << "Bounds\n";
  for (int i = 0; i < m.num_variables(); ++i) {
    const ModelVariable& v = m.variable(i);
    os << " " << v.lower << " <= " << v.name << " <= " << v.upper << "\n";
  }
  os << "General\n";
  for (int i = 0; i < m.num_variables(); ++i)
    os << " " << m.variable(i).name;
  os << "\nEnd\n";
  return os.str();
}

}  // namespace flowdec
