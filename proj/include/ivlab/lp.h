// Copyright 2026 The Authors.
//
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

#ifndef IVLAB_LP_H_
#define IVLAB_LP_H_

#include <cstddef>
#include <string>
#include <vector>

#include "ivlab/distribution.h"
#include "ivlab/rational.h"

namespace ivlab {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearTerm {
  int var;
  Rational coef;
};

struct LinearConstraint {
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::kLessEqual;
  Rational rhs = 0;
};

// maximize objective . x subject to the constraints and x >= 0.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int AddVariable(const Rational& cost = 0) {
    objective.push_back(cost);
    return num_vars() - 1;
  }
  void AddConstraint(std::vector<LinearTerm> terms, RowSense sense, const Rational& rhs) {
    constraints.push_back({std::move(terms), sense, rhs});
  }
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

std::string StatusName(LPStatus status);

struct LPOptions {
  // Rational: exact optimum. Double: floating-point simplex, solution checked
  // against the constraints within `tolerance`.
  Arithmetic arithmetic = Arithmetic::kRational;
  double tolerance = 1e-9;
  size_t max_pivots = 500000;
};

struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  Rational objective = 0;
  std::vector<Rational> values;
  // One multiplier per constraint, in the sign convention of a max problem
  // (>= 0 on <= rows, <= 0 on >= rows). Exact solves only.
  std::vector<Rational> duals;
  bool exact = false;
  size_t pivots = 0;
  // "double+verify", "rational", or "double".
  std::string method;
};

// Two-phase tableau simplex with Dantzig pricing that switches to Bland's
// rule after a run of degenerate pivots. In rational mode the optimal basis
// found in floating point is re-solved and certified in exact arithmetic;
// when certification fails the exact simplex runs from scratch. Throws
// NumericalError when double mode cannot produce a solution within tolerance.
LPSolution SolveLP(const LinearProgram& lp, const LPOptions& options = {});

// Largest violation of any constraint or bound by `x` (0 when feasible).
Rational MaxViolation(const LinearProgram& lp, const std::vector<Rational>& x);

}  // namespace ivlab

#endif  // IVLAB_LP_H_
