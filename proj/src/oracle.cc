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

#include "ivlab/oracle.h"

#include "ivlab/errors.h"

namespace ivlab {

RevenueLP BuildRevenueLP(const Instance& instance, const OracleOptions& options) {
  const SignalGrid& grid = instance.grid();
  const JointDistribution& dist = instance.dist();
  const int n = instance.num_agents();
  RevenueLP out;
  out.num_agents = n;
  out.sets = instance.feas().FeasibleSets();

  std::vector<char> in_p(grid.num_profiles(), 0);
  for (size_t flat : dist.support_flat()) {
    in_p[flat] = 1;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < grid.size(i); ++k) in_p[grid.Replace(flat, i, k)] = 1;
    }
  }
  out.position.assign(grid.num_profiles(), -1);
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    if (!in_p[flat]) continue;
    out.position[flat] = static_cast<int>(out.profiles.size());
    out.profiles.push_back(flat);
  }
  const size_t num_vars = out.profiles.size() * (out.sets.size() + static_cast<size_t>(n));
  if (num_vars > options.variable_cap) {
    throw SizeError("revenue LP needs " + std::to_string(num_vars) + " variables (" +
                    std::to_string(out.profiles.size()) + " profiles x (" + std::to_string(out.sets.size()) +
                    " feasible sets + " + std::to_string(n) + " payments)); cap is " +
                    std::to_string(options.variable_cap));
  }

  LinearProgram& lp = out.lp;
  lp.objective.assign(num_vars, Rational(0));
  for (size_t pos = 0; pos < out.profiles.size(); ++pos) {
    const Rational& prob = dist.Probability(out.profiles[pos]);
    if (sgn(prob) == 0) continue;
    for (int i = 0; i < n; ++i) lp.objective[static_cast<size_t>(out.PaymentVar(pos, i))] = prob;
  }

  for (size_t pos = 0; pos < out.profiles.size(); ++pos) {
    std::vector<LinearTerm> terms;
    for (size_t s = 0; s < out.sets.size(); ++s) terms.push_back({out.AllocVar(pos, s), Rational(1)});
    lp.AddConstraint(std::move(terms), RowSense::kEqual, 1);
    ++out.simplex_rows;
  }

  // value * x_i(s) as terms over the feasible sets holding i.
  auto alloc_terms = [&](std::vector<LinearTerm>& terms, size_t pos, int agent, const Rational& scale) {
    for (size_t s = 0; s < out.sets.size(); ++s) {
      if (out.sets[s].Contains(agent)) terms.push_back({out.AllocVar(pos, s), scale});
    }
  };

  for (int i = 0; i < n; ++i) {
    for (size_t slice = 0; slice < grid.num_profiles(); ++slice) {
      if (grid.Coordinate(slice, i) != 0) continue;
      bool touches = false;
      for (int k = 0; k < grid.size(i); ++k) touches |= sgn(dist.Probability(grid.Replace(slice, i, k))) > 0;
      if (!touches) continue;
      for (int k = 0; k < grid.size(i); ++k) {
        size_t truth = grid.Replace(slice, i, k);
        size_t tpos = static_cast<size_t>(out.position[truth]);
        const Rational& v = instance.Value(i, truth);
        for (int d = 0; d < grid.size(i); ++d) {
          if (d == k) continue;
          size_t dpos = static_cast<size_t>(out.position[grid.Replace(slice, i, d)]);
          // v x(d) - p(d) - v x(k) + p(k) <= 0
          std::vector<LinearTerm> terms;
          alloc_terms(terms, dpos, i, v);
          terms.push_back({out.PaymentVar(dpos, i), Rational(-1)});
          alloc_terms(terms, tpos, i, -v);
          terms.push_back({out.PaymentVar(tpos, i), Rational(1)});
          lp.AddConstraint(std::move(terms), RowSense::kLessEqual, 0);
          ++out.ic_rows;
        }
      }
    }
  }

  for (size_t pos = 0; pos < out.profiles.size(); ++pos) {
    for (int i = 0; i < n; ++i) {
      std::vector<LinearTerm> terms{{out.PaymentVar(pos, i), Rational(1)}};
      alloc_terms(terms, pos, i, -instance.Value(i, out.profiles[pos]));
      lp.AddConstraint(std::move(terms), RowSense::kLessEqual, 0);
      ++out.ir_rows;
    }
  }
  return out;
}

OutcomeTable WitnessTable(const Instance& instance, const RevenueLP& lp, const LPSolution& solution) {
  const size_t n = static_cast<size_t>(instance.num_agents());
  const size_t g = instance.grid().num_profiles();
  OutcomeTable t;
  t.alloc.assign(g * n, Rational(0));
  t.payment.assign(g * n, Rational(0));
  t.defined.assign(g, 0);
  for (size_t pos = 0; pos < lp.profiles.size(); ++pos) {
    size_t flat = lp.profiles[pos];
    t.defined[flat] = 1;
    for (size_t s = 0; s < lp.sets.size(); ++s) {
      const Rational& y = solution.values[static_cast<size_t>(lp.AllocVar(pos, s))];
      if (sgn(y) == 0) continue;
      for (int i : lp.sets[s].ToVector()) t.alloc[flat * n + static_cast<size_t>(i)] += y;
    }
    for (size_t i = 0; i < n; ++i) {
      t.payment[flat * n + i] = solution.values[static_cast<size_t>(lp.PaymentVar(pos, static_cast<int>(i)))];
    }
  }
  return t;
}

OracleResult OptRevenue(const Instance& instance, const OracleOptions& options) {
  OracleResult result;
  result.lp = BuildRevenueLP(instance, options);
  LPOptions lp_options;
  lp_options.arithmetic = options.arithmetic;
  result.solution = SolveLP(result.lp.lp, lp_options);
  if (result.solution.status != LPStatus::kOptimal) {
    throw InvariantViolation("revenue LP is " + StatusName(result.solution.status) + " for instance '" +
                             instance.name() + "'");
  }
  result.revenue = result.solution.objective;
  result.witness = WitnessTable(instance, result.lp, result.solution);
  return result;
}

AuditReport AuditWitness(const Instance& instance, const OracleResult& result, const AuditOptions& options) {
  AuditReport report;
  report.realizations = 1;
  AuditOptions opts = options;
  if (!result.solution.exact) opts.arithmetic = Arithmetic::kDouble;
  AuditTable(instance, result.witness, "oracle", true, opts, report);
  return report;
}

}  // namespace ivlab
