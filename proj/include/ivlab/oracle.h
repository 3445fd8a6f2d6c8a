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

#ifndef IVLAB_ORACLE_H_
#define IVLAB_ORACLE_H_

#include <cstddef>
#include <vector>

#include "ivlab/audit.h"
#include "ivlab/distribution.h"
#include "ivlab/element_set.h"
#include "ivlab/instance.h"
#include "ivlab/lp.h"

namespace ivlab {

// Revenue-maximizing randomized ex post IC and IR mechanism as an LP over
// the profiles P: the support plus every grid profile sharing s_-i with a
// support profile. Variables are y[s][S] (probability of feasible set S) and
// p[s][i] >= 0. IC rows cover every ordered pair of reports within each
// slice (i, s_-i) that contains support; IR rows cover every (i, s) in P.
struct RevenueLP {
  LinearProgram lp;
  std::vector<size_t> profiles;    // flat indices of P, ascending
  std::vector<int> position;       // flat -> index into profiles, or -1
  std::vector<ElementSet> sets;    // feasible sets
  int num_agents = 0;
  size_t simplex_rows = 0;
  size_t ic_rows = 0;
  size_t ir_rows = 0;

  int AllocVar(size_t profile_index, size_t set_index) const {
    return static_cast<int>(profile_index * sets.size() + set_index);
  }
  int PaymentVar(size_t profile_index, int agent) const {
    return static_cast<int>(profiles.size() * sets.size() + profile_index * static_cast<size_t>(num_agents) +
                            static_cast<size_t>(agent));
  }
};

struct OracleOptions {
  // Rational is the default; double trades exactness for speed.
  Arithmetic arithmetic = Arithmetic::kRational;
  size_t variable_cap = 200000;
};

// SizeError when the variable count exceeds the cap.
RevenueLP BuildRevenueLP(const Instance& instance, const OracleOptions& options = {});

struct OracleResult {
  Rational revenue = 0;
  LPSolution solution;
  RevenueLP lp;
  // Expected allocation and payment at every profile of P.
  OutcomeTable witness;
};

OracleResult OptRevenue(const Instance& instance, const OracleOptions& options = {});

OutcomeTable WitnessTable(const Instance& instance, const RevenueLP& lp, const LPSolution& solution);

// Audits the witness on the slices the LP constrains.
AuditReport AuditWitness(const Instance& instance, const OracleResult& result, const AuditOptions& options = {});

}  // namespace ivlab

#endif  // IVLAB_ORACLE_H_
