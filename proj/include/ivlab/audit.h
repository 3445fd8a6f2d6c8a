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

#ifndef IVLAB_AUDIT_H_
#define IVLAB_AUDIT_H_

#include <cstddef>
#include <string>
#include <vector>

#include "ivlab/distribution.h"
#include "ivlab/instance.h"
#include "ivlab/mechanism.h"
#include "ivlab/rational.h"

namespace ivlab {

inline constexpr int kIrCheck = -1;

struct AuditViolation {
  std::string realization;
  size_t profile = 0;          // flat index of the true profile
  int agent = 0;
  int deviation = kIrCheck;    // reported own grid index, or kIrCheck
  // IC: deviating utility minus truthful utility. IR: minus truthful utility.
  Rational gap = 0;

  std::string Describe(const Instance& instance) const;
};

struct AuditOptions {
  // Rational: any positive gap is a violation. Double: gaps above `tolerance`.
  Arithmetic arithmetic = Arithmetic::kRational;
  double tolerance = 1e-9;
  // Stop recording (but keep counting) after this many.
  size_t max_recorded = 1000;
};

struct AuditReport {
  std::vector<AuditViolation> violations;
  size_t violation_count = 0;
  size_t checks = 0;
  size_t realizations = 0;
  bool passed() const { return violation_count == 0; }
};

// Expected allocation and payment per agent at every profile:
// entries [flat * n + i]. Profiles with defined[flat] == 0 are absent.
struct OutcomeTable {
  std::vector<Rational> alloc;
  std::vector<Rational> payment;
  std::vector<char> defined;
};

// Tabulates a mechanism realization over the whole grid.
OutcomeTable TabulateOutcomes(Auctioneer& auctioneer, const MechanismConfig& config,
                              const Realization& realization);

// Checks IC between every pair of reports in every slice (agent i, s_-i)
// whose profiles are all defined, and IR at every defined profile. With
// `support_slices_only`, IC slices must also hold a support profile.
void AuditTable(const Instance& instance, const OutcomeTable& table, const std::string& label,
                bool support_slices_only, const AuditOptions& options, AuditReport& report);

// Ex post IC and IR at every grid profile, agent and grid deviation, for
// every realization of the mechanism's internal randomness.
AuditReport IcIrAudit(const Instance& instance, const MechanismConfig& config,
                      const AuditOptions& options = {});

}  // namespace ivlab

#endif  // IVLAB_AUDIT_H_
