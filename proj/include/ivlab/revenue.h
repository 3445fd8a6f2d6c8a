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

#ifndef IVLAB_REVENUE_H_
#define IVLAB_REVENUE_H_

#include <cstddef>
#include <cstdint>

#include "ivlab/instance.h"
#include "ivlab/mechanism.h"
#include "ivlab/rational.h"

namespace ivlab {

enum class RevenueMode { kExact, kMonteCarlo };

struct RevenueOptions {
  RevenueMode mode = RevenueMode::kExact;
  size_t trials = 10000;
  std::uint64_t seed = 1;
  // Exact mode refuses more than this many (profile, realization) atoms.
  size_t atom_cap = 10'000'000;
};

struct RevenueResult {
  RevenueMode mode = RevenueMode::kExact;
  Rational exact = 0;      // exact mode only
  double mean = 0;
  double std_error = 0;    // Monte Carlo only
  size_t samples = 0;      // atoms or trials
  size_t fallbacks = 0;    // reserve fallbacks taken
};

// E[sum_i p_i(S)] over the signal law and the mechanism's randomness.
RevenueResult ExpectedRevenue(const Instance& instance, const MechanismConfig& config,
                              const RevenueOptions& options = {});

// E[sum_{i in W(S)} R_i(S_-i) + v(W'(S))] where W' is the max-weight basis of
// the agents outside W and R_i the winner-conditioned reserve revenue.
// Matroids only.
Rational OptUpperBound(const Instance& instance);

}  // namespace ivlab

#endif  // IVLAB_REVENUE_H_
