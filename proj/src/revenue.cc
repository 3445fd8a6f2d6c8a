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

#include "ivlab/revenue.h"

#include <cmath>
#include <random>

#include "ivlab/errors.h"

namespace ivlab {

RevenueResult ExpectedRevenue(const Instance& instance, const MechanismConfig& config,
                              const RevenueOptions& options) {
  RevenueResult result;
  result.mode = options.mode;
  Auctioneer auctioneer(instance);
  const JointDistribution& dist = instance.dist();
  if (options.mode == RevenueMode::kExact) {
    std::vector<Realization> realizations = EnumerateRealizations(instance, config);
    const size_t atoms = realizations.size() * dist.support_flat().size();
    if (atoms > options.atom_cap) {
      throw SizeError("exact revenue needs " + std::to_string(atoms) + " atoms, cap is " +
                      std::to_string(options.atom_cap));
    }
    for (const Realization& r : realizations) {
      Rational sum = 0;
      for (size_t flat : dist.support_flat()) {
        sum += dist.Probability(flat) * auctioneer.Run(config, flat, r).Revenue();
      }
      result.exact += r.weight * sum;
    }
    result.mean = ToDouble(result.exact);
    result.samples = atoms;
  } else {
    if (options.trials < 2) throw DomainError("Monte Carlo mode needs at least two trials");
    std::mt19937_64 rng(options.seed);
    double mean = 0;
    double m2 = 0;
    for (size_t t = 0; t < options.trials; ++t) {
      Profile s = dist.Sample(rng);
      Realization r = SampleRealization(instance, config, rng);
      double x = ToDouble(auctioneer.Run(config, instance.grid().Flatten(s), r).Revenue());
      double delta = x - mean;
      mean += delta / static_cast<double>(t + 1);
      m2 += delta * (x - mean);
    }
    result.mean = mean;
    double variance = m2 / static_cast<double>(options.trials - 1);
    result.std_error = std::sqrt(variance / static_cast<double>(options.trials));
    result.samples = options.trials;
  }
  result.fallbacks = auctioneer.fallback_count();
  return result;
}

Rational OptUpperBound(const Instance& instance) {
  const FeasibilitySystem& feas = instance.feas();
  if (!feas.is_matroid()) throw UnsupportedOperation("opt_upper_bound requires a matroid");
  const int n = instance.num_agents();
  Auctioneer auctioneer(instance);
  Rational bound = 0;
  std::vector<Rational> weights(static_cast<size_t>(n));
  for (size_t flat : instance.dist().support_flat()) {
    ElementSet w = auctioneer.Winners(flat, instance.agents());
    Rational term = 0;
    for (int i : w.ToVector()) {
      term += auctioneer.ConditionalMonopolyReserve(i, flat, ReserveEvent::kWinnerConditioned, instance.agents())
                  .revenue;
    }
    for (int i = 0; i < n; ++i) weights[static_cast<size_t>(i)] = instance.Value(i, flat);
    term += feas.MaxWeightBasis(weights, instance.tie_break(), BasisMode::kFull, instance.agents() - w).weight;
    bound += instance.dist().Probability(flat) * term;
  }
  return bound;
}

}  // namespace ivlab
