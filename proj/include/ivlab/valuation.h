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

#ifndef IVLAB_VALUATION_H_
#define IVLAB_VALUATION_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ivlab/distribution.h"
#include "ivlab/rational.h"

namespace ivlab {

enum class ValuationFamily { kPrivate, kWeightedSum, kAdditive, kConcaveAdditive, kTable };

std::string FamilyName(ValuationFamily family);

// y = slope * x + intercept. A concave outer function is the pointwise
// minimum of its pieces.
struct AffinePiece {
  Rational slope;
  Rational intercept;
};

// Per-pair additive terms: terms[i][j][k] = g_ij at grid point k of agent j.
using AdditiveTerms = std::vector<std::vector<std::vector<Rational>>>;

// Valuation functions v_i(s) of every agent, tabulated over the whole grid at
// construction. Construction enforces monotonicity (nondecreasing in every
// coordinate, strictly increasing in the own signal between adjacent grid
// points) and nonnegativity, throwing AssumptionError otherwise.
class ValuationProfile {
 public:
  // v_i(s) = s_i.
  static ValuationProfile Private(const SignalGrid& grid);
  // v_i(s) = s_i + beta * sum_{j != i} s_j, beta in [0, 1].
  static ValuationProfile WeightedSum(const SignalGrid& grid, const Rational& beta);
  // v_i(s) = sum_j g_ij(s_j).
  static ValuationProfile Additive(const SignalGrid& grid, AdditiveTerms terms);
  // v_i(s) = min_k (a_ik * x_i + b_ik) with x_i = sum_j g_ij(s_j).
  static ValuationProfile ConcaveAdditive(const SignalGrid& grid, AdditiveTerms terms,
                                          std::vector<std::vector<AffinePiece>> outer);
  // values[flat][i] for every grid profile.
  static ValuationProfile Table(const SignalGrid& grid, std::vector<std::vector<Rational>> values);

  // Samples a step function at grid points. `steps` holds (breakpoint,
  // value) pairs; the value at x is that of the last breakpoint <= x. The
  // first breakpoint must not exceed the smallest grid point.
  static std::vector<Rational> StepFunctionOnGrid(
      const std::vector<Rational>& grid_points, std::vector<std::pair<Rational, Rational>> steps);

  ValuationFamily family() const { return family_; }
  bool is_private() const { return family_ == ValuationFamily::kPrivate; }
  int num_agents() const { return grid_.num_agents(); }
  const SignalGrid& grid() const { return grid_; }

  const Rational& Value(int agent, size_t flat) const {
    return values_[flat * static_cast<size_t>(num_agents()) + static_cast<size_t>(agent)];
  }
  const Rational& Value(int agent, const Profile& profile) const {
    return Value(agent, grid_.Flatten(profile));
  }
  // Signals given as values; DomainError when off the grid.
  const Rational& ValueAt(int agent, const std::vector<Rational>& signals) const;

  const Rational& beta() const { return beta_; }
  const AdditiveTerms& additive_terms() const { return terms_; }
  const std::vector<std::vector<AffinePiece>>& outer() const { return outer_; }

 private:
  ValuationProfile(ValuationFamily family, const SignalGrid& grid);
  void Tabulate(const std::vector<std::vector<Rational>>& per_profile);
  void CheckTerms() const;

  ValuationFamily family_;
  SignalGrid grid_;
  Rational beta_;
  AdditiveTerms terms_;
  std::vector<std::vector<AffinePiece>> outer_;
  std::vector<Rational> values_;
};

struct MonotonicityViolation {
  int agent;
  int coordinate;
  size_t profile;  // flat index of the lower profile
  std::string reason;
};

// Monotonicity on the grid plus nonnegativity. Empty means pass.
std::vector<MonotonicityViolation> CheckMonotone(const SignalGrid& grid, const std::vector<Rational>& values);

struct SingleCrossingViolation {
  int agent;        // i, whose signal moves
  int other;        // j
  size_t profile;   // flat index with agent i at `low`
  int low;          // grid index s_i with v_i >= v_j
  int high;         // grid index s_i' > s_i with v_i <= v_j
};

// Exhaustive single-crossing check: for all i != j, s_{-i} and grid points
// s_i < s_i', v_i(s_i) >= v_j(s_i) must imply v_i(s_i') > v_j(s_i').
std::vector<SingleCrossingViolation> CheckSingleCrossing(const ValuationProfile& vp);

struct CrossEffectViolation {
  int agent;    // i
  int other;    // j, whose signal takes the forward step
  size_t profile;  // flat index at the lower s_i and lower s_j
};

// Diminishing cross effects: for all i != j, the forward difference of v_i in s_j must be
// nonincreasing as s_i moves up the grid.
std::vector<CrossEffectViolation> CheckDiminishingCrossEffects(const ValuationProfile& vp);

}  // namespace ivlab

#endif  // IVLAB_VALUATION_H_
