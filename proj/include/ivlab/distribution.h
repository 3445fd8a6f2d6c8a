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

#ifndef IVLAB_DISTRIBUTION_H_
#define IVLAB_DISTRIBUTION_H_

#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "ivlab/rational.h"

namespace ivlab {

// Exact rationals, or double-valued inputs accepted within a tolerance. All
// internal arithmetic stays exact in both modes; the mode decides how strictly
// inputs are validated and which LP path the oracle takes.
enum class Arithmetic { kRational, kDouble };

inline constexpr double kDoubleNormalizationTolerance = 1e-12;

// Grid indices, one per agent. Signal values are looked up in a SignalGrid.
using Profile = std::vector<int>;

// Per-agent strictly increasing finite lists of signal values.
class SignalGrid {
 public:
  SignalGrid() = default;
  explicit SignalGrid(std::vector<std::vector<Rational>> points);

  int num_agents() const { return static_cast<int>(points_.size()); }
  int size(int agent) const { return static_cast<int>(points_[static_cast<size_t>(agent)].size()); }
  const std::vector<Rational>& points(int agent) const { return points_[static_cast<size_t>(agent)]; }
  const Rational& value(int agent, int index) const {
    return points_[static_cast<size_t>(agent)][static_cast<size_t>(index)];
  }
  // Throws DomainError for off-grid values.
  int IndexOf(int agent, const Rational& value) const;

  // Profiles are numbered in lexicographic order, agent 0 most significant.
  size_t num_profiles() const { return num_profiles_; }
  size_t stride(int agent) const { return strides_[static_cast<size_t>(agent)]; }
  size_t Flatten(const Profile& profile) const;
  Profile Unflatten(size_t flat) const;
  // Flat index of `flat` with agent's coordinate replaced by `index`.
  size_t Replace(size_t flat, int agent, int index) const {
    int current = static_cast<int>((flat / strides_[static_cast<size_t>(agent)]) %
                                   static_cast<size_t>(size(agent)));
    return flat + static_cast<size_t>(index - current) * strides_[static_cast<size_t>(agent)];
  }
  int Coordinate(size_t flat, int agent) const {
    return static_cast<int>((flat / strides_[static_cast<size_t>(agent)]) %
                            static_cast<size_t>(size(agent)));
  }
  std::vector<Rational> Values(const Profile& profile) const;
  // Throws DomainError if a coordinate is off-grid.
  Profile ProfileOf(const std::vector<Rational>& signals) const;
  void CheckProfile(const Profile& profile) const;

 private:
  std::vector<std::vector<Rational>> points_;
  std::vector<size_t> strides_;
  size_t num_profiles_ = 1;
};

struct Atom {
  Rational value;
  Rational probability;
};

// Finite-support distribution of a scalar. Atoms are sorted ascending by
// value, merged, and restricted to positive probability.
class ScalarDistribution {
 public:
  // Throws NormalizationError when probabilities are negative or do not sum to
  // one (exactly in rational mode, within 1e-12 in double mode, in which case
  // they are rescaled exactly).
  explicit ScalarDistribution(std::vector<Atom> atoms, Arithmetic mode = Arithmetic::kRational);
  static ScalarDistribution PointMass(const Rational& value);

  const std::vector<Atom>& atoms() const { return atoms_; }
  size_t size() const { return atoms_.size(); }
  // P[X >= threshold]
  Rational TailProbability(const Rational& threshold) const;
  Rational Mean() const;

 private:
  ScalarDistribution() = default;
  friend ScalarDistribution TruncateAbove(const ScalarDistribution&, const Rational&);
  std::vector<Atom> atoms_;
};

// Law of X given X >= threshold. ConditioningError if the tail is empty.
ScalarDistribution TruncateAbove(const ScalarDistribution& d, const Rational& threshold);

struct PricePoint {
  Rational price;
  Rational revenue;
};

// (p, p * P[X >= p]) for every support point p, ascending.
std::vector<PricePoint> RevenueCurve(const ScalarDistribution& d);

// Revenue-maximizing posted price; ties go to the lowest price.
PricePoint MonopolyPrice(const ScalarDistribution& d);

// Discrete regularity diagnostics. The virtual value at v_k uses the forward
// gap, phi(v_k) = v_k - (1 - F(v_k)) (v_{k+1} - v_k) / f(v_k), with phi = v at
// the top atom; the hazard rate is f(v_k) / P[X >= v_k].
struct RegularityReport {
  std::vector<Rational> virtual_values;
  std::vector<Rational> hazard_rates;
  bool is_regular = true;
  bool is_mhr = true;
};

RegularityReport AnalyzeRegularity(const ScalarDistribution& d);

enum class DistributionForm { kTable, kProduct };

// Finite-support joint distribution of the signal profile.
class JointDistribution {
 public:
  // Entries name profiles by grid index. Duplicate profiles, negative mass and
  // normalization failures are rejected here.
  static JointDistribution Table(SignalGrid grid, std::vector<std::pair<Profile, Rational>> entries,
                                 Arithmetic mode = Arithmetic::kRational);
  // marginals[i][k] is P[S_i = grid.value(i, k)].
  static JointDistribution Product(SignalGrid grid, std::vector<std::vector<Rational>> marginals,
                                   Arithmetic mode = Arithmetic::kRational);

  const SignalGrid& grid() const { return grid_; }
  int num_agents() const { return grid_.num_agents(); }
  DistributionForm form() const { return form_; }
  Arithmetic arithmetic() const { return arithmetic_; }
  // Only meaningful for product form.
  const std::vector<std::vector<Rational>>& marginal_weights() const { return marginals_; }

  const Rational& Probability(size_t flat) const { return pmf_[flat]; }
  const Rational& Probability(const Profile& profile) const { return pmf_[grid_.Flatten(profile)]; }

  // Every positive-probability profile once, in flat order. Sums to one.
  const std::vector<std::pair<Profile, Rational>>& EnumerateSupport() const { return support_; }
  const std::vector<size_t>& support_flat() const { return support_flat_; }

  // P[S_{-i} = others_{-i}]; coordinate i of `others` is ignored.
  Rational SliceProbability(int agent, size_t others_flat) const;
  // Unnormalized P[S_i = k, S_{-i} = others_{-i}] for every grid index k.
  std::vector<Rational> SliceWeights(int agent, size_t others_flat) const;

  // Law of S_i given S_{-i} = others_{-i}, over signal values.
  // ConditioningError if the slice has probability zero.
  ScalarDistribution ConditionalSignal(int agent, const Profile& others) const;

  ScalarDistribution Marginal(int agent) const;
  // True when the pmf factorizes into its marginals.
  bool IsIndependent() const;

  // Draws a profile using the top 53 bits of one engine output, so the stream
  // is reproducible across standard libraries.
  Profile Sample(std::mt19937_64& rng) const;

 private:
  void BuildSupport();

  SignalGrid grid_;
  DistributionForm form_ = DistributionForm::kTable;
  Arithmetic arithmetic_ = Arithmetic::kRational;
  std::vector<Rational> pmf_;
  std::vector<std::vector<Rational>> marginals_;
  std::vector<std::pair<Profile, Rational>> support_;
  std::vector<size_t> support_flat_;
  std::vector<double> cumulative_;
};

// Exactly rescales `weights` to sum to one, enforcing the mode's tolerance.
// Throws NormalizationError on negative entries or a bad total.
std::vector<Rational> Normalize(std::vector<Rational> weights, Arithmetic mode, const char* what);

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double UniformUnit(std::mt19937_64& rng);

}  // namespace ivlab

#endif  // IVLAB_DISTRIBUTION_H_
