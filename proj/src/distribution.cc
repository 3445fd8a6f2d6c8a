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

#include "ivlab/distribution.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ivlab/errors.h"

namespace ivlab {

SignalGrid::SignalGrid(std::vector<std::vector<Rational>> points) : points_(std::move(points)) {
  strides_.assign(points_.size(), 1);
  for (size_t i = points_.size(); i-- > 0;) {
    auto& row = points_[i];
    if (row.empty()) throw DomainError("grid for agent " + std::to_string(i) + " is empty");
    for (auto& point : row) point.canonicalize();
    for (size_t k = 1; k < row.size(); ++k) {
      if (!(row[k - 1] < row[k])) {
        throw DomainError("grid for agent " + std::to_string(i) + " is not strictly increasing");
      }
    }
    strides_[i] = num_profiles_;
    num_profiles_ *= row.size();
    if (num_profiles_ > (size_t{1} << 40)) throw SizeError("signal grid has too many profiles");
  }
}

int SignalGrid::IndexOf(int agent, const Rational& value) const {
  const auto& row = points(agent);
  auto it = std::lower_bound(row.begin(), row.end(), value);
  if (it == row.end() || *it != value) {
    throw DomainError("signal " + ToString(value) + " is not on agent " + std::to_string(agent) + "'s grid");
  }
  return static_cast<int>(it - row.begin());
}

void SignalGrid::CheckProfile(const Profile& profile) const {
  if (profile.size() != points_.size()) throw DomainError("profile has the wrong number of agents");
  for (size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] < 0 || profile[i] >= size(static_cast<int>(i))) {
      throw DomainError("profile coordinate " + std::to_string(i) + " is off the grid");
    }
  }
}

size_t SignalGrid::Flatten(const Profile& profile) const {
  CheckProfile(profile);
  size_t flat = 0;
  for (size_t i = 0; i < profile.size(); ++i) flat += static_cast<size_t>(profile[i]) * strides_[i];
  return flat;
}

Profile SignalGrid::Unflatten(size_t flat) const {
  Profile profile(points_.size());
  for (int i = 0; i < num_agents(); ++i) profile[static_cast<size_t>(i)] = Coordinate(flat, i);
  return profile;
}

std::vector<Rational> SignalGrid::Values(const Profile& profile) const {
  CheckProfile(profile);
  std::vector<Rational> out;
  out.reserve(profile.size());
  for (size_t i = 0; i < profile.size(); ++i) out.push_back(value(static_cast<int>(i), profile[i]));
  return out;
}

Profile SignalGrid::ProfileOf(const std::vector<Rational>& signals) const {
  if (signals.size() != points_.size()) throw DomainError("profile has the wrong number of agents");
  Profile profile(signals.size());
  for (size_t i = 0; i < signals.size(); ++i) profile[i] = IndexOf(static_cast<int>(i), signals[i]);
  return profile;
}

std::vector<Rational> Normalize(std::vector<Rational> weights, Arithmetic mode, const char* what) {
  Rational total = 0;
  for (auto& w : weights) {
    w.canonicalize();
    if (sgn(w) < 0) throw NormalizationError(std::string(what) + ": negative probability");
    total += w;
  }
  if (total == 1) return weights;
  if (mode == Arithmetic::kRational) {
    throw NormalizationError(std::string(what) + ": probabilities sum to " + ToString(total) +
                             ", not 1");
  }
  if (std::fabs(ToDouble(total) - 1.0) > kDoubleNormalizationTolerance) {
    throw NormalizationError(std::string(what) + ": probabilities sum to " +
                             FormatDouble(ToDouble(total)) + ", outside 1e-12 of 1");
  }
  for (auto& w : weights) w /= total;
  return weights;
}

double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ScalarDistribution::ScalarDistribution(std::vector<Atom> atoms, Arithmetic mode) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Rational> probs;
  for (auto& atom : atoms) {
    if (!atoms_.empty() && atoms_.back().value == atom.value) {
      atoms_.back().probability += atom.probability;
    } else {
      atoms_.push_back(atom);
    }
  }
  for (const auto& atom : atoms_) probs.push_back(atom.probability);
  probs = Normalize(std::move(probs), mode, "scalar distribution");
  for (size_t k = 0; k < atoms_.size(); ++k) atoms_[k].probability = probs[k];
  std::erase_if(atoms_, [](const Atom& a) { return sgn(a.probability) == 0; });
}

ScalarDistribution ScalarDistribution::PointMass(const Rational& value) {
  return ScalarDistribution({{value, Rational(1)}});
}

Rational ScalarDistribution::TailProbability(const Rational& threshold) const {
  Rational tail = 0;
  for (const auto& atom : atoms_) {
    if (atom.value >= threshold) tail += atom.probability;
  }
  return tail;
}

Rational ScalarDistribution::Mean() const {
  Rational mean = 0;
  for (const auto& atom : atoms_) mean += atom.value * atom.probability;
  return mean;
}

ScalarDistribution TruncateAbove(const ScalarDistribution& d, const Rational& threshold) {
  Rational tail = d.TailProbability(threshold);
  if (sgn(tail) == 0) {
    throw ConditioningError("truncate_above: no mass at or above " + ToString(threshold));
  }
  ScalarDistribution out;
  for (const auto& atom : d.atoms()) {
    if (atom.value >= threshold) out.atoms_.push_back({atom.value, atom.probability / tail});
  }
  return out;
}

std::vector<PricePoint> RevenueCurve(const ScalarDistribution& d) {
  std::vector<PricePoint> curve(d.size());
  Rational tail = 0;
  for (size_t k = d.size(); k-- > 0;) {
    tail += d.atoms()[k].probability;
    curve[k] = {d.atoms()[k].value, d.atoms()[k].value * tail};
  }
  return curve;
}

PricePoint MonopolyPrice(const ScalarDistribution& d) {
  auto curve = RevenueCurve(d);
  PricePoint best = curve.front();
  for (const auto& point : curve) {
    if (point.revenue > best.revenue) best = point;
  }
  return best;
}

RegularityReport AnalyzeRegularity(const ScalarDistribution& d) {
  RegularityReport report;
  const auto& atoms = d.atoms();
  Rational cdf = 0;
  Rational tail = 1;
  for (size_t k = 0; k < atoms.size(); ++k) {
    const Rational& f = atoms[k].probability;
    report.hazard_rates.push_back(f / tail);
    cdf += f;
    if (k + 1 < atoms.size()) {
      Rational gap = atoms[k + 1].value - atoms[k].value;
      report.virtual_values.push_back(atoms[k].value - (1 - cdf) * gap / f);
    } else {
      report.virtual_values.push_back(atoms[k].value);
    }
    tail -= f;
  }
  for (size_t k = 1; k < atoms.size(); ++k) {
    if (report.virtual_values[k] < report.virtual_values[k - 1]) report.is_regular = false;
    if (report.hazard_rates[k] < report.hazard_rates[k - 1]) report.is_mhr = false;
  }
  return report;
}

JointDistribution JointDistribution::Table(SignalGrid grid,
                                           std::vector<std::pair<Profile, Rational>> entries,
                                           Arithmetic mode) {
  JointDistribution d;
  d.grid_ = std::move(grid);
  d.form_ = DistributionForm::kTable;
  d.arithmetic_ = mode;
  std::vector<char> seen(d.grid_.num_profiles(), 0);
  std::vector<Rational> weights;
  std::vector<size_t> flats;
  for (const auto& [profile, prob] : entries) {
    size_t flat = d.grid_.Flatten(profile);
    if (seen[flat]) throw DomainError("distribution table lists a profile twice");
    seen[flat] = 1;
    flats.push_back(flat);
    weights.push_back(prob);
  }
  weights = Normalize(std::move(weights), mode, "joint distribution");
  d.pmf_.assign(d.grid_.num_profiles(), Rational(0));
  for (size_t e = 0; e < flats.size(); ++e) d.pmf_[flats[e]] = weights[e];
  d.BuildSupport();
  return d;
}

JointDistribution JointDistribution::Product(SignalGrid grid,
                                             std::vector<std::vector<Rational>> marginals,
                                             Arithmetic mode) {
  JointDistribution d;
  d.grid_ = std::move(grid);
  d.form_ = DistributionForm::kProduct;
  d.arithmetic_ = mode;
  if (marginals.size() != static_cast<size_t>(d.grid_.num_agents())) {
    throw DomainError("product distribution needs one marginal per agent");
  }
  for (int i = 0; i < d.grid_.num_agents(); ++i) {
    auto& m = marginals[static_cast<size_t>(i)];
    if (m.size() != static_cast<size_t>(d.grid_.size(i))) {
      throw DomainError("marginal " + std::to_string(i) + " must have one entry per grid point");
    }
    m = Normalize(std::move(m), mode, "marginal");
  }
  d.marginals_ = std::move(marginals);
  d.pmf_.assign(d.grid_.num_profiles(), Rational(0));
  for (size_t flat = 0; flat < d.grid_.num_profiles(); ++flat) {
    Rational p = 1;
    for (int i = 0; i < d.grid_.num_agents() && sgn(p) != 0; ++i) {
      p *= d.marginals_[static_cast<size_t>(i)][static_cast<size_t>(d.grid_.Coordinate(flat, i))];
    }
    d.pmf_[flat] = p;
  }
  d.BuildSupport();
  return d;
}

void JointDistribution::BuildSupport() {
  double running = 0;
  for (size_t flat = 0; flat < pmf_.size(); ++flat) {
    if (sgn(pmf_[flat]) == 0) continue;
    support_.emplace_back(grid_.Unflatten(flat), pmf_[flat]);
    support_flat_.push_back(flat);
    running += ToDouble(pmf_[flat]);
    cumulative_.push_back(running);
  }
}

Rational JointDistribution::SliceProbability(int agent, size_t others_flat) const {
  Rational total = 0;
  for (const auto& w : SliceWeights(agent, others_flat)) total += w;
  return total;
}

std::vector<Rational> JointDistribution::SliceWeights(int agent, size_t others_flat) const {
  std::vector<Rational> weights;
  weights.reserve(static_cast<size_t>(grid_.size(agent)));
  for (int k = 0; k < grid_.size(agent); ++k) weights.push_back(pmf_[grid_.Replace(others_flat, agent, k)]);
  return weights;
}

ScalarDistribution JointDistribution::ConditionalSignal(int agent, const Profile& others) const {
  Profile probe = others;
  if (agent < 0 || agent >= num_agents()) throw DomainError("agent out of range");
  if (probe.size() != static_cast<size_t>(num_agents())) throw DomainError("profile has the wrong number of agents");
  probe[static_cast<size_t>(agent)] = 0;
  size_t flat = grid_.Flatten(probe);
  auto weights = SliceWeights(agent, flat);
  Rational total = 0;
  for (const auto& w : weights) total += w;
  if (sgn(total) == 0) {
    throw ConditioningError("conditioning event for agent " + std::to_string(agent) +
                            " has probability zero");
  }
  std::vector<Atom> atoms;
  for (int k = 0; k < grid_.size(agent); ++k) {
    if (sgn(weights[static_cast<size_t>(k)]) > 0) {
      atoms.push_back({grid_.value(agent, k), weights[static_cast<size_t>(k)] / total});
    }
  }
  return ScalarDistribution(std::move(atoms));
}

ScalarDistribution JointDistribution::Marginal(int agent) const {
  std::vector<Rational> weights(static_cast<size_t>(grid_.size(agent)), Rational(0));
  for (size_t s = 0; s < support_.size(); ++s) {
    weights[static_cast<size_t>(support_[s].first[static_cast<size_t>(agent)])] += support_[s].second;
  }
  std::vector<Atom> atoms;
  for (int k = 0; k < grid_.size(agent); ++k) {
    atoms.push_back({grid_.value(agent, k), weights[static_cast<size_t>(k)]});
  }
  return ScalarDistribution(std::move(atoms));
}

bool JointDistribution::IsIndependent() const {
  if (form_ == DistributionForm::kProduct) return true;
  std::vector<std::vector<Rational>> marginal(static_cast<size_t>(num_agents()));
  for (int i = 0; i < num_agents(); ++i) {
    marginal[static_cast<size_t>(i)].assign(static_cast<size_t>(grid_.size(i)), Rational(0));
  }
  for (const auto& [profile, p] : support_) {
    for (int i = 0; i < num_agents(); ++i) marginal[static_cast<size_t>(i)][static_cast<size_t>(profile[static_cast<size_t>(i)])] += p;
  }
  for (size_t flat = 0; flat < pmf_.size(); ++flat) {
    Rational product = 1;
    for (int i = 0; i < num_agents(); ++i) {
      product *= marginal[static_cast<size_t>(i)][static_cast<size_t>(grid_.Coordinate(flat, i))];
    }
    if (product != pmf_[flat]) return false;
  }
  return true;
}

Profile JointDistribution::Sample(std::mt19937_64& rng) const {
  double u = UniformUnit(rng) * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  size_t index = std::min(static_cast<size_t>(it - cumulative_.begin()), support_.size() - 1);
  return support_[index].first;
}

}  // namespace ivlab
