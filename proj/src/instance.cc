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

#include "ivlab/instance.h"

#include "ivlab/errors.h"

namespace ivlab {

namespace {

bool ComputePrivate(const ValuationProfile& vp) {
  const SignalGrid& grid = vp.grid();
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    for (int i = 0; i < grid.num_agents(); ++i) {
      for (int j = 0; j < grid.num_agents(); ++j) {
        if (j == i || grid.Coordinate(flat, j) == 0) continue;
        if (vp.Value(i, flat) != vp.Value(i, grid.Replace(flat, j, 0))) return false;
      }
    }
  }
  return true;
}

bool ComputeSingleItem(const FeasibilitySystem& feas) {
  for (int e : feas.ground_set().ToVector()) {
    if (!feas.IsIndependent(ElementSet{e})) return false;
  }
  std::vector<int> elements = feas.ground_set().ToVector();
  for (size_t a = 0; a < elements.size(); ++a) {
    for (size_t b = a + 1; b < elements.size(); ++b) {
      if (feas.IsIndependent(ElementSet{elements[a], elements[b]})) return false;
    }
  }
  return true;
}

}  // namespace

Instance::Instance(std::string name, JointDistribution dist, ValuationProfile vp,
                   FeasibilitySystem feas, TieBreak tie_break)
    : name_(std::move(name)),
      dist_(std::move(dist)),
      vp_(std::move(vp)),
      feas_(std::move(feas)),
      tie_break_(std::move(tie_break)) {
  const int n = dist_.num_agents();
  if (vp_.num_agents() != n) throw DomainError("valuation and distribution disagree on agent count");
  for (int i = 0; i < n; ++i) {
    if (vp_.grid().points(i) != dist_.grid().points(i)) {
      throw DomainError("valuation and distribution use different grids for agent " + std::to_string(i));
    }
  }
  if (feas_.universe_size() != n || feas_.ground_set() != ElementSet::Range(n)) {
    throw DomainError("feasibility ground set must be exactly the agents");
  }
  if (tie_break_.is_explicit() && static_cast<int>(tie_break_.order().size()) != n) {
    throw DomainError("tie-break order must list every agent once");
  }
  private_values_ = ComputePrivate(vp_);
  single_crossing_ = CheckSingleCrossing(vp_).empty();
  cross_effects_ = CheckDiminishingCrossEffects(vp_).empty();
  single_item_ = ComputeSingleItem(feas_);
}

void Instance::RequireSingleCrossing(const std::string& what) const {
  if (!private_values_ && !single_crossing_) {
    throw AssumptionError(what + " needs single-crossing valuations; instance '" + name_ +
                          "' fails the grid check");
  }
}

}  // namespace ivlab
