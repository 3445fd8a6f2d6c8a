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

#ifndef IVLAB_INSTANCE_H_
#define IVLAB_INSTANCE_H_

#include <string>

#include "ivlab/distribution.h"
#include "ivlab/feasibility.h"
#include "ivlab/valuation.h"

namespace ivlab {

// Everything a mechanism needs: signal law, valuations, feasible sets and the
// global tie-break. Construction checks agent counts and grids agree and
// records the single-crossing and cross-effect verdicts.
class Instance {
 public:
  Instance(std::string name, JointDistribution dist, ValuationProfile vp, FeasibilitySystem feas,
           TieBreak tie_break = TieBreak());

  const std::string& name() const { return name_; }
  const JointDistribution& dist() const { return dist_; }
  const SignalGrid& grid() const { return dist_.grid(); }
  const ValuationProfile& vp() const { return vp_; }
  const FeasibilitySystem& feas() const { return feas_; }
  const TieBreak& tie_break() const { return tie_break_; }
  int num_agents() const { return dist_.num_agents(); }
  ElementSet agents() const { return ElementSet::Range(num_agents()); }

  const Rational& Value(int agent, size_t flat) const { return vp_.Value(agent, flat); }

  bool single_crossing() const { return single_crossing_; }
  bool diminishing_cross_effects() const { return cross_effects_; }
  // v_i depends on s_i alone, for every i.
  bool private_values() const { return private_values_; }
  // Exactly the empty set and the singletons are feasible.
  bool single_item() const { return single_item_; }

  // AssumptionError naming `what` unless values are private or single crossing holds.
  void RequireSingleCrossing(const std::string& what) const;

 private:
  std::string name_;
  JointDistribution dist_;
  ValuationProfile vp_;
  FeasibilitySystem feas_;
  TieBreak tie_break_;
  bool single_crossing_ = false;
  bool cross_effects_ = false;
  bool private_values_ = false;
  bool single_item_ = false;
};

}  // namespace ivlab

#endif  // IVLAB_INSTANCE_H_
