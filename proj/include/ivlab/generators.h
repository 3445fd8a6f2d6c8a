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

#ifndef IVLAB_GENERATORS_H_
#define IVLAB_GENERATORS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ivlab/instance.h"
#include "ivlab/rational.h"

namespace ivlab {

// Two agents, independent uniform{1,2} private values, one item.
Instance Tiny1();

// Agent 0 draws s_0 from the equal-revenue grid {1, 2, ..., 2^k}; agent 1 has
// one signal. v_0 = s_0 and v_1 = s_0 - eps. One item.
Instance GapK(int k, const Rational& eps = Rational(1, 10));

// Non-matroid family {{}, {0}, {1}, {0,1}, {2}} with private values. Agent 0's
// grid holds 0.7, 1 and 1.2 so both of its thresholds are grid points.
Instance NonMat1();

// One agent, private value uniform on {1, 2, 3}.
Instance SingleAgentUniform3();

struct GeneratorParams {
  int agents = 3;
  int grid_size = 3;
  // uniform1, uniform2, partition, transversal, graphic, or mixed (drawn per
  // instance among the first five).
  std::string feasibility = "uniform1";
  // Weighted-sum coefficient; drawn per instance when zero.
  Rational beta = 0;
  int count = 1;
};

struct GeneratedInstances {
  std::vector<Instance> instances;
  // Samples re-drawn because they failed the family's assumption checks.
  size_t rejections = 0;
};

// Generators: correlated-private, weighted-sum, additive-interdependent,
// concave-additive, regular-marginals. Deterministic per seed.
GeneratedInstances GenerateInstances(const std::string& generator, const GeneratorParams& params,
                                     std::uint64_t seed);

std::vector<std::string> GeneratorNames();

}  // namespace ivlab

#endif  // IVLAB_GENERATORS_H_
