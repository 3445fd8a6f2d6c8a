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

#ifndef IVLAB_EXPERIMENT_H_
#define IVLAB_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ivlab/audit.h"
#include "ivlab/instance.h"
#include "ivlab/mechanism.h"
#include "ivlab/rational.h"
#include "ivlab/revenue.h"
#include "json.hpp"

namespace ivlab {

struct ExperimentSpec {
  std::vector<MechanismConfig> mechanisms;
  RevenueOptions revenue;
  Arithmetic arithmetic = Arithmetic::kRational;
  double tolerance = 1e-9;
  bool audit = true;
  bool oracle = true;
  bool upper_bound = true;
  // Provenance copied into the metadata sidecar.
  std::vector<std::string> sources;
  std::optional<std::uint64_t> generator_seed;
};

// Worst-case ratio a mechanism is guaranteed on `instance`, if its hypotheses
// hold there: lookahead 1/2 (private values, matroid), rand-single 2/9
// (single item, single-crossing, diminishing cross effects), rand-matroid 1/18 (matroid,
// single-crossing, diminishing cross effects).
std::optional<Rational> RatioGuarantee(const Instance& instance, MechanismId id);

struct RatioRow {
  std::string instance;
  std::string mechanism;
  // ok | not-applicable | error
  std::string status = "ok";
  std::string detail;
  RevenueResult revenue;
  std::optional<Rational> oracle;
  std::optional<Rational> upper_bound;
  std::optional<Rational> ratio;       // exact mode only
  std::optional<double> ratio_float;
  std::optional<Rational> guarantee;
  bool guarantee_held = true;
  // pass | fail | skipped
  std::string audit = "skipped";
  size_t violations = 0;
  double wall_seconds = 0;
};

struct RatioReport {
  std::vector<RatioRow> rows;
  double wall_seconds = 0;

  bool audits_passed() const;
  bool guarantees_held() const;
  bool has_errors() const;
  // 0 when clean, 1 on an audit failure or a violated guarantee, 2 on errors.
  int ExitCode() const;

  static const std::vector<std::string>& Columns();
  void WriteCsv(std::ostream& out) const;
  nlohmann::json Metadata(const ExperimentSpec& spec) const;
};

RatioReport RunExperiment(const std::vector<Instance>& instances, const ExperimentSpec& spec);

}  // namespace ivlab

#endif  // IVLAB_EXPERIMENT_H_
