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

#include "ivlab/audit.h"

#include <sstream>

namespace ivlab {

std::string AuditViolation::Describe(const Instance& instance) const {
  std::ostringstream os;
  Profile s = instance.grid().Unflatten(profile);
  os << "[" << realization << "] agent " << agent << " at (";
  std::vector<Rational> values = instance.grid().Values(s);
  for (size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << ToString(values[i]);
  os << ")";
  if (deviation == kIrCheck) {
    os << ": IR fails by " << ToString(gap);
  } else {
    os << ": reporting " << ToString(instance.grid().value(agent, deviation)) << " gains " << ToString(gap);
  }
  return os.str();
}

OutcomeTable TabulateOutcomes(Auctioneer& auctioneer, const MechanismConfig& config,
                              const Realization& realization) {
  const Instance& instance = auctioneer.instance();
  const size_t n = static_cast<size_t>(instance.num_agents());
  const size_t g = instance.grid().num_profiles();
  OutcomeTable t;
  t.alloc.resize(g * n);
  t.payment.resize(g * n);
  t.defined.assign(g, 1);
  for (size_t flat = 0; flat < g; ++flat) {
    AuctionOutcome out = auctioneer.Run(config, flat, realization);
    for (size_t i = 0; i < n; ++i) {
      t.alloc[flat * n + i] = out.agents[i].alloc;
      t.payment[flat * n + i] = out.agents[i].payment;
    }
  }
  return t;
}

void AuditTable(const Instance& instance, const OutcomeTable& table, const std::string& label,
                bool support_slices_only, const AuditOptions& options, AuditReport& report) {
  const SignalGrid& grid = instance.grid();
  const int n = instance.num_agents();
  const size_t un = static_cast<size_t>(n);
  const Rational tolerance =
      options.arithmetic == Arithmetic::kDouble ? RationalFromDouble(options.tolerance) : Rational(0);
  auto record = [&](size_t flat, int agent, int deviation, const Rational& gap) {
    ++report.violation_count;
    if (report.violations.size() < options.max_recorded) {
      report.violations.push_back({label, flat, agent, deviation, gap});
    }
  };
  auto utility = [&](int agent, size_t reported, const Rational& value) -> Rational {
    size_t idx = reported * un + static_cast<size_t>(agent);
    return table.alloc[idx] * value - table.payment[idx];
  };
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    if (!table.defined[flat]) continue;
    for (int i = 0; i < n; ++i) {
      ++report.checks;
      Rational truthful = utility(i, flat, instance.Value(i, flat));
      if (-truthful > tolerance) record(flat, i, kIrCheck, -truthful);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (size_t slice = 0; slice < grid.num_profiles(); ++slice) {
      if (grid.Coordinate(slice, i) != 0) continue;
      bool complete = true;
      bool touches_support = false;
      for (int k = 0; k < grid.size(i); ++k) {
        size_t f = grid.Replace(slice, i, k);
        if (!table.defined[f]) complete = false;
        if (sgn(instance.dist().Probability(f)) > 0) touches_support = true;
      }
      if (!complete || (support_slices_only && !touches_support)) continue;
      for (int k = 0; k < grid.size(i); ++k) {
        size_t truth = grid.Replace(slice, i, k);
        const Rational& value = instance.Value(i, truth);
        Rational truthful = utility(i, truth, value);
        for (int d = 0; d < grid.size(i); ++d) {
          if (d == k) continue;
          ++report.checks;
          Rational gap = utility(i, grid.Replace(slice, i, d), value) - truthful;
          if (gap > tolerance) record(truth, i, d, gap);
        }
      }
    }
  }
}

AuditReport IcIrAudit(const Instance& instance, const MechanismConfig& config, const AuditOptions& options) {
  AuditReport report;
  Auctioneer auctioneer(instance);
  for (const Realization& r : EnumerateRealizations(instance, config)) {
    ++report.realizations;
    OutcomeTable table = TabulateOutcomes(auctioneer, config, r);
    AuditTable(instance, table, config.Label() + " " + r.label, false, options, report);
  }
  return report;
}

}  // namespace ivlab
