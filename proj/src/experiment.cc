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

#include "ivlab/experiment.h"

#include <chrono>
#include <cstdio>
#include <utility>

#include "ivlab/errors.h"
#include "ivlab/oracle.h"

namespace ivlab {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Short(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

std::string Csv(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string Opt(const std::optional<Rational>& value) { return value ? ToString(*value) : ""; }

bool IsMatroid(const Instance& instance) { return instance.feas().is_matroid(); }

bool Interdependent(const Instance& instance) {
  return instance.single_crossing() && instance.diminishing_cross_effects();
}

}  // namespace

std::optional<Rational> RatioGuarantee(const Instance& instance, MechanismId id) {
  switch (id) {
    case MechanismId::kLookahead:
      if (instance.private_values() && IsMatroid(instance)) return Rational(1, 2);
      break;
    case MechanismId::kRandSingle:
      if (instance.single_item() && Interdependent(instance)) return Rational(2, 9);
      break;
    case MechanismId::kRandMatroid:
      if (IsMatroid(instance) && Interdependent(instance)) return Rational(1, 18);
      break;
    default:
      break;
  }
  return std::nullopt;
}

bool RatioReport::audits_passed() const {
  for (const auto& row : rows) {
    if (row.audit == "fail") return false;
  }
  return true;
}

bool RatioReport::guarantees_held() const {
  for (const auto& row : rows) {
    if (!row.guarantee_held) return false;
  }
  return true;
}

bool RatioReport::has_errors() const {
  for (const auto& row : rows) {
    if (row.status == "error") return true;
  }
  return false;
}

int RatioReport::ExitCode() const {
  if (has_errors()) return 2;
  return audits_passed() && guarantees_held() ? 0 : 1;
}

const std::vector<std::string>& RatioReport::Columns() {
  static const std::vector<std::string> kColumns = {
      "instance",  "mechanism",   "status",     "revenue",   "revenue_float",  "std_error",
      "samples",   "oracle",      "oracle_float", "upper_bound", "ratio",        "ratio_float",
      "guarantee", "guarantee_held", "audit",   "violations", "fallbacks",     "detail"};
  return kColumns;
}

void RatioReport::WriteCsv(std::ostream& out) const {
  const auto& columns = Columns();
  for (size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << "\n";
  for (const auto& row : rows) {
    bool ran = row.status == "ok";
    bool exact = row.revenue.mode == RevenueMode::kExact;
    std::vector<std::string> fields = {
        row.instance,
        row.mechanism,
        row.status,
        ran && exact ? ToString(row.revenue.exact) : "",
        ran ? Short(row.revenue.mean) : "",
        ran && !exact ? Short(row.revenue.std_error) : "",
        ran ? std::to_string(row.revenue.samples) : "",
        Opt(row.oracle),
        row.oracle ? Short(ToDouble(*row.oracle)) : "",
        Opt(row.upper_bound),
        Opt(row.ratio),
        row.ratio_float ? Short(*row.ratio_float) : "",
        Opt(row.guarantee),
        row.guarantee ? (row.guarantee_held ? "yes" : "no") : "",
        row.audit,
        std::to_string(row.violations),
        ran ? std::to_string(row.revenue.fallbacks) : "",
        row.detail};
    for (size_t c = 0; c < fields.size(); ++c) out << (c ? "," : "") << Csv(fields[c]);
    out << "\n";
  }
}

nlohmann::json RatioReport::Metadata(const ExperimentSpec& spec) const {
  nlohmann::json meta;
  meta["tool"] = "ivlab";
  meta["columns"] = Columns();
  meta["arithmetic"] = spec.arithmetic == Arithmetic::kRational ? "rational" : "double";
  meta["mode"] = spec.revenue.mode == RevenueMode::kExact ? "exact" : "mc";
  meta["trials"] = spec.revenue.trials;
  meta["seed"] = spec.revenue.seed;
  if (spec.generator_seed) meta["generator_seed"] = *spec.generator_seed;
  meta["tolerance"] = spec.tolerance;
  meta["audit_tolerance"] = spec.arithmetic == Arithmetic::kRational ? 0.0 : spec.tolerance;
  meta["sources"] = spec.sources;
  nlohmann::json mechanisms = nlohmann::json::array();
  for (const auto& m : spec.mechanisms) mechanisms.push_back(m.Label());
  meta["mechanisms"] = mechanisms;
  nlohmann::json timings = nlohmann::json::array();
  for (const auto& row : rows) {
    timings.push_back({{"instance", row.instance}, {"mechanism", row.mechanism}, {"wall_seconds", row.wall_seconds}});
  }
  meta["wall_seconds"] = wall_seconds;
  meta["timings"] = timings;
  meta["exit_code"] = ExitCode();
  return meta;
}

RatioReport RunExperiment(const std::vector<Instance>& instances, const ExperimentSpec& spec) {
  const auto start = Clock::now();
  RatioReport report;
  const bool exact = spec.revenue.mode == RevenueMode::kExact;
  const bool rational = spec.arithmetic == Arithmetic::kRational;

  for (const Instance& instance : instances) {
    std::optional<Rational> oracle;
    std::optional<Rational> bound;
    std::string instance_note;
    if (spec.oracle) {
      try {
        OracleOptions options;
        options.arithmetic = spec.arithmetic;
        oracle = OptRevenue(instance, options).revenue;
      } catch (const Error& e) {
        instance_note = std::string("oracle unavailable: ") + e.what();
      }
    }
    if (spec.upper_bound && IsMatroid(instance)) {
      try {
        bound = OptUpperBound(instance);
      } catch (const Error& e) {
        instance_note += (instance_note.empty() ? "" : "; ") + std::string("bound unavailable: ") + e.what();
      }
    }

    for (const MechanismConfig& config : spec.mechanisms) {
      const auto cell_start = Clock::now();
      RatioRow row;
      row.instance = instance.name();
      row.mechanism = config.Label();
      row.oracle = oracle;
      row.upper_bound = bound;
      row.detail = instance_note;
      try {
        row.revenue = ExpectedRevenue(instance, config, spec.revenue);
        if (spec.audit) {
          AuditOptions audit_options;
          audit_options.arithmetic = spec.arithmetic;
          audit_options.tolerance = spec.tolerance;
          AuditReport audit = IcIrAudit(instance, config, audit_options);
          row.audit = audit.passed() ? "pass" : "fail";
          row.violations = audit.violation_count;
          if (!audit.passed()) {
            row.detail = "first violation: " + audit.violations.front().Describe(instance);
          }
        }
        if (oracle) {
          if (*oracle > 0) {
            if (exact) row.ratio = Rational(row.revenue.exact / *oracle);
            row.ratio_float = row.revenue.mean / ToDouble(*oracle);
          }
          row.guarantee = RatioGuarantee(instance, config.id);
          if (row.guarantee && row.audit != "fail") {
            Rational target = *row.guarantee * *oracle;
            if (exact && rational) {
              row.guarantee_held = row.revenue.exact >= target;
            } else if (exact) {
              row.guarantee_held = ToDouble(row.revenue.exact) >= ToDouble(target) - spec.tolerance;
            } else {
              // Monte Carlo: allow three standard errors.
              row.guarantee_held =
                  row.revenue.mean + 3 * row.revenue.std_error >= ToDouble(target) - spec.tolerance;
            }
          }
        }
      } catch (const WrongVariantError& e) {
        row.status = "not-applicable";
        row.detail = e.what();
      } catch (const AssumptionError& e) {
        row.status = "not-applicable";
        row.detail = e.what();
      } catch (const Error& e) {
        row.status = "error";
        row.detail = instance.name() + ": " + e.what();
      }
      row.wall_seconds = Seconds(cell_start);
      report.rows.push_back(std::move(row));
    }
  }
  report.wall_seconds = Seconds(start);
  return report;
}

}  // namespace ivlab
