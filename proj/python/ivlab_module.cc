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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "ivlab/audit.h"
#include "ivlab/errors.h"
#include "ivlab/experiment.h"
#include "ivlab/generators.h"
#include "ivlab/instance_io.h"
#include "ivlab/mechanism.h"
#include "ivlab/oracle.h"
#include "ivlab/revenue.h"

namespace py = pybind11;

namespace ivlab {
namespace {

py::object ToFraction(const Rational& value) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(value.get_str());
}

Rational FromPython(const py::handle& value) { return ParseRational(py::str(value).cast<std::string>()); }

Profile ProfileFrom(const Instance& instance, const py::sequence& signals) {
  std::vector<Rational> s;
  for (const auto& x : signals) s.push_back(FromPython(x));
  return instance.grid().ProfileOf(s);
}

MechanismConfig ConfigFrom(const std::string& mechanism, const std::string& reserve_source) {
  MechanismConfig config;
  config.id = ParseMechanismId(mechanism);
  config.reserve_source = ParseReserveSource(reserve_source);
  return config;
}

py::dict OutcomeDict(const AuctionOutcome& out) {
  py::list agents;
  for (const AgentOutcome& a : out.agents) {
    py::dict d;
    d["alloc"] = ToFraction(a.alloc);
    d["payment"] = ToFraction(a.payment);
    d["threshold_index"] = a.threshold_index;
    d["threshold_value"] = ToFraction(a.threshold_value);
    d["reserve"] = ToFraction(a.reserve);
    agents.append(d);
  }
  py::dict d;
  d["agents"] = agents;
  d["winners"] = out.tentative.ToVector();
  d["served"] = out.served.ToVector();
  d["revenue"] = ToFraction(out.Revenue());
  return d;
}

}  // namespace
}  // namespace ivlab

PYBIND11_MODULE(_core, m) {
  using namespace ivlab;
  m.doc() = "Revenue mechanisms for interdependent-value auctions.";

  static py::exception<Error> base(m, "IvlabError");
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<NormalizationError>(m, "NormalizationError", base.ptr());
  py::register_exception<WrongVariantError>(m, "WrongVariantError", base.ptr());
  py::register_exception<AssumptionError>(m, "AssumptionError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<UnsupportedOperation>(m, "UnsupportedOperation", base.ptr());
  py::register_exception<AuditError>(m, "AuditError", base.ptr());

  py::class_<Instance>(m, "Instance")
      .def_static("load", &LoadInstance, py::arg("path"))
      .def_static(
          "from_json",
          [](const std::string& text, const std::string& name) { return ParseInstance(nlohmann::json::parse(text), name); },
          py::arg("text"), py::arg("name") = "instance")
      .def("to_json", [](const Instance& x) { return InstanceToJson(x).dump(2); })
      .def("save", [](const Instance& x, const std::string& path) { SaveInstance(x, path); }, py::arg("path"))
      .def_property_readonly("name", &Instance::name)
      .def_property_readonly("num_agents", &Instance::num_agents)
      .def_property_readonly("private_values", &Instance::private_values)
      .def_property_readonly("single_item", &Instance::single_item)
      .def_property_readonly("single_crossing", &Instance::single_crossing)
      .def_property_readonly("diminishing_cross_effects", &Instance::diminishing_cross_effects)
      .def_property_readonly("is_matroid", [](const Instance& x) { return x.feas().is_matroid(); })
      .def("value", [](const Instance& x, int agent, const py::sequence& signals) {
        return ToFraction(x.Value(agent, x.grid().Flatten(ProfileFrom(x, signals))));
      })
      .def("__repr__", [](const Instance& x) {
        return "<Instance " + x.name() + " agents=" + std::to_string(x.num_agents()) + ">";
      });

  m.def("tiny1", &Tiny1);
  m.def("gap_k", [](int k) { return GapK(k); }, py::arg("k"));
  m.def("nonmat1", &NonMat1);
  m.def("generator_names", &GeneratorNames);
  m.def(
      "generate",
      [](const std::string& generator, std::uint64_t seed, int agents, int grid_size, const std::string& feasibility,
         int count) {
        GeneratorParams params;
        params.agents = agents;
        params.grid_size = grid_size;
        params.feasibility = feasibility;
        params.count = count;
        return GenerateInstances(generator, params, seed).instances;
      },
      py::arg("generator"), py::arg("seed"), py::arg("agents") = 3, py::arg("grid_size") = 3,
      py::arg("feasibility") = "uniform1", py::arg("count") = 1);

  m.def(
      "gvcg",
      [](const Instance& x, const py::sequence& signals) { return OutcomeDict(Gvcg(x, ProfileFrom(x, signals), x.agents())); },
      py::arg("instance"), py::arg("signals"));
  m.def(
      "lookahead", [](const Instance& x, const py::sequence& signals) { return OutcomeDict(Lookahead(x, ProfileFrom(x, signals))); },
      py::arg("instance"), py::arg("signals"));
  m.def(
      "gvcg_lazy",
      [](const Instance& x, const py::sequence& signals, const py::sequence& reserves) {
        std::vector<Rational> r;
        for (const auto& v : reserves) r.push_back(FromPython(v));
        return OutcomeDict(GvcgLazy(x, ProfileFrom(x, signals), r, x.agents()));
      },
      py::arg("instance"), py::arg("signals"), py::arg("reserves"));

  m.def(
      "expected_revenue",
      [](const Instance& x, const std::string& mechanism, const std::string& reserve_source, const std::string& mode,
         size_t trials, std::uint64_t seed) -> py::object {
        RevenueOptions options;
        options.mode = mode == "mc" ? RevenueMode::kMonteCarlo : RevenueMode::kExact;
        options.trials = trials;
        options.seed = seed;
        RevenueResult r = ExpectedRevenue(x, ConfigFrom(mechanism, reserve_source), options);
        if (options.mode == RevenueMode::kExact) return ToFraction(r.exact);
        return py::make_tuple(r.mean, r.std_error);
      },
      py::arg("instance"), py::arg("mechanism"), py::arg("reserve_source") = "none", py::arg("mode") = "exact",
      py::arg("trials") = 10000, py::arg("seed") = 1,
      "Exact expectation as a Fraction, or (mean, std_error) with mode='mc'.");

  m.def(
      "opt_revenue",
      [](const Instance& x, const std::string& arithmetic) {
        OracleOptions options;
        options.arithmetic = arithmetic == "double" ? Arithmetic::kDouble : Arithmetic::kRational;
        return ToFraction(OptRevenue(x, options).revenue);
      },
      py::arg("instance"), py::arg("arithmetic") = "rational");
  m.def("opt_upper_bound", [](const Instance& x) { return ToFraction(OptUpperBound(x)); }, py::arg("instance"));

  m.def(
      "audit",
      [](const Instance& x, const std::string& mechanism, const std::string& reserve_source) {
        AuditReport report = IcIrAudit(x, ConfigFrom(mechanism, reserve_source));
        py::dict d;
        d["passed"] = report.passed();
        d["violations"] = report.violation_count;
        d["checks"] = report.checks;
        d["realizations"] = report.realizations;
        return d;
      },
      py::arg("instance"), py::arg("mechanism"), py::arg("reserve_source") = "none");

  m.def(
      "run_experiment",
      [](const std::vector<Instance>& instances, const std::vector<std::string>& mechanisms) {
        ExperimentSpec spec;
        for (const auto& id : mechanisms) spec.mechanisms.push_back(ConfigFrom(id, "none"));
        RatioReport report = RunExperiment(instances, spec);
        std::ostringstream csv;
        report.WriteCsv(csv);
        return py::make_tuple(csv.str(), report.ExitCode());
      },
      py::arg("instances"), py::arg("mechanisms"), "Returns (csv, exit_code).");
}
