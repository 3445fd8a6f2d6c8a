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

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "ivlab/errors.h"
#include "ivlab/experiment.h"
#include "ivlab/generators.h"
#include "ivlab/instance_io.h"
#include "test_util.h"

namespace ivlab {
namespace {

using nlohmann::json;
using testing::Fixture;

json TinyDoc() {
  return json::parse(R"({
    "agents": 2,
    "grid": [["1", "2"], ["1", "2"]],
    "distribution": {"form": "product", "marginals": [["1/2", "1/2"], ["1/2", "1/2"]]},
    "valuation": {"family": "private"},
    "feasibility": {"kind": "uniform", "k": 1}
  })");
}

std::string ErrorText(const json& doc) {
  try {
    ParseInstance(doc, "doc");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

MechanismConfig Config(MechanismId id) {
  MechanismConfig c;
  c.id = id;
  return c;
}

TEST(Load, ParsesAndRoundTrips) {
  Instance tiny = ParseInstance(TinyDoc(), "doc");
  EXPECT_EQ(tiny.name(), "doc");
  EXPECT_EQ(tiny.num_agents(), 2);
  EXPECT_TRUE(tiny.private_values());
  EXPECT_TRUE(tiny.single_item());
  EXPECT_EQ(InstanceToJson(ParseInstance(InstanceToJson(tiny), "x")), InstanceToJson(tiny));
  for (const auto& name : testing::CorpusNames()) {
    Instance instance = Fixture(name);
    EXPECT_EQ(instance.name(), name);
    EXPECT_EQ(InstanceToJson(ParseInstance(InstanceToJson(instance), "x")), InstanceToJson(instance)) << name;
  }
}

TEST(Load, Errors) {
  json bad_sum = TinyDoc();
  bad_sum["distribution"]["marginals"][0] = {"1/2", "49/100"};
  EXPECT_THROW(ParseInstance(bad_sum, "doc"), NormalizationError);

  json missing = TinyDoc();
  missing.erase("feasibility");
  EXPECT_THROW(ParseInstance(missing, "doc"), SchemaError);
  EXPECT_NE(ErrorText(missing).find("feasibility"), std::string::npos);

  json wrong_type = TinyDoc();
  wrong_type["grid"][0][1] = json::array();
  EXPECT_THROW(ParseInstance(wrong_type, "doc"), SchemaError);
  EXPECT_NE(ErrorText(wrong_type).find("grid"), std::string::npos);

  json family = TinyDoc();
  family["valuation"]["family"] = "telepathic";
  EXPECT_NE(ErrorText(family).find("family"), std::string::npos);

  json unsorted = TinyDoc();
  unsorted["grid"][1] = {"2", "1"};
  EXPECT_THROW(ParseInstance(unsorted, "doc"), Error);

  EXPECT_THROW(LoadInstance("/nonexistent/instance.json"), Error);
}

TEST(Generators, DeterministicPerSeed) {
  GeneratorParams params;
  params.count = 5;
  for (const auto& name : GeneratorNames()) {
    auto a = GenerateInstances(name, params, 7);
    auto b = GenerateInstances(name, params, 7);
    ASSERT_EQ(a.instances.size(), 5u) << name;
    EXPECT_EQ(a.rejections, b.rejections);
    bool differs = false;
    auto c = GenerateInstances(name, params, 8);
    for (size_t k = 0; k < a.instances.size(); ++k) {
      EXPECT_EQ(InstanceToJson(a.instances[k]), InstanceToJson(b.instances[k])) << name;
      differs |= InstanceToJson(a.instances[k])["grid"] != InstanceToJson(c.instances[k])["grid"] ||
                 InstanceToJson(a.instances[k])["distribution"] != InstanceToJson(c.instances[k])["distribution"] ||
                 InstanceToJson(a.instances[k])["valuation"] != InstanceToJson(c.instances[k])["valuation"];
    }
    EXPECT_TRUE(differs) << name;
  }
  EXPECT_THROW(GenerateInstances("no-such-generator", params, 1), Error);
}

TEST(Generators, SatisfyTheirAssumptions) {
  GeneratorParams params;
  params.count = 20;
  for (const char* feas : {"uniform1", "uniform2", "partition", "transversal", "graphic"}) {
    params.feasibility = feas;
    for (const auto& name : GeneratorNames()) {
      for (const Instance& instance : GenerateInstances(name, params, 21).instances) {
        EXPECT_TRUE(instance.feas().is_matroid()) << instance.name();
        EXPECT_TRUE(instance.single_crossing()) << instance.name();
        EXPECT_TRUE(instance.diminishing_cross_effects()) << instance.name();
        if (name == "correlated-private" || name == "regular-marginals") {
          EXPECT_TRUE(instance.private_values());
        }
        if (name == "regular-marginals") {
          for (int i = 0; i < instance.num_agents(); ++i) {
            EXPECT_TRUE(AnalyzeRegularity(instance.dist().Marginal(i)).is_regular) << instance.name();
          }
        }
        if (std::string(feas) == "uniform1") {
          EXPECT_TRUE(instance.single_item());
        }
      }
    }
  }
}

ExperimentSpec TinySpec() {
  ExperimentSpec spec;
  spec.mechanisms = {Config(MechanismId::kGvcg), Config(MechanismId::kLookahead)};
  return spec;
}

TEST(Experiment, TinyRows) {
  RatioReport report = RunExperiment({Tiny1()}, TinySpec());
  ASSERT_EQ(report.rows.size(), 2u);
  for (const RatioRow& row : report.rows) {
    EXPECT_EQ(row.status, "ok");
    EXPECT_EQ(*row.oracle, Rational(3, 2));
    EXPECT_EQ(*row.upper_bound, Rational(11, 4));
    EXPECT_EQ(*row.ratio, 1);
    EXPECT_EQ(row.audit, "pass");
  }
  EXPECT_EQ(report.rows[0].mechanism, "gvcg");
  EXPECT_FALSE(report.rows[0].guarantee.has_value());
  EXPECT_EQ(*report.rows[1].guarantee, Rational(1, 2));
  EXPECT_EQ(report.ExitCode(), 0);
}

TEST(Experiment, NotApplicableAndErrors) {
  ExperimentSpec spec;
  spec.mechanisms = {Config(MechanismId::kRandSingle), Config(MechanismId::kRandMatroid), Config(MechanismId::kVcgEager)};
  spec.mechanisms.back().reserve_source = ReserveSource::kMonopoly;
  RatioReport report = RunExperiment({Fixture("nonmat1"), Fixture("ws_half")}, spec);
  ASSERT_EQ(report.rows.size(), 6u);
  EXPECT_EQ(report.rows[0].status, "not-applicable");  // two agents can win
  EXPECT_EQ(report.rows[1].status, "not-applicable");  // not a matroid
  EXPECT_EQ(report.rows[2].status, "ok");
  EXPECT_EQ(report.rows[3].status, "ok");
  EXPECT_EQ(report.rows[4].status, "ok");
  EXPECT_EQ(report.rows[5].status, "not-applicable");  // interdependent values
  EXPECT_FALSE(report.has_errors());
  EXPECT_EQ(report.ExitCode(), 0);

  ExperimentSpec tight = TinySpec();
  tight.revenue.atom_cap = 1;
  RatioReport failed = RunExperiment({Tiny1()}, tight);
  EXPECT_TRUE(failed.has_errors());
  EXPECT_EQ(failed.rows[0].status, "error");
  EXPECT_EQ(failed.ExitCode(), 2);
}

TEST(Experiment, AuditFailureSetsExitCode) {
  ExperimentSpec spec;
  MechanismConfig hook;
  hook.id = MechanismId::kGvcgLazy;
  hook.reserve_rule = OwnSignalReserveForTesting();
  spec.mechanisms = {hook};
  RatioReport report = RunExperiment({SingleAgentUniform3()}, spec);
  EXPECT_EQ(report.rows[0].audit, "fail");
  EXPECT_GT(report.rows[0].violations, 0u);
  EXPECT_EQ(report.ExitCode(), 1);
}

TEST(Experiment, CsvIsReproducible) {
  std::vector<Instance> instances = {Tiny1(), GapK(2), Fixture("partition3")};
  ExperimentSpec spec = TinySpec();
  spec.mechanisms.push_back(Config(MechanismId::kRandMatroid));
  std::ostringstream a;
  std::ostringstream b;
  RunExperiment(instances, spec).WriteCsv(a);
  RunExperiment(instances, spec).WriteCsv(b);
  EXPECT_EQ(a.str(), b.str());
  std::string header = a.str().substr(0, a.str().find('\n'));
  EXPECT_EQ(header.rfind("instance,mechanism", 0), 0u);
  EXPECT_EQ(header.find("wall"), std::string::npos);

  spec.revenue.mode = RevenueMode::kMonteCarlo;
  spec.revenue.trials = 2000;
  spec.revenue.seed = 5;
  std::ostringstream c;
  std::ostringstream d;
  RunExperiment(instances, spec).WriteCsv(c);
  RunExperiment(instances, spec).WriteCsv(d);
  EXPECT_EQ(c.str(), d.str());
}

TEST(Experiment, MonteCarloAgreesWithExact) {
  ExperimentSpec exact = TinySpec();
  exact.mechanisms.push_back(Config(MechanismId::kRandSingle));
  ExperimentSpec mc = exact;
  mc.revenue.mode = RevenueMode::kMonteCarlo;
  mc.revenue.trials = 20000;
  mc.revenue.seed = 11;
  std::vector<Instance> instances = {Tiny1(), GapK(4), Fixture("ws_half")};
  RatioReport a = RunExperiment(instances, exact);
  RatioReport b = RunExperiment(instances, mc);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (size_t k = 0; k < a.rows.size(); ++k) {
    if (a.rows[k].status != "ok") continue;
    EXPECT_NEAR(b.rows[k].revenue.mean, ToDouble(a.rows[k].revenue.exact), 3 * b.rows[k].revenue.std_error + 1e-12)
        << a.rows[k].instance << " " << a.rows[k].mechanism;
  }
  EXPECT_EQ(b.ExitCode(), 0);
}

TEST(Experiment, Metadata) {
  ExperimentSpec spec = TinySpec();
  spec.sources = {"tiny1"};
  spec.generator_seed = 42;
  json meta = RunExperiment({Tiny1()}, spec).Metadata(spec);
  EXPECT_EQ(meta["generator_seed"], 42);
  EXPECT_TRUE(meta.contains("tolerance"));
  EXPECT_TRUE(meta.contains("sources"));
}

}  // namespace
}  // namespace ivlab
