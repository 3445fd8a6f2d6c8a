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

// Command-line driver: run, audit, oracle, compare, gen.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ivlab/audit.h"
#include "ivlab/errors.h"
#include "ivlab/experiment.h"
#include "ivlab/generators.h"
#include "ivlab/instance_io.h"
#include "ivlab/mechanism.h"
#include "ivlab/oracle.h"
#include "ivlab/revenue.h"

namespace fs = std::filesystem;
using namespace ivlab;

namespace {

struct CommonOptions {
  std::vector<std::string> instances;
  std::vector<std::string> mechanisms;
  std::string mode = "exact";
  size_t trials = 10000;
  std::uint64_t seed = 1;
  std::string arithmetic = "rational";
  std::string out;
  double tolerance = 1e-9;
  std::string reserve_source = "none";
  std::string reserves;
  std::string conditioning = "winner";
};

struct GenOptions {
  std::string generator;
  int count = 1;
  int agents = 3;
  int grid_size = 3;
  std::string feasibility = "uniform1";
  std::string beta = "0";
  std::uint64_t seed = 1;
};

std::string FixtureDir() {
  const char* env = std::getenv("IVLAB_FIXTURES");
  return env != nullptr && *env != '\0' ? env : "fixtures";
}

// A path, or a fixture name looked up in the fixture directory.
std::string ResolveInstance(const std::string& ref) {
  if (fs::exists(ref)) return ref;
  for (const std::string& candidate : {FixtureDir() + "/" + ref, FixtureDir() + "/" + ref + ".json"}) {
    if (fs::exists(candidate)) return candidate;
  }
  throw SchemaError("instance '" + ref + "' not found (fixture directory: " + FixtureDir() + ")");
}

std::vector<Rational> ParseList(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(ParseRational(item));
  }
  return out;
}

Arithmetic ParseArithmetic(const std::string& name) {
  if (name == "rational") return Arithmetic::kRational;
  if (name == "double") return Arithmetic::kDouble;
  throw DomainError("unknown arithmetic '" + name + "'");
}

std::vector<Instance> LoadAll(const CommonOptions& opts, std::vector<std::string>& sources) {
  std::vector<Instance> out;
  for (const auto& ref : opts.instances) {
    std::string path = ResolveInstance(ref);
    sources.push_back(path);
    out.push_back(LoadInstance(path));
  }
  return out;
}

std::vector<MechanismConfig> Mechanisms(const CommonOptions& opts, const std::vector<std::string>& defaults) {
  std::vector<MechanismConfig> out;
  for (const auto& name : opts.mechanisms.empty() ? defaults : opts.mechanisms) {
    MechanismConfig config;
    config.id = ParseMechanismId(name);
    config.reserve_source = ParseReserveSource(opts.reserve_source);
    config.fixed_reserves = ParseList(opts.reserves);
    if (opts.conditioning == "others") {
      config.conditioning = ReserveConditioning::kOthersOnly;
    } else if (opts.conditioning != "winner") {
      throw DomainError("unknown conditioning '" + opts.conditioning + "' (winner|others)");
    }
    out.push_back(std::move(config));
  }
  return out;
}

ExperimentSpec SpecFrom(const CommonOptions& opts) {
  ExperimentSpec spec;
  spec.mechanisms = Mechanisms(opts, {"gvcg", "lookahead", "rand-single", "rand-matroid"});
  if (opts.mode == "mc") {
    spec.revenue.mode = RevenueMode::kMonteCarlo;
  } else if (opts.mode != "exact") {
    throw DomainError("unknown mode '" + opts.mode + "' (exact|mc)");
  }
  spec.revenue.trials = opts.trials;
  spec.revenue.seed = opts.seed;
  spec.arithmetic = ParseArithmetic(opts.arithmetic);
  spec.tolerance = opts.tolerance;
  return spec;
}

// Writes to `path`, or stdout when empty.
void Emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << text;
}

void AddCommon(CLI::App* app, CommonOptions& opts) {
  app->add_option("--instance", opts.instances, "Instance file or fixture name (repeatable)");
  app->add_option("--mechanism", opts.mechanisms,
                  "gvcg | gvcg-lazy | lookahead | rand-single | rand-matroid | vcg-eager (repeatable)");
  app->add_option("--mode", opts.mode, "exact | mc")->capture_default_str();
  app->add_option("--trials", opts.trials, "Monte Carlo trials")->capture_default_str();
  app->add_option("--seed", opts.seed, "Monte Carlo seed")->capture_default_str();
  app->add_option("--arithmetic", opts.arithmetic, "rational | double")->capture_default_str();
  app->add_option("--out", opts.out, "Output path (stdout when omitted)");
  app->add_option("--tolerance", opts.tolerance, "Tolerance in double mode")->capture_default_str();
  app->add_option("--reserve-source", opts.reserve_source,
                  "none | monopoly | conditional | fixed | single-sample")
      ->capture_default_str();
  app->add_option("--reserves", opts.reserves, "Comma-separated fixed reserves");
  app->add_option("--conditioning", opts.conditioning, "Randomized reserve conditioning: winner | others")
      ->capture_default_str();
}

void AddGeneratorOptions(CLI::App* app, GenOptions& gen) {
  app->add_option("--generator", gen.generator, "Instance generator");
  app->add_option("--count", gen.count, "Instances to generate")->capture_default_str();
  app->add_option("--agents", gen.agents, "Agents per instance")->capture_default_str();
  app->add_option("--grid-size", gen.grid_size, "Grid points per agent")->capture_default_str();
  app->add_option("--feasibility", gen.feasibility,
                  "uniform1 | uniform2 | partition | transversal | graphic | mixed")
      ->capture_default_str();
  app->add_option("--beta", gen.beta, "Weighted-sum coefficient (0 draws one)")->capture_default_str();
  app->add_option("--gen-seed", gen.seed, "Generator seed")->capture_default_str();
}

GeneratedInstances Generate(const GenOptions& gen) {
  GeneratorParams params;
  params.agents = gen.agents;
  params.grid_size = gen.grid_size;
  params.feasibility = gen.feasibility;
  params.beta = ParseRational(gen.beta);
  params.count = gen.count;
  GeneratedInstances batch = GenerateInstances(gen.generator, params, gen.seed);
  std::cerr << "generated " << batch.instances.size() << " instance(s) with generator '" << gen.generator
            << "', seed " << gen.seed << ", " << batch.rejections << " rejected sample(s)\n";
  return batch;
}

int RunCommand(const CommonOptions& opts, const GenOptions& gen) {
  ExperimentSpec spec = SpecFrom(opts);
  std::vector<Instance> instances = LoadAll(opts, spec.sources);
  if (!gen.generator.empty()) {
    for (auto& instance : Generate(gen).instances) instances.push_back(std::move(instance));
    spec.generator_seed = gen.seed;
    spec.sources.push_back("generator:" + gen.generator);
  }
  if (instances.empty()) throw SchemaError("run: give --instance or --generator");
  RatioReport report = RunExperiment(instances, spec);
  std::ostringstream csv;
  report.WriteCsv(csv);
  Emit(opts.out, csv.str());
  std::string meta_path = opts.out.empty() ? "" : opts.out + ".meta.json";
  if (!meta_path.empty()) Emit(meta_path, report.Metadata(spec).dump(2) + "\n");
  if (!report.audits_passed()) std::cerr << "audit failure\n";
  if (!report.guarantees_held()) std::cerr << "ratio guarantee violated\n";
  return report.ExitCode();
}

int AuditCommand(const CommonOptions& opts, bool illegal_hook, size_t show) {
  std::vector<std::string> sources;
  std::vector<Instance> instances = LoadAll(opts, sources);
  std::vector<MechanismConfig> configs = Mechanisms(
      opts, {"gvcg", "gvcg-lazy", "lookahead", "rand-single", "rand-matroid", "vcg-eager"});
  if (illegal_hook) {
    MechanismConfig hook;
    hook.id = MechanismId::kGvcgLazy;
    hook.reserve_rule = OwnSignalReserveForTesting();
    configs.push_back(hook);
  }
  AuditOptions options;
  options.arithmetic = ParseArithmetic(opts.arithmetic);
  options.tolerance = opts.tolerance;
  std::ostringstream text;
  text << "instance,mechanism,status,checks,realizations,violations\n";
  bool clean = true;
  for (const auto& instance : instances) {
    for (const auto& config : configs) {
      text << instance.name() << "," << config.Label() << ",";
      try {
        AuditReport report = IcIrAudit(instance, config, options);
        text << (report.passed() ? "pass" : "fail") << "," << report.checks << "," << report.realizations << ","
             << report.violation_count << "\n";
        // The illegal hook is expected to fail.
        if (!report.passed() && !config.reserve_rule) clean = false;
        for (size_t k = 0; k < report.violations.size() && k < show; ++k) {
          std::cerr << instance.name() << " " << config.Label() << ": " << report.violations[k].Describe(instance)
                    << "\n";
        }
      } catch (const WrongVariantError&) {
        text << "not-applicable,0,0,0\n";
      } catch (const AssumptionError&) {
        text << "not-applicable,0,0,0\n";
      }
    }
  }
  Emit(opts.out, text.str());
  return clean ? 0 : 1;
}

int OracleCommand(const CommonOptions& opts) {
  std::vector<std::string> sources;
  std::vector<Instance> instances = LoadAll(opts, sources);
  if (instances.size() != 1) throw SchemaError("oracle: give exactly one --instance");
  const Instance& instance = instances.front();
  OracleOptions options;
  options.arithmetic = ParseArithmetic(opts.arithmetic);
  OracleResult result = OptRevenue(instance, options);
  AuditOptions audit_options;
  audit_options.arithmetic = options.arithmetic;
  audit_options.tolerance = opts.tolerance;
  AuditReport audit = AuditWitness(instance, result, audit_options);

  const int n = instance.num_agents();
  const SignalGrid& grid = instance.grid();
  std::ostringstream csv;
  csv << "profile,probability";
  for (int i = 0; i < n; ++i) csv << ",alloc_" << i;
  for (int i = 0; i < n; ++i) csv << ",payment_" << i;
  csv << "\n";
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    if (!result.witness.defined[flat]) continue;
    std::string profile;
    for (int i = 0; i < n; ++i) profile += (i ? " " : "") + ToString(grid.value(i, grid.Coordinate(flat, i)));
    csv << profile << "," << ToString(instance.dist().Probability(flat));
    for (int i = 0; i < n; ++i) csv << "," << ToString(result.witness.alloc[flat * static_cast<size_t>(n) + static_cast<size_t>(i)]);
    for (int i = 0; i < n; ++i) csv << "," << ToString(result.witness.payment[flat * static_cast<size_t>(n) + static_cast<size_t>(i)]);
    csv << "\n";
  }

  nlohmann::json stats;
  stats["instance"] = instance.name();
  stats["optimum"] = ToString(result.revenue);
  stats["optimum_float"] = ToDouble(result.revenue);
  stats["status"] = StatusName(result.solution.status);
  stats["method"] = result.solution.method;
  stats["exact"] = result.solution.exact;
  stats["pivots"] = result.solution.pivots;
  stats["variables"] = result.lp.lp.num_vars();
  stats["profiles"] = result.lp.profiles.size();
  stats["feasible_sets"] = result.lp.sets.size();
  stats["constraints"] = {{"simplex", result.lp.simplex_rows},
                          {"ic", result.lp.ic_rows},
                          {"ir", result.lp.ir_rows},
                          {"total", result.lp.lp.constraints.size()}};
  stats["witness_audit"] = audit.passed() ? "pass" : "fail";

  if (opts.out.empty()) {
    std::cout << stats.dump(2) << "\n" << csv.str();
  } else {
    Emit(opts.out, csv.str());
    Emit(opts.out + ".meta.json", stats.dump(2) + "\n");
    std::cout << "optimum " << ToString(result.revenue) << " (" << ToDouble(result.revenue) << ")\n";
  }
  return audit.passed() ? 0 : 1;
}

int CompareCommand(const CommonOptions& opts, const std::string& profile_text) {
  std::vector<std::string> sources;
  std::vector<Instance> instances = LoadAll(opts, sources);
  if (instances.size() != 1) throw SchemaError("compare: give exactly one --instance");
  const Instance& instance = instances.front();
  const int n = instance.num_agents();
  std::vector<Rational> reserves = ParseList(opts.reserves);
  if (reserves.empty()) reserves.assign(static_cast<size_t>(n), Rational(0));
  if (static_cast<int>(reserves.size()) != n) throw SchemaError("compare: --reserves needs one value per agent");

  std::vector<size_t> profiles;
  if (!profile_text.empty()) {
    profiles.push_back(instance.grid().Flatten(instance.grid().ProfileOf(ParseList(profile_text))));
  } else {
    profiles = instance.dist().support_flat();
  }

  Auctioneer auctioneer(instance);
  std::ostringstream csv;
  csv << "profile,agent,value,reserve,in_u,lazy_threshold,eager_threshold,reversal\n";
  size_t reversals = 0;
  for (size_t flat : profiles) {
    ElementSet u;
    for (int i = 0; i < n; ++i) {
      if (instance.Value(i, flat) >= reserves[static_cast<size_t>(i)]) u.Insert(i);
    }
    std::string label;
    for (int i = 0; i < n; ++i) {
      label += (i ? " " : "") + ToString(instance.grid().value(i, instance.grid().Coordinate(flat, i)));
    }
    for (int i = 0; i < n; ++i) {
      bool in_u = u.Contains(i);
      int lazy_index = auctioneer.ThresholdIndex(i, flat, instance.agents());
      int eager_index = in_u ? auctioneer.ThresholdIndex(i, flat, u) : kNeverWins;
      auto show = [&](int index, const ElementSet& active) -> std::string {
        return index == kNeverWins ? "never" : ToString(auctioneer.ThresholdValue(i, flat, active));
      };
      bool reversal = in_u && lazy_index != kNeverWins &&
                      (eager_index == kNeverWins ||
                       auctioneer.ThresholdValue(i, flat, u) > auctioneer.ThresholdValue(i, flat, instance.agents()));
      reversals += reversal ? 1 : 0;
      csv << label << "," << i << "," << ToString(instance.Value(i, flat)) << "," << ToString(reserves[static_cast<size_t>(i)])
          << "," << (in_u ? 1 : 0) << "," << show(lazy_index, instance.agents()) << ","
          << (in_u ? show(eager_index, u) : "removed") << "," << (reversal ? "yes" : "no") << "\n";
    }
  }
  Emit(opts.out, csv.str());
  std::cerr << reversals << " threshold reversal(s) where the eager threshold exceeds the lazy one\n";
  return 0;
}

int GenCommand(const GenOptions& gen, const std::string& out_dir) {
  if (gen.generator.empty()) throw SchemaError("gen: --generator is required");
  GeneratedInstances batch = Generate(gen);
  if (out_dir.empty()) {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& instance : batch.instances) all.push_back(InstanceToJson(instance));
    std::cout << all.dump(2) << "\n";
    return 0;
  }
  fs::create_directories(out_dir);
  for (const auto& instance : batch.instances) SaveInstance(instance, out_dir + "/" + instance.name() + ".json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interdependent-value auction laboratory"};
  app.require_subcommand(1);

  CommonOptions opts;
  GenOptions gen;
  bool illegal_hook = false;
  size_t show = 5;
  std::string profile;
  std::string gen_out;

  CLI::App* run = app.add_subcommand("run", "Revenues, oracle, ratios and audits as CSV");
  AddCommon(run, opts);
  AddGeneratorOptions(run, gen);

  CLI::App* audit = app.add_subcommand("audit", "Exhaustive ex post IC/IR audit");
  AddCommon(audit, opts);
  audit->add_flag("--illegal-hook", illegal_hook, "Also audit a reserve that reads the agent's own signal");
  audit->add_option("--show", show, "Violations printed per cell")->capture_default_str();

  CLI::App* oracle = app.add_subcommand("oracle", "Optimal revenue, witness mechanism and LP statistics");
  AddCommon(oracle, opts);

  CLI::App* compare = app.add_subcommand("compare", "Lazy versus eager thresholds");
  AddCommon(compare, opts);
  compare->add_option("--profile", profile, "Comma-separated signal values (all support profiles if omitted)");

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate instances");
  AddGeneratorOptions(gen_cmd, gen);
  gen_cmd->add_option("--out", gen_out, "Directory for instance files (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return RunCommand(opts, gen);
    if (audit->parsed()) return AuditCommand(opts, illegal_hook, show);
    if (oracle->parsed()) return OracleCommand(opts);
    if (compare->parsed()) return CompareCommand(opts, profile);
    if (gen_cmd->parsed()) return GenCommand(gen, gen_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
