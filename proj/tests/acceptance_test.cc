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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ivlab/audit.h"
#include "ivlab/errors.h"
#include "ivlab/generators.h"
#include "ivlab/mechanism.h"
#include "ivlab/oracle.h"
#include "ivlab/revenue.h"
#include "test_util.h"

namespace ivlab {
namespace {

using testing::AllIndependent;
using testing::Fixture;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void Fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

MechanismConfig Config(MechanismId id, ReserveSource source = ReserveSource::kNone) {
  MechanismConfig c;
  c.id = id;
  c.reserve_source = source;
  return c;
}

std::vector<Instance> Generate(const std::vector<std::string>& generators, const std::vector<std::string>& feasibility,
                               const std::vector<int>& agents, const std::vector<int>& grid_sizes, int count,
                               std::uint64_t seed) {
  std::vector<Instance> out;
  for (const auto& g : generators) {
    for (const auto& f : feasibility) {
      for (int n : agents) {
        for (int m : grid_sizes) {
          GeneratorParams params;
          params.agents = n;
          params.grid_size = m;
          params.feasibility = f;
          params.count = count;
          for (auto& x : GenerateInstances(g, params, seed++).instances) out.push_back(std::move(x));
        }
      }
    }
  }
  return out;
}

std::vector<Instance> Corpus() {
  std::vector<Instance> out;
  for (const auto& name : testing::CorpusNames()) out.push_back(Fixture(name));
  return out;
}

const std::vector<std::string> kInterdependent = {"weighted-sum", "additive-interdependent", "concave-additive"};

// Revenue of `id` against the LP optimum on every instance, with a
// clean audit required.
void RatioSweep(const std::vector<Instance>& instances, MechanismId id, const Rational& floor, Verdict& v) {
  Rational worst = 1;
  size_t violations = 0;
  for (const Instance& instance : instances) {
    Rational opt = OptRevenue(instance).revenue;
    Rational rev = ExpectedRevenue(instance, Config(id)).exact;
    AuditReport audit = IcIrAudit(instance, Config(id));
    violations += audit.violation_count;
    if (!audit.passed()) v.Fail(instance.name() + " audit");
    if (opt == 0) continue;
    Rational ratio = rev / opt;
    if (ratio < worst) worst = ratio;
    if (ratio < floor) v.Fail(instance.name() + " ratio " + ratio.get_str());
  }
  v.detail << instances.size() << " instances, worst ratio " << worst.get_str() << " (" << ToDouble(worst)
           << "), bound " << floor.get_str() << ", violations " << violations;
}

void Criterion1(Verdict& v) {
  auto instances = Generate({"correlated-private"}, {"uniform1", "uniform2", "partition"}, {2, 3}, {2, 3}, 20, 1000);
  if (instances.size() < 200) v.Fail("too few instances");
  RatioSweep(instances, MechanismId::kLookahead, Rational(1, 2), v);
}

void Criterion2(Verdict& v) {
  auto instances = Generate(kInterdependent, {"uniform1"}, {2, 3}, {2, 3}, 9, 2000);
  if (instances.size() < 100) v.Fail("too few instances");
  RatioSweep(instances, MechanismId::kRandSingle, Rational(2, 9), v);
}

void Criterion3(Verdict& v) {
  auto instances = Generate(kInterdependent, {"uniform1", "uniform2", "partition"}, {2, 3}, {2, 3}, 5, 3000);
  if (instances.size() < 100) v.Fail("too few instances");
  RatioSweep(instances, MechanismId::kRandMatroid, Rational(1, 18), v);
}

void Criterion4(Verdict& v) {
  std::vector<Rational> lookahead;
  std::vector<Rational> single;
  for (int k = 1; k <= 8; ++k) {
    Instance gap = GapK(k);
    Rational opt = OptRevenue(gap).revenue;
    lookahead.push_back(ExpectedRevenue(gap, Config(MechanismId::kLookahead)).exact / opt);
    single.push_back(ExpectedRevenue(gap, Config(MechanismId::kRandSingle)).exact / opt);
  }
  for (size_t k = 1; k < lookahead.size(); ++k) {
    if (!(lookahead[k] < lookahead[k - 1])) v.Fail("lookahead ratio not decreasing at k=" + std::to_string(k + 1));
  }
  if (!(lookahead.back() < lookahead.front() / 2)) v.Fail("lookahead ratio at k=8 not below half of k=1");
  for (size_t k = 0; k < single.size(); ++k) {
    if (ToDouble(single[k]) < 2.0 / 9 - 1e-9) v.Fail("rand-single ratio below 2/9 at k=" + std::to_string(k + 1));
  }
  v.detail << "lookahead ratio " << ToDouble(lookahead.front()) << " -> " << ToDouble(lookahead.back())
           << ", rand-single min " << ToDouble(*std::min_element(single.begin(), single.end()));
}

void Criterion5(Verdict& v) {
  std::vector<MechanismConfig> configs = {
      Config(MechanismId::kGvcg),
      Config(MechanismId::kGvcgLazy, ReserveSource::kMonopoly),
      Config(MechanismId::kGvcgLazy, ReserveSource::kConditional),
      Config(MechanismId::kGvcgLazy, ReserveSource::kSingleSample),
      Config(MechanismId::kLookahead),
      Config(MechanismId::kRandSingle),
      Config(MechanismId::kRandMatroid),
      Config(MechanismId::kVcgEager, ReserveSource::kMonopoly),
  };
  size_t audited = 0;
  size_t skipped = 0;
  size_t realizations = 0;
  size_t violations = 0;
  for (const Instance& instance : Corpus()) {
    for (const MechanismConfig& config : configs) {
      try {
        AuditReport report = IcIrAudit(instance, config);
        ++audited;
        realizations += report.realizations;
        violations += report.violation_count;
        if (!report.passed()) v.Fail(instance.name() + " " + config.Label());
      } catch (const WrongVariantError&) {
        ++skipped;
      } catch (const AssumptionError&) {
        ++skipped;
      }
    }
  }
  MechanismConfig hook;
  hook.id = MechanismId::kGvcgLazy;
  hook.reserve_rule = OwnSignalReserveForTesting();
  size_t detected = IcIrAudit(SingleAgentUniform3(), hook).violation_count;
  if (detected == 0) v.Fail("illegal reserve hook went undetected");
  v.detail << audited << " audits over " << realizations << " realizations, " << violations << " violations, "
           << skipped << " not applicable; illegal hook: " << detected << " violations";
}

void Criterion6(Verdict& v) {
  std::vector<Instance> instances = Corpus();
  for (auto& x : Generate({"correlated-private", "weighted-sum"}, {"mixed"}, {3}, {3}, 25, 6000)) {
    instances.push_back(std::move(x));
  }
  size_t checked = 0;
  Rational tightest = 0;
  for (const Instance& instance : instances) {
    if (!instance.feas().is_matroid()) continue;
    ++checked;
    Rational opt = OptRevenue(instance).revenue;
    Rational bound = OptUpperBound(instance);
    if (opt > bound) v.Fail(instance.name());
    if (bound > 0 && opt / bound > tightest) tightest = opt / bound;
  }
  v.detail << checked << " matroid instances, max opt/bound " << tightest.get_str();
}

void Criterion7(Verdict& v) {
  size_t profiles = 0;
  for (const Instance& instance : Corpus()) {
    if (!instance.feas().is_matroid() || instance.num_agents() > 10) continue;
    Auctioneer auctioneer(instance);
    const int n = instance.num_agents();
    for (size_t flat = 0; flat < instance.grid().num_profiles(); ++flat) {
      ++profiles;
      std::vector<Rational> values = testing::ValuesAt(instance, flat);
      ElementSet w = auctioneer.Winners(flat, instance.agents());
      Rational vwp =
          instance.feas().MaxWeightBasis(values, instance.tie_break(), BasisMode::kPositiveOnly, instance.agents() - w).weight;
      Rational sum = 0;
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        sum += testing::SetWeight(auctioneer.Winners(flat, ElementSet(bits)) - w, values);
      }
      Rational subsample = sum / Rational(static_cast<long>(std::uint64_t{1} << n));
      Rational overall = subsample / 2;
      if (4 * subsample < vwp || 8 * overall < vwp) v.Fail(instance.name() + " profile " + std::to_string(flat));
    }
  }
  // Walk: fixed cases plus random matroids with two disjoint bases.
  struct Case {
    FeasibilitySystem feas;
    ElementSet w;
    ElementSet wp;
  };
  std::vector<Case> cases;
  for (int r = 1; r <= 5; ++r) {
    cases.push_back({FeasibilitySystem::Uniform(2 * r, r), ElementSet::Range(r), ElementSet::Range(2 * r) - ElementSet::Range(r)});
  }
  cases.push_back({FeasibilitySystem::Graphic({{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}, {0, 3}}), {0, 1, 2}, {3, 4, 5}});
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 400 && cases.size() < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 9);
    FeasibilitySystem feas = testing::RandomMatroid(rng, n);
    std::vector<ElementSet> bases;
    for (ElementSet s : AllIndependent(feas, feas.ground_set())) {
      if (feas.IsBasis(s)) bases.push_back(s);
    }
    if (bases.front().Size() == 0 || bases.front().Size() > 5) continue;
    std::shuffle(bases.begin(), bases.end(), rng);
    for (size_t a = 0; a < bases.size(); ++a) {
      auto it = std::find_if(bases.begin(), bases.end(), [&](ElementSet b) { return (b & bases[a]).Empty(); });
      if (it != bases.end()) {
        cases.push_back({feas, bases[a], *it});
        break;
      }
    }
  }
  size_t walks = 0;
  for (const Case& c : cases) {
    const int r = c.w.Size();
    const std::uint64_t sequences = std::uint64_t{1} << (2 * r);
    std::map<int, std::uint64_t> hits;
    for (std::uint64_t bits = 0; bits < sequences; ++bits) {
      std::vector<bool> coins;
      for (int k = 0; k < 2 * r; ++k) coins.push_back((bits >> k) & 1U);
      ExchangeWalkResult out = c.feas.CoupledExchangeWalk(c.w, c.wp, coins, TieBreak());
      ++walks;
      if (!c.feas.IsBasis(out.final_set)) v.Fail("walk left the bases: " + c.feas.Describe());
      for (int e : (out.final_set & out.admitted & c.wp).ToVector()) ++hits[e];
    }
    for (int e : c.wp.ToVector()) {
      if (4 * hits[e] != sequences) v.Fail("inclusion frequency " + c.feas.Describe());
    }
  }
  v.detail << profiles << " fixture profiles; " << cases.size() << " walk cases, " << walks << " coin sequences";
}

// Private-value instance on a random matroid with random two-point grids.
Instance RandomMatroidFixture(std::mt19937_64& rng, int index) {
  const int n = 2 + static_cast<int>(rng() % 5);
  std::vector<std::vector<Rational>> points;
  std::vector<std::vector<Rational>> marginals;
  for (int i = 0; i < n; ++i) {
    long lo = static_cast<long>(rng() % 6);
    long hi = lo + 1 + static_cast<long>(rng() % 5);
    points.push_back({Rational(lo), Rational(hi)});
    marginals.push_back({Rational(1, 2), Rational(1, 2)});
  }
  SignalGrid grid(points);
  return Instance("random-matroid-" + std::to_string(index), JointDistribution::Product(grid, marginals),
                  ValuationProfile::Private(grid), testing::RandomMatroid(rng, n));
}

void Criterion8(Verdict& v) {
  std::mt19937_64 rng(8);
  size_t matchings = 0;
  size_t bijections = 0;
  for (int index = 0; index < 1000; ++index) {
    Instance instance = RandomMatroidFixture(rng, index);
    Auctioneer auctioneer(instance);
    const SignalGrid& grid = instance.grid();
    for (int draw = 0; draw < 3; ++draw) {
      size_t flat = rng() % grid.num_profiles();
      ElementSet w = auctioneer.Winners(flat, instance.agents());
      for (ElementSet tp : AllIndependent(instance.feas(), instance.agents() - w)) {
        ++matchings;
        std::map<int, int> f;
        try {
          f = ThresholdMatching(auctioneer, flat, w, tp);
        } catch (const Error& e) {
          v.Fail(instance.name() + ": " + e.what());
          continue;
        }
        ElementSet image;
        if (static_cast<int>(f.size()) != tp.Size()) v.Fail(instance.name() + " matching not perfect");
        for (auto [j, i] : f) {
          if (!w.Contains(i) || image.Contains(i)) v.Fail(instance.name() + " matching not injective into W");
          image.Insert(i);
          size_t at = grid.Replace(flat, i, auctioneer.ThresholdIndex(i, flat, instance.agents()));
          if (instance.Value(j, at) > instance.Value(i, at)) v.Fail(instance.name() + " inequality");
        }
      }
    }
    std::vector<ElementSet> bases;
    for (ElementSet s : AllIndependent(instance.feas(), instance.agents())) {
      if (instance.feas().IsBasis(s)) bases.push_back(s);
    }
    ElementSet b1 = bases[rng() % bases.size()];
    ElementSet b2 = bases[rng() % bases.size()];
    auto g = instance.feas().ExchangeBijection(b1, b2, instance.tie_break());
    ++bijections;
    ElementSet image;
    if (static_cast<int>(g.size()) != (b1 - b2).Size()) v.Fail(instance.name() + " bijection size");
    for (auto [e, f] : g) {
      if (!(b1 - b2).Contains(e) || !(b2 - b1).Contains(f) || image.Contains(f) ||
          !instance.feas().IsIndependent(b2.Without(f).With(e))) {
        v.Fail(instance.name() + " bijection");
      }
      image.Insert(f);
    }
  }
  v.detail << "1000 random matroid instances, " << matchings << " matchings, " << bijections << " bijections";
}

std::vector<Instance> RegularInstances(std::uint64_t seed) {
  return Generate({"regular-marginals"}, {"uniform1", "uniform2", "partition", "transversal", "graphic"}, {2, 3}, {3},
                  10, seed);
}

void Criterion9(Verdict& v) {
  std::vector<Instance> instances = RegularInstances(9000);
  if (instances.size() < 100) v.Fail("too few instances");
  size_t winners = 0;
  for (const Instance& instance : instances) {
    Auctioneer auctioneer(instance);
    for (size_t flat = 0; flat < instance.grid().num_profiles(); ++flat) {
      AuctionOutcome out = auctioneer.Lookahead(flat);
      for (int i : out.tentative.ToVector()) {
        ++winners;
        const AgentOutcome& a = out.agents[static_cast<size_t>(i)];
        Rational offered = std::max(a.reserve, a.threshold_value);
        Rational expected = std::max(a.threshold_value, auctioneer.MonopolyReserve(i));
        if (offered != expected) {
          v.Fail(instance.name() + " profile " + std::to_string(flat) + " agent " + std::to_string(i) + ": " +
                 offered.get_str() + " vs " + expected.get_str());
        }
      }
    }
  }
  v.detail << instances.size() << " regular instances, " << winners << " winner prices compared";
}

void Criterion10(Verdict& v) {
  std::vector<Instance> instances = RegularInstances(10000);
  Rational worst_alpha = 1;
  double worst_slack = 1e300;
  for (const Instance& instance : instances) {
    Rational alpha = 1;
    for (int i = 0; i < instance.num_agents(); ++i) {
      ScalarDistribution d = ValueMarginal(instance, i);
      Rational best = MonopolyPrice(d).revenue;
      if (best == 0) continue;
      Rational sampled = 0;
      for (const Atom& r : d.atoms()) sampled += r.probability * r.value * d.TailProbability(r.value);
      Rational ratio = sampled / best;
      alpha = std::min(alpha, ratio);
    }
    worst_alpha = std::min(worst_alpha, alpha);
    Rational sample = ExpectedRevenue(instance, Config(MechanismId::kGvcgLazy, ReserveSource::kSingleSample)).exact;
    Rational monopoly = ExpectedRevenue(instance, Config(MechanismId::kGvcgLazy, ReserveSource::kMonopoly)).exact;
    double slack = ToDouble(sample - alpha * monopoly);
    worst_slack = std::min(worst_slack, slack);
    if (slack < -1e-9) v.Fail(instance.name());
  }
  v.detail << instances.size() << " regular instances, min alpha " << worst_alpha.get_str() << " ("
           << ToDouble(worst_alpha) << "), min slack " << worst_slack;
}

void Criterion11(Verdict& v) {
  std::vector<Instance> instances = RegularInstances(11000);
  if (instances.size() < 100) v.Fail("too few instances");
  double worst_gap = 1e300;
  size_t profiles = 0;
  for (const Instance& instance : instances) {
    Rational eager = ExpectedRevenue(instance, Config(MechanismId::kVcgEager, ReserveSource::kMonopoly)).exact;
    Rational lazy = ExpectedRevenue(instance, Config(MechanismId::kGvcgLazy, ReserveSource::kMonopoly)).exact;
    worst_gap = std::min(worst_gap, ToDouble(eager - lazy));
    if (ToDouble(eager - lazy) < -1e-9) v.Fail(instance.name() + " revenue");
  }
  std::vector<Instance> threshold_set = instances;
  for (Instance& x : Corpus()) {
    if (x.private_values() && x.feas().is_matroid()) threshold_set.push_back(std::move(x));
  }
  for (const Instance& instance : threshold_set) {
    Auctioneer auctioneer(instance);
    std::vector<Rational> reserves;
    for (int i = 0; i < instance.num_agents(); ++i) reserves.push_back(auctioneer.MonopolyReserve(i));
    for (size_t flat = 0; flat < instance.grid().num_profiles(); ++flat) {
      ++profiles;
      AuctionOutcome eager = auctioneer.VcgEager(flat, reserves);
      AuctionOutcome lazy = auctioneer.GvcgLazy(flat, reserves, instance.agents());
      if (eager.Welfare(instance, flat) < lazy.Welfare(instance, flat)) v.Fail(instance.name() + " welfare");
      for (int i : eager.tentative.ToVector()) {
        if (auctioneer.ThresholdIndex(i, flat, instance.agents()) == kNeverWins) continue;
        if (eager.agents[static_cast<size_t>(i)].threshold_value > auctioneer.ThresholdValue(i, flat, instance.agents())) {
          v.Fail(instance.name() + " threshold");
        }
      }
    }
  }
  v.detail << instances.size() << " regular matroid instances, min eager-lazy revenue " << worst_gap << "; "
           << profiles << " profiles checked for welfare and thresholds";
}

void Criterion12(Verdict& v) {
  Instance nonmat = Fixture("nonmat1");
  Auctioneer auctioneer(nonmat);
  size_t flat = nonmat.grid().Flatten(nonmat.grid().ProfileOf({1, ParseRational("0.5"), ParseRational("1.2")}));
  Rational before = auctioneer.ThresholdValue(0, flat, nonmat.agents());
  Rational after = auctioneer.ThresholdValue(0, flat, {0, 2});
  if (before != ParseRational("0.7") || after != ParseRational("1.2")) v.Fail("thresholds");
  v.detail << "threshold " << ToDouble(before) << " -> " << ToDouble(after);
}

struct Criterion {
  int number;
  const char* title;
  double budget_seconds;
  void (*run)(Verdict&);
};

}  // namespace
}  // namespace ivlab

int main() {
  using namespace ivlab;
  const std::vector<Criterion> criteria = {
      {1, "lookahead keeps half of optimal revenue", 300, Criterion1},
      {2, "single-item randomized mechanism within 4.5", 600, Criterion2},
      {3, "matroid randomized mechanism within 18", 900, Criterion3},
      {4, "gap family separates lookahead from randomized", 60, Criterion4},
      {5, "IC/IR audits clean; illegal hook detected", 0, Criterion5},
      {6, "optimum below upper bound", 0, Criterion6},
      {7, "subsample keeps a quarter of W'; walk frequency 1/4", 0, Criterion7},
      {8, "threshold matching and exchange bijection", 0, Criterion8},
      {9, "lookahead price is max(threshold, monopoly) under regularity", 0, Criterion9},
      {10, "single-sample reserves keep min alpha", 0, Criterion10},
      {11, "eager reserves dominate lazy on matroids", 0, Criterion11},
      {12, "non-matroid threshold reversal", 0, Criterion12},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Verdict v;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.Fail(std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds) v.Fail("over time budget");
    if (!v.pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", c.number, c.title, v.detail.str().c_str(),
                seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
