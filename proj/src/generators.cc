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

#include "ivlab/generators.h"

#include <algorithm>
#include <random>
#include <utility>

#include "ivlab/distribution.h"
#include "ivlab/errors.h"
#include "ivlab/feasibility.h"
#include "ivlab/valuation.h"

namespace ivlab {
namespace {

using Rng = std::mt19937_64;

// Inclusive range; modulo bias is irrelevant at these sizes and keeps the
// stream identical across standard libraries.
int Draw(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<Rational> DistinctPoints(Rng& rng, int count, int lo, int hi) {
  std::vector<int> pool;
  for (int v = lo; v <= hi; ++v) pool.push_back(v);
  for (int i = 0; i < count; ++i) {
    int j = Draw(rng, i, static_cast<int>(pool.size()) - 1);
    std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
  }
  pool.resize(static_cast<size_t>(count));
  std::sort(pool.begin(), pool.end());
  return {pool.begin(), pool.end()};
}

SignalGrid RandomGrid(Rng& rng, int agents, int size, int lo, int hi) {
  std::vector<std::vector<Rational>> points;
  for (int i = 0; i < agents; ++i) points.push_back(DistinctPoints(rng, size, lo, hi));
  return SignalGrid(std::move(points));
}

// Integer weights in [0, 3]; some profiles get zero mass.
JointDistribution RandomTable(Rng& rng, const SignalGrid& grid) {
  std::vector<std::pair<Profile, Rational>> entries;
  Rational total = 0;
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    Rational w = Draw(rng, 0, 3);
    if (w == 0) continue;
    total += w;
    entries.emplace_back(grid.Unflatten(flat), w);
  }
  if (entries.empty()) {
    entries.emplace_back(grid.Unflatten(0), Rational(1));
    total = 1;
  }
  for (auto& [profile, p] : entries) p /= total;
  return JointDistribution::Table(grid, std::move(entries));
}

FeasibilitySystem RandomFeasibility(Rng& rng, int n, std::string kind) {
  static const char* kKinds[] = {"uniform1", "uniform2", "partition", "transversal", "graphic"};
  if (kind == "mixed") kind = kKinds[Draw(rng, 0, 4)];
  if (kind == "uniform1") return FeasibilitySystem::Uniform(n, std::min(1, n));
  if (kind == "uniform2") return FeasibilitySystem::Uniform(n, std::min(2, n));
  if (kind == "partition") {
    if (n < 2) return FeasibilitySystem::Partition(n, {{0}}, {1});
    std::vector<std::vector<int>> blocks(2);
    blocks[0].push_back(0);
    blocks[1].push_back(1);
    for (int e = 2; e < n; ++e) blocks[static_cast<size_t>(Draw(rng, 0, 1))].push_back(e);
    return FeasibilitySystem::Partition(n, std::move(blocks), {1, 1});
  }
  if (kind == "transversal") {
    std::vector<std::vector<int>> adjacency(static_cast<size_t>(n));
    for (auto& row : adjacency) {
      int mask = Draw(rng, 1, 3);
      if (mask & 1) row.push_back(0);
      if (mask & 2) row.push_back(1);
    }
    return FeasibilitySystem::Transversal(std::move(adjacency));
  }
  if (kind == "graphic") {
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < n; ++e) {
      int a = Draw(rng, 0, 2);
      int b = (a + Draw(rng, 1, 2)) % 3;
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    return FeasibilitySystem::Graphic(std::move(edges));
  }
  throw DomainError("unknown feasibility kind '" + kind + "'");
}

// g_ii rises by 2..4 per grid step, g_ij (j != i) by 0..1.
AdditiveTerms RandomTerms(Rng& rng, const SignalGrid& grid) {
  int n = grid.num_agents();
  AdditiveTerms terms(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> g;
      Rational level = i == j ? Draw(rng, 0, 2) : Draw(rng, 0, 1);
      for (int k = 0; k < grid.size(j); ++k) {
        if (k > 0) level += i == j ? Draw(rng, 2, 4) : Draw(rng, 0, 1);
        g.push_back(level);
      }
      terms[static_cast<size_t>(i)].push_back(std::move(g));
    }
  }
  return terms;
}

Rational DrawBeta(Rng& rng) {
  static const Rational kBetas[] = {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3),
                                    Rational(3, 4)};
  return kBetas[Draw(rng, 0, 4)];
}

bool Interdependent(const std::string& g) {
  return g == "weighted-sum" || g == "additive-interdependent" || g == "concave-additive";
}

Instance DrawOne(const std::string& generator, const GeneratorParams& params, Rng& rng,
                 const std::string& name) {
  int n = params.agents;
  if (generator == "correlated-private") {
    SignalGrid grid = RandomGrid(rng, n, params.grid_size, 1, 6);
    JointDistribution dist = RandomTable(rng, grid);
    return Instance(name, std::move(dist), ValuationProfile::Private(grid),
                    RandomFeasibility(rng, n, params.feasibility));
  }
  if (generator == "regular-marginals") {
    SignalGrid grid = RandomGrid(rng, n, params.grid_size, 1, 8);
    std::vector<std::vector<Rational>> marginals;
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> w;
      Rational total = 0;
      for (int k = 0; k < grid.size(i); ++k) {
        w.emplace_back(Draw(rng, 1, 4));
        total += w.back();
      }
      for (auto& x : w) x /= total;
      marginals.push_back(std::move(w));
    }
    JointDistribution dist = JointDistribution::Product(grid, std::move(marginals));
    for (int i = 0; i < n; ++i) {
      if (!AnalyzeRegularity(dist.Marginal(i)).is_regular) throw AssumptionError("irregular marginal");
    }
    return Instance(name, std::move(dist), ValuationProfile::Private(grid),
                    RandomFeasibility(rng, n, params.feasibility));
  }
  if (Interdependent(generator)) {
    SignalGrid grid = RandomGrid(rng, n, params.grid_size, 0, 4);
    JointDistribution dist = RandomTable(rng, grid);
    ValuationProfile vp = [&]() -> ValuationProfile {
      if (generator == "weighted-sum") {
        return ValuationProfile::WeightedSum(grid, params.beta == 0 ? DrawBeta(rng) : params.beta);
      }
      AdditiveTerms terms = RandomTerms(rng, grid);
      if (generator == "additive-interdependent") return ValuationProfile::Additive(grid, std::move(terms));
      std::vector<std::vector<AffinePiece>> outer;
      for (int i = 0; i < n; ++i) {
        outer.push_back({AffinePiece{1, 0}, AffinePiece{Rational(1, 2), Rational(Draw(rng, 1, 4))}});
      }
      return ValuationProfile::ConcaveAdditive(grid, std::move(terms), std::move(outer));
    }();
    Instance instance(name, std::move(dist), std::move(vp), RandomFeasibility(rng, n, params.feasibility));
    if (!instance.single_crossing() || !instance.diminishing_cross_effects()) {
      throw AssumptionError("single crossing or diminishing cross effects fails");
    }
    return instance;
  }
  throw DomainError("unknown generator '" + generator + "'");
}

}  // namespace

Instance Tiny1() {
  SignalGrid grid({{1, 2}, {1, 2}});
  JointDistribution dist =
      JointDistribution::Product(grid, {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}});
  return Instance("tiny1", std::move(dist), ValuationProfile::Private(grid), FeasibilitySystem::Uniform(2, 1));
}

Instance GapK(int k, const Rational& eps) {
  if (k < 0 || k > 40) throw DomainError("GapK: k must lie in [0, 40]");
  std::vector<Rational> points;
  std::vector<std::pair<Profile, Rational>> entries;
  for (int j = 0; j <= k; ++j) {
    Rational point(mpz_class(1) << j);
    Rational mass(1, mpz_class(1) << (j < k ? j + 1 : k));
    points.push_back(point);
    entries.push_back({{j, 0}, mass});
  }
  SignalGrid grid({points, {Rational(0)}});
  std::vector<std::vector<Rational>> values(grid.num_profiles());
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    const Rational& s0 = grid.value(0, grid.Coordinate(flat, 0));
    values[flat] = {s0, s0 - eps};
  }
  JointDistribution dist = JointDistribution::Table(grid, std::move(entries));
  return Instance("gap_k" + std::to_string(k), std::move(dist), ValuationProfile::Table(grid, std::move(values)),
                  FeasibilitySystem::Uniform(2, 1));
}

Instance NonMat1() {
  SignalGrid grid({{Rational(7, 10), Rational(1), Rational(6, 5)},
                   {Rational(1, 2), Rational(1)},
                   {Rational(1), Rational(6, 5)}});
  JointDistribution dist = JointDistribution::Product(
      grid, {{Rational(1, 3), Rational(1, 3), Rational(1, 3)},
             {Rational(1, 2), Rational(1, 2)},
             {Rational(1, 2), Rational(1, 2)}});
  FeasibilitySystem feas = FeasibilitySystem::Explicit(3, {{}, {0}, {1}, {0, 1}, {2}});
  return Instance("nonmat1", std::move(dist), ValuationProfile::Private(grid), std::move(feas));
}

Instance SingleAgentUniform3() {
  SignalGrid grid({{1, 2, 3}});
  JointDistribution dist = JointDistribution::Product(grid, {{Rational(1, 3), Rational(1, 3), Rational(1, 3)}});
  return Instance("single3", std::move(dist), ValuationProfile::Private(grid), FeasibilitySystem::Uniform(1, 1));
}

std::vector<std::string> GeneratorNames() {
  return {"correlated-private", "weighted-sum", "additive-interdependent", "concave-additive",
          "regular-marginals"};
}

GeneratedInstances GenerateInstances(const std::string& generator, const GeneratorParams& params,
                                     std::uint64_t seed) {
  const auto names = GeneratorNames();
  if (std::find(names.begin(), names.end(), generator) == names.end()) {
    throw DomainError("unknown generator '" + generator + "'");
  }
  if (params.agents < 1 || params.agents > 8) throw DomainError("generator: agents must lie in [1, 8]");
  if (params.grid_size < 1 || params.grid_size > 5) throw DomainError("generator: grid_size must lie in [1, 5]");
  if (params.count < 0) throw DomainError("generator: count must be nonnegative");
  constexpr size_t kMaxRejections = 100000;

  Rng rng(seed);
  GeneratedInstances out;
  for (int index = 0; index < params.count; ++index) {
    std::string name = generator + "-s" + std::to_string(seed) + "-" + std::to_string(index);
    for (;;) {
      try {
        out.instances.push_back(DrawOne(generator, params, rng, name));
        break;
      } catch (const AssumptionError&) {
        if (++out.rejections > kMaxRejections) {
          throw AssumptionError("generator '" + generator + "': too many rejected samples");
        }
      }
    }
  }
  return out;
}

}  // namespace ivlab
