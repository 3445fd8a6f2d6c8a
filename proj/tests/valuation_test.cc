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

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ivlab/errors.h"
#include "ivlab/generators.h"
#include "ivlab/valuation.h"
#include "test_util.h"

namespace ivlab {
namespace {

// Definition-level checks written independently of the library scans.
bool BruteSingleCrossing(const ValuationProfile& vp) {
  const SignalGrid& grid = vp.grid();
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    for (int i = 0; i < vp.num_agents(); ++i) {
      for (int j = 0; j < vp.num_agents(); ++j) {
        if (i == j) continue;
        for (int up = grid.Coordinate(flat, i) + 1; up < grid.size(i); ++up) {
          size_t higher = grid.Replace(flat, i, up);
          if (vp.Value(i, flat) >= vp.Value(j, flat) && !(vp.Value(i, higher) > vp.Value(j, higher))) return false;
        }
      }
    }
  }
  return true;
}

bool BruteCrossEffects(const ValuationProfile& vp) {
  const SignalGrid& grid = vp.grid();
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    for (int i = 0; i < vp.num_agents(); ++i) {
      for (int j = 0; j < vp.num_agents(); ++j) {
        int sj = grid.Coordinate(flat, j);
        if (i == j || sj + 1 >= grid.size(j)) continue;
        Rational base = vp.Value(i, grid.Replace(flat, j, sj + 1)) - vp.Value(i, flat);
        for (int up = grid.Coordinate(flat, i) + 1; up < grid.size(i); ++up) {
          size_t moved = grid.Replace(flat, i, up);
          Rational diff = vp.Value(i, grid.Replace(moved, j, sj + 1)) - vp.Value(i, moved);
          if (diff > base) return false;
        }
      }
    }
  }
  return true;
}

TEST(Value, Examples) {
  SignalGrid grid({{1, 2, 3}, {1, 2, 4}});
  EXPECT_EQ(ValuationProfile::Private(grid).ValueAt(0, {3, 1}), 3);
  EXPECT_EQ(ValuationProfile::WeightedSum(grid, Rational(1, 2)).ValueAt(0, {2, 4}), 4);
  Instance gap = GapK(2);
  EXPECT_EQ(gap.vp().ValueAt(1, {4, 0}), Rational(39, 10));
  EXPECT_THROW(ValuationProfile::Private(grid).ValueAt(0, {5, 1}), DomainError);
}

TEST(Value, FactoriesRejectNonMonotone) {
  SignalGrid grid({{1, 2}, {1, 2}});
  // v_0 decreases in s_1.
  std::vector<std::vector<Rational>> values = {{2, 1}, {1, 2}, {3, 1}, {2, 2}};
  EXPECT_THROW(ValuationProfile::Table(grid, values), AssumptionError);
  // v_0 flat in its own signal.
  values = {{1, 1}, {1, 2}, {1, 1}, {1, 2}};
  EXPECT_THROW(ValuationProfile::Table(grid, values), AssumptionError);
  EXPECT_THROW(ValuationProfile::WeightedSum(grid, Rational(3, 2)), DomainError);
}

TEST(StepFunction, SamplesLastBreakpoint) {
  std::vector<Rational> points = {0, 1, 2, 3};
  auto g = ValuationProfile::StepFunctionOnGrid(points, {{0, 1}, {2, 5}});
  EXPECT_EQ(g, (std::vector<Rational>{1, 1, 5, 5}));
  EXPECT_THROW(ValuationProfile::StepFunctionOnGrid(points, {{1, 1}}), DomainError);
}

TEST(SingleCrossing, Examples) {
  SignalGrid grid({{0, 1}, {0, 1}});
  EXPECT_TRUE(CheckSingleCrossing(ValuationProfile::Private(grid)).empty());
  EXPECT_TRUE(CheckSingleCrossing(ValuationProfile::WeightedSum(grid, Rational(1, 2))).empty());
  EXPECT_FALSE(CheckSingleCrossing(ValuationProfile::WeightedSum(grid, Rational(1))).empty());
}

TEST(CrossEffects, Examples) {
  SignalGrid grid({{0, 1, 2}, {0, 1}});
  AdditiveTerms terms = {{{0, 2, 5}, {0, 1}}, {{0, 1, 1}, {1, 4}}};
  EXPECT_TRUE(CheckDiminishingCrossEffects(ValuationProfile::Additive(grid, terms)).empty());
  // Outer min(x, 10) never binds strictly inside the monotone region here.
  std::vector<std::vector<AffinePiece>> outer = {{{1, 0}, {0, 10}}, {{1, 0}, {0, 10}}};
  EXPECT_TRUE(CheckDiminishingCrossEffects(ValuationProfile::ConcaveAdditive(grid, terms, outer)).empty());

  SignalGrid square({{1, 2}, {1, 2}});
  std::vector<std::vector<Rational>> product;
  for (size_t flat = 0; flat < square.num_profiles(); ++flat) {
    Rational s0 = square.value(0, square.Coordinate(flat, 0));
    Rational s1 = square.value(1, square.Coordinate(flat, 1));
    product.push_back({s0 * s1, s1});
  }
  auto violations = CheckDiminishingCrossEffects(ValuationProfile::Table(square, product));
  ASSERT_FALSE(violations.empty());
  EXPECT_EQ(violations.front().agent, 0);
  EXPECT_EQ(violations.front().other, 1);
}

TEST(Properties, CheckersAgreeWithDefinitions) {
  std::mt19937_64 rng(31);
  int crossing_failures = 0;
  int cross_failures = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    std::vector<std::vector<Rational>> points;
    for (int i = 0; i < n; ++i) points.push_back({0, 1, 2});
    SignalGrid grid(points);
    // v_i = 2 s_i plus, for a random subset of profiles, a nondecreasing bump
    // in the signal sum; monotonicity failures fall back to private values.
    std::vector<std::vector<Rational>> values(grid.num_profiles(), std::vector<Rational>(static_cast<size_t>(n)));
    for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
      for (int i = 0; i < n; ++i) values[flat][static_cast<size_t>(i)] = 2 * grid.Coordinate(flat, i);
    }
    std::vector<Rational> bump(static_cast<size_t>(2 * n + 1));
    for (size_t k = 1; k < bump.size(); ++k) bump[k] = bump[k - 1] + static_cast<int>(rng() % 4);
    for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
      int sum = 0;
      for (int j = 0; j < n; ++j) sum += grid.Coordinate(flat, j);
      for (int i = 0; i < n; ++i) {
        if (rng() % 2) values[flat][static_cast<size_t>(i)] += bump[static_cast<size_t>(sum)];
      }
    }
    ValuationProfile vp = [&]() {
      try {
        return ValuationProfile::Table(grid, values);
      } catch (const AssumptionError&) {
        return ValuationProfile::Private(grid);
      }
    }();
    bool crossing = CheckSingleCrossing(vp).empty();
    bool damped = CheckDiminishingCrossEffects(vp).empty();
    EXPECT_EQ(crossing, BruteSingleCrossing(vp));
    EXPECT_EQ(damped, BruteCrossEffects(vp));
    crossing_failures += crossing ? 0 : 1;
    cross_failures += damped ? 0 : 1;
  }
  EXPECT_GT(crossing_failures, 0);
  EXPECT_GT(cross_failures, 0);
}

TEST(Properties, BuiltInFamiliesPassSingleCrossing) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    SignalGrid grid({{0, 1, 3}, {1, 2}, {0, 2, 5}});
    Rational beta(static_cast<int>(rng() % 10), 10);
    beta.canonicalize();
    ValuationProfile vp = ValuationProfile::WeightedSum(grid, beta);
    EXPECT_TRUE(CheckSingleCrossing(vp).empty());
    EXPECT_TRUE(CheckDiminishingCrossEffects(vp).empty());
  }
  for (const char* generator : {"additive-interdependent", "concave-additive", "weighted-sum"}) {
    GeneratorParams params;
    params.count = 20;
    for (const Instance& instance : GenerateInstances(generator, params, 17).instances) {
      EXPECT_TRUE(CheckSingleCrossing(instance.vp()).empty()) << instance.name();
      EXPECT_TRUE(BruteSingleCrossing(instance.vp())) << instance.name();
      EXPECT_TRUE(BruteCrossEffects(instance.vp())) << instance.name();
    }
  }
  for (const std::string& name : testing::CorpusNames()) {
    Instance instance = testing::Fixture(name);
    EXPECT_TRUE(BruteSingleCrossing(instance.vp())) << name;
    EXPECT_TRUE(instance.single_crossing()) << name;
  }
}

TEST(Properties, ValuesAreMonotoneOnEveryFixture) {
  for (const std::string& name : testing::CorpusNames()) {
    Instance instance = testing::Fixture(name);
    const SignalGrid& grid = instance.grid();
    for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
      for (int j = 0; j < instance.num_agents(); ++j) {
        int sj = grid.Coordinate(flat, j);
        if (sj + 1 >= grid.size(j)) continue;
        size_t up = grid.Replace(flat, j, sj + 1);
        for (int i = 0; i < instance.num_agents(); ++i) {
          EXPECT_GE(instance.Value(i, up), instance.Value(i, flat)) << name;
          if (i == j) {
            EXPECT_GT(instance.Value(i, up), instance.Value(i, flat)) << name;
          }
          EXPECT_GE(instance.Value(i, flat), 0) << name;
        }
      }
    }
  }
}

TEST(Properties, AdditiveFormsTelescope) {
  GeneratorParams params;
  params.count = 10;
  for (const Instance& instance : GenerateInstances("additive-interdependent", params, 4).instances) {
    const SignalGrid& grid = instance.grid();
    const AdditiveTerms& g = instance.vp().additive_terms();
    for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
      for (int i = 0; i < instance.num_agents(); ++i) {
        for (int j = 0; j < instance.num_agents(); ++j) {
          if (i == j) continue;
          size_t floor = grid.Replace(flat, j, 0);
          int sj = grid.Coordinate(flat, j);
          const auto& gij = g[static_cast<size_t>(i)][static_cast<size_t>(j)];
          EXPECT_EQ(Rational(instance.Value(i, flat) - instance.Value(i, floor)),
                    Rational(gij[static_cast<size_t>(sj)] - gij[0]));
        }
      }
    }
  }
  SignalGrid grid({{0, 1, 3}, {1, 2, 6}});
  ValuationProfile ws = ValuationProfile::WeightedSum(grid, Rational(1, 3));
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    size_t floor = grid.Replace(flat, 1, 0);
    Rational expected = Rational(1, 3) * (grid.value(1, grid.Coordinate(flat, 1)) - grid.value(1, 0));
    EXPECT_EQ(Rational(ws.Value(0, flat) - ws.Value(0, floor)), expected);
  }
}

}  // namespace
}  // namespace ivlab
