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

#include <map>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ivlab/errors.h"
#include "ivlab/feasibility.h"
#include "test_util.h"

namespace ivlab {
namespace {

using testing::AllIndependent;
using testing::RandomMatroid;
using testing::BruteWinners;
using testing::SetWeight;

FeasibilitySystem NonMatroid() { return FeasibilitySystem::Explicit(3, {{}, {0}, {1}, {0, 1}, {2}}); }

FeasibilitySystem Triangle() { return FeasibilitySystem::Graphic({{0, 1}, {1, 2}, {0, 2}}); }

std::vector<Rational> Weights(std::initializer_list<Rational> w) { return w; }

TEST(IsIndependent, UniformAndExplicit) {
  auto u1 = FeasibilitySystem::Uniform(3, 1);
  EXPECT_TRUE(u1.IsIndependent({1}));
  EXPECT_FALSE(u1.IsIndependent({0, 1}));
  EXPECT_TRUE(u1.IsIndependent({}));
  EXPECT_FALSE(NonMatroid().IsIndependent({0, 2}));
  EXPECT_TRUE(NonMatroid().IsIndependent({0, 1}));
}

TEST(IsIndependent, OutsideGroundSetIsDomainError) {
  EXPECT_THROW(FeasibilitySystem::Uniform(3, 1).IsIndependent({3}), DomainError);
}

TEST(Explicit, RejectsFamiliesThatAreNotDownwardClosed) {
  EXPECT_THROW(FeasibilitySystem::Explicit(2, {{}, {0, 1}}), DomainError);
  EXPECT_THROW(FeasibilitySystem::Explicit(2, {{0}}), DomainError);
}

TEST(Explicit, MatroidFlagComesFromExchangeCheck) {
  EXPECT_FALSE(NonMatroid().is_matroid());
  EXPECT_TRUE(FeasibilitySystem::Explicit(2, {{}, {0}, {1}}).is_matroid());
  EXPECT_TRUE(Triangle().is_matroid());
}

TEST(Rank, Examples) {
  EXPECT_EQ(FeasibilitySystem::Uniform(4, 2).Rank(ElementSet::Range(4)), 2);
  auto partition = FeasibilitySystem::Partition(3, {{0, 1}, {2}}, {1, 1});
  EXPECT_EQ(partition.Rank({0, 1}), 1);
  EXPECT_EQ(Triangle().Rank(ElementSet::Range(3)), 2);
  EXPECT_EQ(Triangle().Rank({}), 0);
}

TEST(Rank, NonMatroidIsUnsupported) { EXPECT_THROW(NonMatroid().Rank({0, 1}), UnsupportedOperation); }

TEST(MaxWeightBasis, Examples) {
  TieBreak tie;
  auto w = Weights({3, 1, 2});
  EXPECT_EQ(FeasibilitySystem::Uniform(3, 1).MaxWeightBasis(w, tie).elements, ElementSet({0}));
  EXPECT_EQ(FeasibilitySystem::Uniform(3, 2).MaxWeightBasis(w, tie).elements, ElementSet({0, 2}));
  auto nm = Weights({1, Rational(1, 2), Rational(6, 5)});
  Basis b = NonMatroid().MaxWeightBasis(nm, tie, BasisMode::kFull);
  EXPECT_EQ(b.elements, ElementSet({0, 1}));
  EXPECT_EQ(b.weight, Rational(3, 2));
}

TEST(MaxWeightBasis, TiesFollowTheOrder) {
  auto w = Weights({1, 1, 1});
  auto u1 = FeasibilitySystem::Uniform(3, 1);
  EXPECT_EQ(u1.MaxWeightBasis(w, TieBreak()).elements, ElementSet({0}));
  EXPECT_EQ(u1.MaxWeightBasis(w, TieBreak({2, 0, 1})).elements, ElementSet({2}));
}

TEST(MaxWeightBasis, PositiveOnlyVersusFull) {
  auto w = Weights({2, -1, 0});
  auto u2 = FeasibilitySystem::Uniform(3, 2);
  EXPECT_EQ(u2.MaxWeightBasis(w, TieBreak()).elements, ElementSet({0}));
  EXPECT_EQ(u2.MaxWeightBasis(w, TieBreak(), BasisMode::kFull).elements, ElementSet({0, 2}));
}

TEST(StrongBasisExchange, Examples) {
  TieBreak tie;
  EXPECT_EQ(FeasibilitySystem::Uniform(4, 2).StrongBasisExchange({0, 1}, {2, 3}, 0, tie), 2);
  EXPECT_EQ(Triangle().StrongBasisExchange({0, 1}, {1, 2}, 0, tie), 2);
  auto partition = FeasibilitySystem::Partition(4, {{0, 2}, {1, 3}}, {1, 1});
  EXPECT_EQ(partition.StrongBasisExchange({0, 1}, {2, 3}, 0, tie), 2);
  EXPECT_EQ(FeasibilitySystem::Uniform(4, 2).StrongBasisExchange({0, 1}, {2, 3}, 0, TieBreak({3, 2, 1, 0})), 3);
}

TEST(ExchangeBijection, Examples) {
  TieBreak tie;
  EXPECT_TRUE(FeasibilitySystem::Uniform(4, 2).ExchangeBijection({0, 1}, {0, 1}, tie).empty());
  auto u = FeasibilitySystem::Uniform(4, 2).ExchangeBijection({0, 1}, {2, 3}, tie);
  ASSERT_EQ(u.size(), 2u);
  EXPECT_NE(u[0], u[1]);
  auto partition = FeasibilitySystem::Partition(4, {{0, 2}, {1, 3}}, {1, 1});
  auto forced = partition.ExchangeBijection({0, 1}, {2, 3}, tie);
  EXPECT_EQ(forced, (std::map<int, int>{{0, 2}, {1, 3}}));
}

TEST(Restriction, Examples) {
  auto r = FeasibilitySystem::Uniform(4, 2).Restriction({2, 3});
  EXPECT_EQ(r.Rank(), 2);
  EXPECT_TRUE(r.IsIndependent({2, 3}));
  auto e = NonMatroid().Restriction({2});
  std::vector<ElementSet> family = e.FeasibleSets();
  EXPECT_EQ(family, (std::vector<ElementSet>{{}, {2}}));
  EXPECT_TRUE(e.is_matroid());
  auto t = Triangle().Restriction({0, 2});
  EXPECT_EQ(t.Rank(), 2);
  EXPECT_EQ(t.FeasibleSets().size(), 4u);
}

TEST(CoupledExchangeWalk, Examples) {
  auto u1 = FeasibilitySystem::Uniform(2, 1);
  TieBreak tie;
  auto keep = u1.CoupledExchangeWalk({0}, {1}, {true, true}, tie);
  EXPECT_EQ(keep.final_set, ElementSet({0}));
  EXPECT_EQ(keep.admitted, ElementSet({0, 1}));
  auto swap = u1.CoupledExchangeWalk({0}, {1}, {false, true}, tie);
  EXPECT_EQ(swap.final_set, ElementSet({1}));
  EXPECT_EQ(swap.admitted, ElementSet({1}));
  auto empty = FeasibilitySystem::Uniform(2, 0).CoupledExchangeWalk({}, {}, {}, tie);
  EXPECT_TRUE(empty.final_set.Empty());
  EXPECT_TRUE(empty.admitted.Empty());
}

TEST(CoupledExchangeWalk, RejectsBadInputs) {
  auto u2 = FeasibilitySystem::Uniform(4, 2);
  TieBreak tie;
  EXPECT_THROW(u2.CoupledExchangeWalk({0, 1}, {1, 2}, {1, 1, 1, 1}, tie), PreconditionError);
  EXPECT_THROW(u2.CoupledExchangeWalk({0, 1}, {2}, {1, 1, 1, 1}, tie), PreconditionError);
  EXPECT_THROW(u2.CoupledExchangeWalk({0, 1}, {2, 3}, {1, 1}, tie), PreconditionError);
}

// Random matroids on up to `max_n` elements, every kind represented.
TEST(Properties, GreedyMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    FeasibilitySystem feas = RandomMatroid(rng, n);
    std::vector<Rational> w;
    for (int e = 0; e < n; ++e) w.emplace_back(static_cast<int>(rng() % 9) - 3);
    TieBreak tie;
    Basis greedy = feas.MaxWeightBasis(w, tie, BasisMode::kFull);
    ElementSet brute = BruteWinners(feas, w, tie, feas.ground_set());
    EXPECT_EQ(greedy.elements, brute) << feas.Describe();
    EXPECT_EQ(greedy.weight, SetWeight(brute, w));
    Rational best = 0;
    for (ElementSet s : AllIndependent(feas, feas.ground_set())) {
      Rational ws = SetWeight(s, w);
      if (ws > best) best = ws;
    }
    EXPECT_EQ(feas.MaxWeightBasis(w, tie).weight, best);
  }
}

TEST(Properties, RankIsSubmodularMonotoneAndExact) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 10;
    FeasibilitySystem feas = RandomMatroid(rng, n);
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<int> rank(count);
    for (std::uint64_t s = 0; s < count; ++s) rank[s] = feas.Rank(ElementSet(s));
    // Brute rank: largest independent subset.
    std::vector<int> brute(count, 0);
    for (std::uint64_t s = 0; s < count; ++s) {
      if (feas.IsIndependent(ElementSet(s))) brute[s] = std::popcount(s);
    }
    for (std::uint64_t s = 0; s < count; ++s) {
      for (int e = 0; e < n; ++e) {
        if (s >> e & 1U) brute[s] = std::max(brute[s], brute[s & ~(std::uint64_t{1} << e)]);
      }
    }
    ASSERT_EQ(rank, brute) << feas.Describe();
    EXPECT_EQ(rank[0], 0);
    for (std::uint64_t a = 0; a < count; ++a) {
      for (std::uint64_t b = 0; b < count; ++b) {
        ASSERT_LE(rank[a | b] + rank[a & b], rank[a] + rank[b]);
      }
    }
  }
}

TEST(Properties, ExchangeBijectionIsValid) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    FeasibilitySystem feas = RandomMatroid(rng, n);
    std::vector<ElementSet> bases;
    for (ElementSet s : AllIndependent(feas, feas.ground_set())) {
      if (feas.IsBasis(s)) bases.push_back(s);
    }
    ElementSet b1 = bases[rng() % bases.size()];
    ElementSet b2 = bases[rng() % bases.size()];
    auto g = feas.ExchangeBijection(b1, b2, TieBreak());
    ASSERT_EQ(static_cast<int>(g.size()), (b1 - b2).Size());
    ElementSet image;
    for (auto [e, f] : g) {
      EXPECT_TRUE((b1 - b2).Contains(e));
      EXPECT_TRUE((b2 - b1).Contains(f));
      EXPECT_FALSE(image.Contains(f));
      image.Insert(f);
      EXPECT_TRUE(feas.IsIndependent(b2.Without(f).With(e)));
    }
    int x_count = 0;
    for (int x : (b1 - b2).ToVector()) {
      int y = feas.StrongBasisExchange(b1, b2, x, TieBreak());
      EXPECT_TRUE(feas.IsBasis(b1.Without(x).With(y)));
      EXPECT_TRUE(feas.IsBasis(b2.Without(y).With(x)));
      ++x_count;
    }
    EXPECT_EQ(x_count, (b1 - b2).Size());
  }
}

struct WalkCase {
  FeasibilitySystem feas;
  ElementSet w;
  ElementSet wp;
};

std::vector<WalkCase> WalkCases() {
  std::vector<WalkCase> cases;
  for (int r = 1; r <= 5; ++r) {
    cases.push_back({FeasibilitySystem::Uniform(2 * r, r), ElementSet::Range(r), ElementSet::Range(2 * r) - ElementSet::Range(r)});
  }
  cases.push_back({FeasibilitySystem::Partition(6, {{0, 3}, {1, 4}, {2, 5}}, {1, 1, 1}), {0, 1, 2}, {3, 4, 5}});
  cases.push_back({FeasibilitySystem::Partition(8, {{0, 1, 4, 5}, {2, 3, 6, 7}}, {2, 2}), {0, 1, 2, 3}, {4, 5, 6, 7}});
  // K4: two disjoint spanning trees.
  cases.push_back({FeasibilitySystem::Graphic({{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}, {0, 3}}), {0, 1, 2}, {3, 4, 5}});
  cases.push_back({FeasibilitySystem::Transversal({{0}, {1}, {0, 1}, {0, 1}}), {0, 1}, {2, 3}});
  return cases;
}

TEST(Properties, CoupledWalkQuarterFrequency) {
  TieBreak tie;
  for (const WalkCase& c : WalkCases()) {
    const int r = c.w.Size();
    const std::uint64_t sequences = std::uint64_t{1} << (2 * r);
    std::map<int, std::uint64_t> hits;
    for (std::uint64_t bits = 0; bits < sequences; ++bits) {
      std::vector<bool> coins;
      for (int k = 0; k < 2 * r; ++k) coins.push_back((bits >> k) & 1U);
      ExchangeWalkResult out = c.feas.CoupledExchangeWalk(c.w, c.wp, coins, tie);
      ASSERT_TRUE(c.feas.IsBasis(out.final_set)) << c.feas.Describe();
      ASSERT_TRUE((c.w & out.admitted).IsSubsetOf(out.final_set));
      for (int e : (out.final_set & out.admitted & c.wp).ToVector()) ++hits[e];
    }
    for (int e : c.wp.ToVector()) {
      EXPECT_EQ(4 * hits[e], sequences) << c.feas.Describe() << " element " << e;
    }
  }
}

}  // namespace
}  // namespace ivlab
