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

#ifndef IVLAB_FEASIBILITY_H_
#define IVLAB_FEASIBILITY_H_

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ivlab/element_set.h"
#include "ivlab/rational.h"

namespace ivlab {

// Total order on elements used to break every tie in the library. Position 0
// is the highest priority. The default order is ascending element id.
class TieBreak {
 public:
  TieBreak() = default;
  // `order` must be a permutation of 0..n-1.
  explicit TieBreak(std::vector<int> order);

  // Position of `e` in the order; smaller wins ties.
  int Position(int e) const {
    return order_.empty() ? e : position_[static_cast<size_t>(e)];
  }
  bool Before(int a, int b) const { return Position(a) < Position(b); }

  // Elements of `s` listed by priority.
  std::vector<int> Sorted(ElementSet s) const;

  // True when the order is explicit (not the implicit ascending default).
  bool is_explicit() const { return !order_.empty(); }
  const std::vector<int>& order() const { return order_; }

  // Among two distinct sets, true if `a` contains the highest-priority element
  // of their symmetric difference.
  bool PrefersSet(ElementSet a, ElementSet b) const;

 private:
  std::vector<int> order_;
  std::vector<int> position_;
};

enum class FeasibilityKind { kUniform, kPartition, kTransversal, kGraphic, kExplicit };

std::string KindName(FeasibilityKind kind);

// Controls which elements greedy may admit.
enum class BasisMode {
  // Only elements with strictly positive weight.
  kPositiveOnly,
  // A maximal independent set, whatever the weights.
  kFull,
};

struct Basis {
  ElementSet elements;
  Rational weight;
};

struct ExchangeWalkResult {
  ElementSet final_set;  // A_r
  ElementSet admitted;   // Z
  // b_1..b_r: the element of Wp paired with each element of W (W in
  // tie-break order).
  std::vector<int> paired;
};

// A downward-closed set system given by an independence oracle. Element ids
// live in [0, universe_size()); the ground set may be a subset after
// restriction or contraction. Immutable once built.
class FeasibilitySystem {
 public:
  // All subsets of size at most k.
  static FeasibilitySystem Uniform(int ground_size, int k);
  // Blocks must partition {0..ground_size-1}; at most capacities[b] elements
  // from block b.
  static FeasibilitySystem Partition(int ground_size, std::vector<std::vector<int>> blocks,
                                     std::vector<int> capacities);
  // Element e may be matched to any right vertex in adjacency[e]; a set is
  // independent iff it can be matched entirely.
  static FeasibilitySystem Transversal(std::vector<std::vector<int>> adjacency);
  // Element e is edge e; independent iff the edges form a forest.
  static FeasibilitySystem Graphic(std::vector<std::pair<int, int>> edges);
  // The listed family, which must contain the empty set and be downward
  // closed. Matroid-ness is verified exhaustively.
  static FeasibilitySystem Explicit(int ground_size, std::vector<ElementSet> sets);

  FeasibilityKind kind() const { return kind_; }
  int universe_size() const { return universe_; }
  ElementSet ground_set() const { return ground_; }
  bool is_matroid() const { return is_matroid_; }

  // Throws DomainError if `subset` leaves the ground set.
  bool IsIndependent(ElementSet subset) const;

  // Size of a largest independent subset. Matroids only.
  int Rank(ElementSet subset) const;
  int Rank() const { return Rank(ground_); }

  // Max-weight independent set among elements of `within` (the whole ground
  // set by default). Matroids use greedy in order of decreasing weight, ties
  // by `tie_break`; other systems enumerate the family and prefer, among
  // equal weights, the set holding the highest-priority element of the
  // symmetric difference. Greedy produces the same set on matroids.
  // `weights` is indexed by element id.
  Basis MaxWeightBasis(std::span<const Rational> weights, const TieBreak& tie_break,
                       BasisMode mode = BasisMode::kPositiveOnly) const;
  Basis MaxWeightBasis(std::span<const Rational> weights, const TieBreak& tie_break,
                       BasisMode mode, ElementSet within) const;

  // True if `set` is independent and as large as the rank.
  bool IsBasis(ElementSet set) const;

  // Returns y in b2 \ b with b - x + y and b2 - y + x both bases; the first
  // such y in tie-break order.
  int StrongBasisExchange(ElementSet b, ElementSet b2, int x, const TieBreak& tie_break) const;

  // Bijection g: b1 \ b2 -> b2 \ b1 with b2 - g(e) + e independent for every e.
  std::map<int, int> ExchangeBijection(ElementSet b1, ElementSet b2,
                                       const TieBreak& tie_break) const;

  // Feasible sets are the feasible subsets of `keep`.
  FeasibilitySystem Restriction(ElementSet keep) const;
  // S is independent iff S + `contracted` is independent in this system.
  // `contracted` must be independent.
  FeasibilitySystem Contraction(ElementSet contracted) const;

  // Replays the inductive exchange construction: W is scanned in tie-break
  // order; step i pairs a_i with b_i via strong exchange, then consumes two
  // coins (a_i in Z, b_i in Z). Requires disjoint bases of equal size and
  // exactly 2|W| coins.
  ExchangeWalkResult CoupledExchangeWalk(ElementSet w, ElementSet wp,
                                         const std::vector<bool>& coin_flips,
                                         const TieBreak& tie_break) const;

  // Every independent subset of the ground set, in ascending bitmask order.
  std::vector<ElementSet> FeasibleSets() const;

  // Parameters, for serialization.
  int uniform_k() const { return k_; }
  const std::vector<ElementSet>& blocks() const { return blocks_; }
  const std::vector<int>& capacities() const { return capacities_; }
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<ElementSet>& explicit_sets() const { return family_; }

  std::string Describe() const;

 private:
  FeasibilitySystem() = default;

  bool OracleIndependent(ElementSet set) const;
  void CheckInGround(ElementSet subset, const char* what) const;
  void VerifyExplicitFamily();

  FeasibilityKind kind_ = FeasibilityKind::kUniform;
  int universe_ = 0;
  ElementSet ground_;
  ElementSet contracted_;
  bool is_matroid_ = true;

  int k_ = 0;
  std::vector<ElementSet> blocks_;
  std::vector<int> capacities_;
  std::vector<std::vector<int>> adjacency_;
  int num_right_ = 0;
  std::vector<std::pair<int, int>> edges_;
  int num_vertices_ = 0;
  // Sorted by bitmask for binary search.
  std::vector<ElementSet> family_;
};

}  // namespace ivlab

#endif  // IVLAB_FEASIBILITY_H_
