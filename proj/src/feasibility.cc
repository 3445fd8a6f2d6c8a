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

#include "ivlab/feasibility.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ivlab/bipartite_matching.h"
#include "ivlab/errors.h"

namespace ivlab {

TieBreak::TieBreak(std::vector<int> order) : order_(std::move(order)) {
  position_.assign(order_.size(), -1);
  for (size_t pos = 0; pos < order_.size(); ++pos) {
    int e = order_[pos];
    if (e < 0 || static_cast<size_t>(e) >= order_.size() || position_[static_cast<size_t>(e)] >= 0) {
      throw DomainError("tie-break order must be a permutation of 0..n-1");
    }
    position_[static_cast<size_t>(e)] = static_cast<int>(pos);
  }
}

std::vector<int> TieBreak::Sorted(ElementSet s) const {
  std::vector<int> out = s.ToVector();
  if (!order_.empty()) {
    std::sort(out.begin(), out.end(), [this](int a, int b) { return Before(a, b); });
  }
  return out;
}

bool TieBreak::PrefersSet(ElementSet a, ElementSet b) const {
  ElementSet diff = (a - b) | (b - a);
  if (diff.Empty()) return false;
  int best = -1;
  for (int e : diff.ToVector()) {
    if (best < 0 || Before(e, best)) best = e;
  }
  return a.Contains(best);
}

std::string KindName(FeasibilityKind kind) {
  switch (kind) {
    case FeasibilityKind::kUniform:
      return "uniform";
    case FeasibilityKind::kPartition:
      return "partition";
    case FeasibilityKind::kTransversal:
      return "transversal";
    case FeasibilityKind::kGraphic:
      return "graphic";
    case FeasibilityKind::kExplicit:
      return "explicit";
  }
  return "unknown";
}

namespace {

void CheckUniverse(int size) {
  if (size < 0 || size > kMaxElements) {
    throw DomainError("ground set size must be in [0, 64]");
  }
}

int Find(std::vector<int>& parent, int x) {
  while (parent[static_cast<size_t>(x)] != x) {
    parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
    x = parent[static_cast<size_t>(x)];
  }
  return x;
}

}  // namespace

FeasibilitySystem FeasibilitySystem::Uniform(int ground_size, int k) {
  CheckUniverse(ground_size);
  if (k < 0) throw DomainError("uniform matroid needs k >= 0");
  FeasibilitySystem f;
  f.kind_ = FeasibilityKind::kUniform;
  f.universe_ = ground_size;
  f.ground_ = ElementSet::Range(ground_size);
  f.k_ = k;
  return f;
}

FeasibilitySystem FeasibilitySystem::Partition(int ground_size,
                                               std::vector<std::vector<int>> blocks,
                                               std::vector<int> capacities) {
  CheckUniverse(ground_size);
  if (blocks.size() != capacities.size()) {
    throw DomainError("partition: one capacity per block required");
  }
  FeasibilitySystem f;
  f.kind_ = FeasibilityKind::kPartition;
  f.universe_ = ground_size;
  f.ground_ = ElementSet::Range(ground_size);
  ElementSet covered;
  for (size_t b = 0; b < blocks.size(); ++b) {
    ElementSet block;
    for (int e : blocks[b]) {
      if (e < 0 || e >= ground_size) throw DomainError("partition: element out of range");
      if (covered.Contains(e)) throw DomainError("partition: blocks overlap");
      covered.Insert(e);
      block.Insert(e);
    }
    if (capacities[b] < 0) throw DomainError("partition: negative capacity");
    f.blocks_.push_back(block);
  }
  if (covered != f.ground_) throw DomainError("partition: blocks must cover the ground set");
  f.capacities_ = std::move(capacities);
  return f;
}

FeasibilitySystem FeasibilitySystem::Transversal(std::vector<std::vector<int>> adjacency) {
  CheckUniverse(static_cast<int>(adjacency.size()));
  FeasibilitySystem f;
  f.kind_ = FeasibilityKind::kTransversal;
  f.universe_ = static_cast<int>(adjacency.size());
  f.ground_ = ElementSet::Range(f.universe_);
  for (const auto& row : adjacency) {
    for (int v : row) {
      if (v < 0) throw DomainError("transversal: negative right vertex");
      f.num_right_ = std::max(f.num_right_, v + 1);
    }
  }
  f.adjacency_ = std::move(adjacency);
  return f;
}

FeasibilitySystem FeasibilitySystem::Graphic(std::vector<std::pair<int, int>> edges) {
  CheckUniverse(static_cast<int>(edges.size()));
  FeasibilitySystem f;
  f.kind_ = FeasibilityKind::kGraphic;
  f.universe_ = static_cast<int>(edges.size());
  f.ground_ = ElementSet::Range(f.universe_);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0) throw DomainError("graphic: negative vertex");
    f.num_vertices_ = std::max({f.num_vertices_, u + 1, v + 1});
  }
  f.edges_ = std::move(edges);
  return f;
}

FeasibilitySystem FeasibilitySystem::Explicit(int ground_size, std::vector<ElementSet> sets) {
  CheckUniverse(ground_size);
  FeasibilitySystem f;
  f.kind_ = FeasibilityKind::kExplicit;
  f.universe_ = ground_size;
  f.ground_ = ElementSet::Range(ground_size);
  for (ElementSet s : sets) {
    if (!s.IsSubsetOf(f.ground_)) throw DomainError("explicit: set " + s.ToString() + " leaves the ground set");
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  f.family_ = std::move(sets);
  f.VerifyExplicitFamily();
  return f;
}

void FeasibilitySystem::VerifyExplicitFamily() {
  auto contains = [this](ElementSet s) {
    return std::binary_search(family_.begin(), family_.end(), s);
  };
  if (!contains(ElementSet())) throw DomainError("explicit: the empty set must be feasible");
  for (ElementSet s : family_) {
    for (int e : s.ToVector()) {
      if (!contains(s.Without(e))) {
        throw DomainError("explicit: family is not downward closed at " + s.ToString());
      }
    }
  }
  // Exchange axiom; checking |A| = |B| + 1 suffices for a downward-closed
  // family.
  is_matroid_ = true;
  for (ElementSet a : family_) {
    for (ElementSet b : family_) {
      if (a.Size() != b.Size() + 1) continue;
      bool augmentable = false;
      for (int e : (a - b).ToVector()) {
        if (contains(b.With(e))) {
          augmentable = true;
          break;
        }
      }
      if (!augmentable) {
        is_matroid_ = false;
        return;
      }
    }
  }
}

bool FeasibilitySystem::OracleIndependent(ElementSet set) const {
  switch (kind_) {
    case FeasibilityKind::kUniform:
      return set.Size() <= k_;
    case FeasibilityKind::kPartition:
      for (size_t b = 0; b < blocks_.size(); ++b) {
        if ((set & blocks_[b]).Size() > capacities_[b]) return false;
      }
      return true;
    case FeasibilityKind::kTransversal: {
      std::vector<int> elements = set.ToVector();
      std::vector<std::vector<int>> adj;
      adj.reserve(elements.size());
      for (int e : elements) adj.push_back(adjacency_[static_cast<size_t>(e)]);
      auto match = MaxBipartiteMatching(static_cast<int>(elements.size()), num_right_, adj);
      return MatchingSize(match) == static_cast<int>(elements.size());
    }
    case FeasibilityKind::kGraphic: {
      std::vector<int> parent(static_cast<size_t>(num_vertices_));
      std::iota(parent.begin(), parent.end(), 0);
      for (int e : set.ToVector()) {
        auto [u, v] = edges_[static_cast<size_t>(e)];
        int ru = Find(parent, u);
        int rv = Find(parent, v);
        if (ru == rv) return false;
        parent[static_cast<size_t>(ru)] = rv;
      }
      return true;
    }
    case FeasibilityKind::kExplicit:
      return std::binary_search(family_.begin(), family_.end(), set);
  }
  return false;
}

void FeasibilitySystem::CheckInGround(ElementSet subset, const char* what) const {
  if (!subset.IsSubsetOf(ground_)) {
    throw DomainError(std::string(what) + ": " + (subset - ground_).ToString() +
                      " outside ground set " + ground_.ToString());
  }
}

bool FeasibilitySystem::IsIndependent(ElementSet subset) const {
  CheckInGround(subset, "is_independent");
  return OracleIndependent(subset | contracted_);
}

int FeasibilitySystem::Rank(ElementSet subset) const {
  if (!is_matroid_) throw UnsupportedOperation("rank is only defined for matroids");
  CheckInGround(subset, "rank");
  ElementSet current;
  for (int e : subset.ToVector()) {
    if (OracleIndependent(current.With(e) | contracted_)) current.Insert(e);
  }
  return current.Size();
}

bool FeasibilitySystem::IsBasis(ElementSet set) const {
  if (!set.IsSubsetOf(ground_) || !OracleIndependent(set | contracted_)) return false;
  if (is_matroid_) return set.Size() == Rank();
  for (int e : (ground_ - set).ToVector()) {
    if (OracleIndependent(set.With(e) | contracted_)) return false;
  }
  return true;
}

Basis FeasibilitySystem::MaxWeightBasis(std::span<const Rational> weights,
                                        const TieBreak& tie_break, BasisMode mode) const {
  return MaxWeightBasis(weights, tie_break, mode, ground_);
}

Basis FeasibilitySystem::MaxWeightBasis(std::span<const Rational> weights,
                                        const TieBreak& tie_break, BasisMode mode,
                                        ElementSet within) const {
  CheckInGround(within, "max_weight_basis");
  if (weights.size() < static_cast<size_t>(universe_)) {
    throw DomainError("max_weight_basis: a weight is required for every element");
  }
  auto weight_of = [&](int e) -> const Rational& { return weights[static_cast<size_t>(e)]; };

  if (is_matroid_) {
    std::vector<int> order = within.ToVector();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      int c = cmp(weight_of(a), weight_of(b));
      if (c != 0) return c > 0;
      return tie_break.Before(a, b);
    });
    Basis basis;
    for (int e : order) {
      if (mode == BasisMode::kPositiveOnly && sgn(weight_of(e)) <= 0) break;
      if (OracleIndependent(basis.elements.With(e) | contracted_)) {
        basis.elements.Insert(e);
        basis.weight += weight_of(e);
      }
    }
    return basis;
  }

  Basis best;
  bool have_best = false;
  for (ElementSet s : family_) {
    if (!s.IsSubsetOf(within)) continue;
    Rational w = 0;
    bool admissible = true;
    for (int e : s.ToVector()) {
      if (mode == BasisMode::kPositiveOnly && sgn(weight_of(e)) <= 0) admissible = false;
      w += weight_of(e);
    }
    if (!admissible) continue;
    if (mode == BasisMode::kFull) {
      for (int e : (within - s).ToVector()) {
        if (OracleIndependent(s.With(e))) {
          admissible = false;
          break;
        }
      }
      if (!admissible) continue;
    }
    if (!have_best || w > best.weight || (w == best.weight && tie_break.PrefersSet(s, best.elements))) {
      best.elements = s;
      best.weight = w;
      have_best = true;
    }
  }
  return best;
}

int FeasibilitySystem::StrongBasisExchange(ElementSet b, ElementSet b2, int x,
                                           const TieBreak& tie_break) const {
  if (!IsBasis(b) || !IsBasis(b2)) throw PreconditionError("strong_basis_exchange: inputs must be bases");
  if (!b.Contains(x) || b2.Contains(x)) {
    throw PreconditionError("strong_basis_exchange: x must lie in B \\ B2");
  }
  for (int y : tie_break.Sorted(b2 - b)) {
    ElementSet first = b.Without(x).With(y);
    ElementSet second = b2.Without(y).With(x);
    if (IsBasis(first) && IsBasis(second)) return y;
  }
  throw InvariantViolation("strong_basis_exchange: no valid partner for element " +
                           std::to_string(x) + "; the oracle is not a matroid");
}

std::map<int, int> FeasibilitySystem::ExchangeBijection(ElementSet b1, ElementSet b2,
                                                        const TieBreak& tie_break) const {
  if (b1.Size() != b2.Size()) throw PreconditionError("exchange_bijection: sizes differ");
  if (!IsIndependent(b1) || !IsIndependent(b2)) {
    throw PreconditionError("exchange_bijection: inputs must be independent");
  }
  std::vector<int> left = tie_break.Sorted(b1 - b2);
  std::vector<int> right = tie_break.Sorted(b2 - b1);
  std::vector<std::vector<int>> adj(left.size());
  for (size_t u = 0; u < left.size(); ++u) {
    for (size_t v = 0; v < right.size(); ++v) {
      if (IsIndependent(b2.Without(right[v]).With(left[u]))) adj[u].push_back(static_cast<int>(v));
    }
  }
  auto match = MaxBipartiteMatching(static_cast<int>(left.size()), static_cast<int>(right.size()), adj);
  if (MatchingSize(match) != static_cast<int>(left.size())) {
    throw InvariantViolation("exchange_bijection: no perfect matching in the exchange graph");
  }
  std::map<int, int> result;
  for (size_t u = 0; u < left.size(); ++u) result[left[u]] = right[static_cast<size_t>(match[u])];
  return result;
}

FeasibilitySystem FeasibilitySystem::Restriction(ElementSet keep) const {
  CheckInGround(keep, "restriction");
  FeasibilitySystem r = *this;
  r.ground_ = keep;
  if (kind_ == FeasibilityKind::kExplicit) {
    std::erase_if(r.family_, [keep](ElementSet s) { return !s.IsSubsetOf(keep); });
    r.VerifyExplicitFamily();
  }
  return r;
}

FeasibilitySystem FeasibilitySystem::Contraction(ElementSet contracted) const {
  CheckInGround(contracted, "contraction");
  if (!IsIndependent(contracted)) throw PreconditionError("contraction: contracted set must be independent");
  FeasibilitySystem c = *this;
  c.ground_ = ground_ - contracted;
  if (kind_ == FeasibilityKind::kExplicit) {
    std::vector<ElementSet> family;
    for (ElementSet s : family_) {
      if (contracted.IsSubsetOf(s)) family.push_back(s - contracted);
    }
    std::sort(family.begin(), family.end());
    c.family_ = std::move(family);
    c.VerifyExplicitFamily();
  } else {
    c.contracted_ = contracted_ | contracted;
  }
  return c;
}

ExchangeWalkResult FeasibilitySystem::CoupledExchangeWalk(ElementSet w, ElementSet wp,
                                                          const std::vector<bool>& coin_flips,
                                                          const TieBreak& tie_break) const {
  if (!is_matroid_) throw UnsupportedOperation("coupled_exchange_walk requires a matroid");
  if (!(w & wp).Empty() || w.Size() != wp.Size() || !IsBasis(w) || !IsBasis(wp)) {
    throw PreconditionError("coupled_exchange_walk: W and W' must be disjoint bases of equal size");
  }
  if (coin_flips.size() != 2 * static_cast<size_t>(w.Size())) {
    throw PreconditionError("coupled_exchange_walk: need two coin flips per element of W");
  }
  ExchangeWalkResult result;
  ElementSet a = w;
  ElementSet b = wp;
  size_t coin = 0;
  for (int a_i : tie_break.Sorted(w)) {
    int b_i = StrongBasisExchange(a, b, a_i, tie_break);
    result.paired.push_back(b_i);
    if (coin_flips[coin++]) {
      result.admitted.Insert(a_i);
      b = b.Without(b_i).With(a_i);
    } else {
      a = a.Without(a_i).With(b_i);
    }
    if (coin_flips[coin++]) result.admitted.Insert(b_i);
  }
  result.final_set = a;
  return result;
}

std::vector<ElementSet> FeasibilitySystem::FeasibleSets() const {
  if (kind_ == FeasibilityKind::kExplicit) return family_;
  std::vector<ElementSet> out;
  std::vector<int> elements = ground_.ToVector();
  // Depth-first extension; downward closure lets infeasible branches be cut.
  auto extend = [&](auto&& self, ElementSet current, size_t next) -> void {
    out.push_back(current);
    for (size_t i = next; i < elements.size(); ++i) {
      ElementSet grown = current.With(elements[i]);
      if (OracleIndependent(grown | contracted_)) self(self, grown, i + 1);
    }
  };
  extend(extend, ElementSet(), 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string FeasibilitySystem::Describe() const {
  std::ostringstream os;
  os << KindName(kind_);
  switch (kind_) {
    case FeasibilityKind::kUniform:
      os << "(k=" << k_ << ")";
      break;
    case FeasibilityKind::kPartition:
      os << "(";
      for (size_t b = 0; b < blocks_.size(); ++b) {
        os << (b ? ";" : "") << blocks_[b].ToString() << ":" << capacities_[b];
      }
      os << ")";
      break;
    case FeasibilityKind::kTransversal:
      os << "(right=" << num_right_ << ")";
      break;
    case FeasibilityKind::kGraphic:
      os << "(edges=" << edges_.size() << ")";
      break;
    case FeasibilityKind::kExplicit:
      os << "(sets=" << family_.size() << (is_matroid_ ? ",matroid" : ",non-matroid") << ")";
      break;
  }
  os << " on " << ground_.ToString();
  if (!contracted_.Empty()) os << " / " << contracted_.ToString();
  return os.str();
}

}  // namespace ivlab
