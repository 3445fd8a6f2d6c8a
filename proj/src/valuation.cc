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

#include "ivlab/valuation.h"

#include <algorithm>

#include "ivlab/errors.h"

namespace ivlab {

std::string FamilyName(ValuationFamily family) {
  switch (family) {
    case ValuationFamily::kPrivate:
      return "private";
    case ValuationFamily::kWeightedSum:
      return "weighted_sum";
    case ValuationFamily::kAdditive:
      return "additive";
    case ValuationFamily::kConcaveAdditive:
      return "concave_additive";
    case ValuationFamily::kTable:
      return "table";
  }
  return "unknown";
}

ValuationProfile::ValuationProfile(ValuationFamily family, const SignalGrid& grid)
    : family_(family), grid_(grid) {}

void ValuationProfile::Tabulate(const std::vector<std::vector<Rational>>& per_profile) {
  const size_t n = static_cast<size_t>(num_agents());
  if (per_profile.size() != grid_.num_profiles()) {
    throw DomainError("valuation table must cover every grid profile");
  }
  values_.clear();
  values_.reserve(grid_.num_profiles() * n);
  for (const auto& row : per_profile) {
    if (row.size() != n) throw DomainError("valuation table row has the wrong number of agents");
    values_.insert(values_.end(), row.begin(), row.end());
  }
  for (auto& v : values_) v.canonicalize();
  auto violations = CheckMonotone(grid_, values_);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw AssumptionError("valuation is not monotone: agent " + std::to_string(v.agent) +
                          ", coordinate " + std::to_string(v.coordinate) + ": " + v.reason +
                          " (" + std::to_string(violations.size()) + " violations)");
  }
}

void ValuationProfile::CheckTerms() const {
  const size_t n = static_cast<size_t>(num_agents());
  if (terms_.size() != n) throw DomainError("additive terms need one row per agent");
  for (size_t i = 0; i < n; ++i) {
    if (terms_[i].size() != n) throw DomainError("additive terms need one function per agent pair");
    for (size_t j = 0; j < n; ++j) {
      if (terms_[i][j].size() != static_cast<size_t>(grid_.size(static_cast<int>(j)))) {
        throw DomainError("additive term g_" + std::to_string(i) + std::to_string(j) +
                          " must give one value per grid point");
      }
    }
  }
}

ValuationProfile ValuationProfile::Private(const SignalGrid& grid) {
  ValuationProfile vp(ValuationFamily::kPrivate, grid);
  std::vector<std::vector<Rational>> rows(grid.num_profiles());
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    for (int i = 0; i < grid.num_agents(); ++i) rows[flat].push_back(grid.value(i, grid.Coordinate(flat, i)));
  }
  vp.Tabulate(rows);
  return vp;
}

ValuationProfile ValuationProfile::WeightedSum(const SignalGrid& grid, const Rational& beta) {
  if (sgn(beta) < 0 || beta > 1) throw DomainError("weighted_sum: beta must lie in [0, 1]");
  ValuationProfile vp(ValuationFamily::kWeightedSum, grid);
  vp.beta_ = beta;
  vp.beta_.canonicalize();
  std::vector<std::vector<Rational>> rows(grid.num_profiles());
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    Rational total = 0;
    for (int j = 0; j < grid.num_agents(); ++j) total += grid.value(j, grid.Coordinate(flat, j));
    for (int i = 0; i < grid.num_agents(); ++i) {
      const Rational& own = grid.value(i, grid.Coordinate(flat, i));
      rows[flat].push_back(own + beta * (total - own));
    }
  }
  vp.Tabulate(rows);
  return vp;
}

ValuationProfile ValuationProfile::Additive(const SignalGrid& grid, AdditiveTerms terms) {
  ValuationProfile vp(ValuationFamily::kAdditive, grid);
  vp.terms_ = std::move(terms);
  vp.CheckTerms();
  std::vector<std::vector<Rational>> rows(grid.num_profiles());
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    for (int i = 0; i < grid.num_agents(); ++i) {
      Rational total = 0;
      for (int j = 0; j < grid.num_agents(); ++j) {
        total += vp.terms_[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(grid.Coordinate(flat, j))];
      }
      rows[flat].push_back(total);
    }
  }
  vp.Tabulate(rows);
  return vp;
}

ValuationProfile ValuationProfile::ConcaveAdditive(const SignalGrid& grid, AdditiveTerms terms,
                                                   std::vector<std::vector<AffinePiece>> outer) {
  ValuationProfile vp(ValuationFamily::kConcaveAdditive, grid);
  vp.terms_ = std::move(terms);
  vp.CheckTerms();
  if (outer.size() != static_cast<size_t>(grid.num_agents())) {
    throw DomainError("concave_additive: one outer function per agent required");
  }
  for (const auto& pieces : outer) {
    if (pieces.empty()) throw DomainError("concave_additive: outer function needs at least one piece");
  }
  vp.outer_ = std::move(outer);
  std::vector<std::vector<Rational>> rows(grid.num_profiles());
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    for (int i = 0; i < grid.num_agents(); ++i) {
      Rational x = 0;
      for (int j = 0; j < grid.num_agents(); ++j) {
        x += vp.terms_[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(grid.Coordinate(flat, j))];
      }
      const auto& pieces = vp.outer_[static_cast<size_t>(i)];
      Rational best = pieces.front().slope * x + pieces.front().intercept;
      for (const auto& piece : pieces) best = std::min<Rational>(best, piece.slope * x + piece.intercept);
      rows[flat].push_back(best);
    }
  }
  vp.Tabulate(rows);
  return vp;
}

ValuationProfile ValuationProfile::Table(const SignalGrid& grid,
                                         std::vector<std::vector<Rational>> values) {
  ValuationProfile vp(ValuationFamily::kTable, grid);
  vp.Tabulate(values);
  return vp;
}

std::vector<Rational> ValuationProfile::StepFunctionOnGrid(
    const std::vector<Rational>& grid_points, std::vector<std::pair<Rational, Rational>> steps) {
  if (steps.empty()) throw DomainError("step function needs at least one breakpoint");
  std::sort(steps.begin(), steps.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Rational> out;
  for (const auto& x : grid_points) {
    const Rational* value = nullptr;
    for (const auto& [point, v] : steps) {
      if (point <= x) value = &v;
    }
    if (value == nullptr) throw DomainError("step function undefined at grid point " + ToString(x));
    out.push_back(*value);
  }
  return out;
}

const Rational& ValuationProfile::ValueAt(int agent, const std::vector<Rational>& signals) const {
  if (agent < 0 || agent >= num_agents()) throw DomainError("agent out of range");
  return Value(agent, grid_.Flatten(grid_.ProfileOf(signals)));
}

std::vector<MonotonicityViolation> CheckMonotone(const SignalGrid& grid, const std::vector<Rational>& values) {
  std::vector<MonotonicityViolation> out;
  const int n = grid.num_agents();
  auto value = [&](int agent, size_t flat) -> const Rational& {
    return values[flat * static_cast<size_t>(n) + static_cast<size_t>(agent)];
  };
  for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
    for (int i = 0; i < n; ++i) {
      if (sgn(value(i, flat)) < 0) out.push_back({i, i, flat, "negative value"});
      for (int j = 0; j < n; ++j) {
        int k = grid.Coordinate(flat, j);
        if (k + 1 >= grid.size(j)) continue;
        size_t up = grid.Replace(flat, j, k + 1);
        if (i == j && !(value(i, up) > value(i, flat))) {
          out.push_back({i, j, flat, "not strictly increasing in own signal"});
        } else if (i != j && value(i, up) < value(i, flat)) {
          out.push_back({i, j, flat, "decreasing in another agent's signal"});
        }
      }
    }
  }
  return out;
}

std::vector<SingleCrossingViolation> CheckSingleCrossing(const ValuationProfile& vp) {
  std::vector<SingleCrossingViolation> out;
  const SignalGrid& grid = vp.grid();
  const int n = grid.num_agents();
  for (int i = 0; i < n; ++i) {
    for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
      if (grid.Coordinate(flat, i) != 0) continue;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        for (int low = 0; low < grid.size(i); ++low) {
          size_t at_low = grid.Replace(flat, i, low);
          if (vp.Value(i, at_low) < vp.Value(j, at_low)) continue;
          for (int high = low + 1; high < grid.size(i); ++high) {
            size_t at_high = grid.Replace(flat, i, high);
            if (!(vp.Value(i, at_high) > vp.Value(j, at_high))) out.push_back({i, j, at_low, low, high});
          }
        }
      }
    }
  }
  return out;
}

std::vector<CrossEffectViolation> CheckDiminishingCrossEffects(const ValuationProfile& vp) {
  std::vector<CrossEffectViolation> out;
  const SignalGrid& grid = vp.grid();
  const int n = grid.num_agents();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (size_t flat = 0; flat < grid.num_profiles(); ++flat) {
        int si = grid.Coordinate(flat, i);
        int sj = grid.Coordinate(flat, j);
        if (si + 1 >= grid.size(i) || sj + 1 >= grid.size(j)) continue;
        size_t flat_j_up = grid.Replace(flat, j, sj + 1);
        size_t flat_i_up = grid.Replace(flat, i, si + 1);
        size_t flat_both_up = grid.Replace(flat_i_up, j, sj + 1);
        Rational low_diff = vp.Value(i, flat_j_up) - vp.Value(i, flat);
        Rational high_diff = vp.Value(i, flat_both_up) - vp.Value(i, flat_i_up);
        if (high_diff > low_diff) out.push_back({i, j, flat});
      }
    }
  }
  return out;
}

}  // namespace ivlab
