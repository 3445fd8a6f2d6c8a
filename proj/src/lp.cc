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

#include "ivlab/lp.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "ivlab/errors.h"

namespace ivlab {

std::string StatusName(LPStatus status) {
  switch (status) {
    case LPStatus::kOptimal:
      return "optimal";
    case LPStatus::kInfeasible:
      return "infeasible";
    case LPStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr int kDegenerateRunBeforeBland = 50;
constexpr double kPivotEpsilon = 1e-9;
constexpr double kDropEpsilon = 1e-13;

enum class ColumnKind { kStructural, kSlack, kSurplus, kArtificial };

// max c.x, A x (<=, =, >=) b with b >= 0, plus one slack or surplus column
// per inequality and an artificial for each row without a starting column.
struct StandardForm {
  int rows = 0;
  int structural = 0;
  std::vector<std::vector<std::pair<int, Rational>>> columns;
  std::vector<ColumnKind> kind;
  std::vector<int> owner;  // row of a slack, surplus or artificial column
  std::vector<Rational> cost;
  std::vector<Rational> rhs;
  std::vector<int> sign;  // -1 when the row was negated
  std::vector<RowSense> sense;
  std::vector<int> start_basis;
  bool has_artificial = false;

  int AddColumn(ColumnKind k, int row, const Rational& coef) {
    columns.push_back({{row, coef}});
    kind.push_back(k);
    owner.push_back(row);
    cost.push_back(0);
    return static_cast<int>(columns.size()) - 1;
  }
};

StandardForm Standardize(const LinearProgram& lp) {
  StandardForm sf;
  sf.rows = static_cast<int>(lp.constraints.size());
  sf.structural = lp.num_vars();
  sf.columns.resize(static_cast<size_t>(sf.structural));
  sf.kind.assign(static_cast<size_t>(sf.structural), ColumnKind::kStructural);
  sf.owner.assign(static_cast<size_t>(sf.structural), -1);
  sf.cost = lp.objective;
  for (int r = 0; r < sf.rows; ++r) {
    const LinearConstraint& c = lp.constraints[static_cast<size_t>(r)];
    int sign = sgn(c.rhs) < 0 ? -1 : 1;
    RowSense sense = c.sense;
    if (sign < 0 && sense != RowSense::kEqual) {
      sense = sense == RowSense::kLessEqual ? RowSense::kGreaterEqual : RowSense::kLessEqual;
    }
    if (sense == RowSense::kGreaterEqual && sgn(c.rhs) == 0) {
      sign = -sign;
      sense = RowSense::kLessEqual;
    }
    std::map<int, Rational> merged;
    for (const LinearTerm& t : c.terms) {
      if (t.var < 0 || t.var >= sf.structural) throw DomainError("LP term refers to an unknown variable");
      merged[t.var] += t.coef;
    }
    for (auto& [var, coef] : merged) {
      if (sgn(coef) != 0) sf.columns[static_cast<size_t>(var)].push_back({r, sign * coef});
    }
    sf.rhs.push_back(sign * c.rhs);
    sf.sign.push_back(sign);
    sf.sense.push_back(sense);
  }
  sf.start_basis.assign(static_cast<size_t>(sf.rows), -1);
  for (int r = 0; r < sf.rows; ++r) {
    if (sf.sense[static_cast<size_t>(r)] == RowSense::kLessEqual) {
      sf.start_basis[static_cast<size_t>(r)] = sf.AddColumn(ColumnKind::kSlack, r, 1);
    } else if (sf.sense[static_cast<size_t>(r)] == RowSense::kGreaterEqual) {
      sf.AddColumn(ColumnKind::kSurplus, r, -1);
    }
  }
  // A structural column with a single positive entry can start basic in its row.
  for (int j = 0; j < sf.structural; ++j) {
    const auto& col = sf.columns[static_cast<size_t>(j)];
    if (col.size() != 1 || sgn(col.front().second) <= 0) continue;
    int r = col.front().first;
    if (sf.start_basis[static_cast<size_t>(r)] < 0) sf.start_basis[static_cast<size_t>(r)] = j;
  }
  for (int r = 0; r < sf.rows; ++r) {
    if (sf.start_basis[static_cast<size_t>(r)] < 0) {
      sf.start_basis[static_cast<size_t>(r)] = sf.AddColumn(ColumnKind::kArtificial, r, 1);
      sf.has_artificial = true;
    }
  }
  return sf;
}

template <class T>
struct Arith;

template <>
struct Arith<double> {
  static double From(const Rational& q) { return q.get_d(); }
  static bool Positive(double x) { return x > kPivotEpsilon; }
  static bool Zero(double x) { return std::fabs(x) <= kPivotEpsilon; }
  static void Clean(double& x) {
    if (std::fabs(x) < kDropEpsilon) x = 0;
  }
  static bool IsExactZero(double x) { return x == 0; }
};

template <>
struct Arith<Rational> {
  static Rational From(const Rational& q) { return q; }
  static bool Positive(const Rational& x) { return sgn(x) > 0; }
  static bool Zero(const Rational& x) { return sgn(x) == 0; }
  static void Clean(Rational&) {}
  static bool IsExactZero(const Rational& x) { return sgn(x) == 0; }
};

template <class T>
class DenseSimplex {
 public:
  DenseSimplex(const StandardForm& sf, size_t max_pivots)
      : sf_(sf), m_(sf.rows), n_(static_cast<int>(sf.columns.size())), max_pivots_(max_pivots) {
    a_.assign(static_cast<size_t>(m_), std::vector<T>(static_cast<size_t>(n_), T(0)));
    b_.resize(static_cast<size_t>(m_));
    for (int j = 0; j < n_; ++j) {
      for (const auto& [r, coef] : sf.columns[static_cast<size_t>(j)]) {
        a_[static_cast<size_t>(r)][static_cast<size_t>(j)] = Arith<T>::From(coef);
      }
    }
    for (int r = 0; r < m_; ++r) b_[static_cast<size_t>(r)] = Arith<T>::From(sf.rhs[static_cast<size_t>(r)]);
    basis_ = sf.start_basis;
    // Starting columns are unit columns up to scale.
    for (int r = 0; r < m_; ++r) {
      T pivot = a_[static_cast<size_t>(r)][static_cast<size_t>(basis_[static_cast<size_t>(r)])];
      if (pivot != T(1)) {
        for (auto& x : a_[static_cast<size_t>(r)]) x /= pivot;
        b_[static_cast<size_t>(r)] /= pivot;
      }
    }
    allowed_.assign(static_cast<size_t>(n_), 1);
  }

  LPStatus Solve() {
    if (sf_.has_artificial) {
      std::vector<T> phase1(static_cast<size_t>(n_), T(0));
      for (int j = 0; j < n_; ++j) {
        if (sf_.kind[static_cast<size_t>(j)] == ColumnKind::kArtificial) phase1[static_cast<size_t>(j)] = T(-1);
      }
      LPStatus s = Optimize(phase1);
      if (s != LPStatus::kOptimal) throw InvariantViolation("phase one of the simplex cannot be unbounded");
      T infeasibility = T(0);
      for (int r = 0; r < m_; ++r) {
        if (sf_.kind[static_cast<size_t>(basis_[static_cast<size_t>(r)])] == ColumnKind::kArtificial) {
          infeasibility += b_[static_cast<size_t>(r)];
        }
      }
      if (Arith<T>::Positive(infeasibility)) return LPStatus::kInfeasible;
      for (int j = 0; j < n_; ++j) {
        if (sf_.kind[static_cast<size_t>(j)] == ColumnKind::kArtificial) allowed_[static_cast<size_t>(j)] = 0;
      }
      DriveOutArtificials();
    }
    std::vector<T> phase2(static_cast<size_t>(n_), T(0));
    for (int j = 0; j < sf_.structural; ++j) phase2[static_cast<size_t>(j)] = Arith<T>::From(sf_.cost[static_cast<size_t>(j)]);
    return Optimize(phase2);
  }

  const std::vector<int>& basis() const { return basis_; }
  size_t pivots() const { return pivots_; }

  std::vector<T> ColumnValues() const {
    std::vector<T> x(static_cast<size_t>(n_), T(0));
    for (int r = 0; r < m_; ++r) x[static_cast<size_t>(basis_[static_cast<size_t>(r)])] = b_[static_cast<size_t>(r)];
    return x;
  }

 private:
  LPStatus Optimize(const std::vector<T>& cost) {
    std::vector<T> d = cost;
    for (int r = 0; r < m_; ++r) {
      const T& cb = cost[static_cast<size_t>(basis_[static_cast<size_t>(r)])];
      if (Arith<T>::IsExactZero(cb)) continue;
      const auto& row = a_[static_cast<size_t>(r)];
      for (int j = 0; j < n_; ++j) {
        if (!Arith<T>::IsExactZero(row[static_cast<size_t>(j)])) d[static_cast<size_t>(j)] -= cb * row[static_cast<size_t>(j)];
      }
    }
    bool bland = false;
    int degenerate_run = 0;
    while (true) {
      int q = -1;
      for (int j = 0; j < n_; ++j) {
        if (!allowed_[static_cast<size_t>(j)] || !Arith<T>::Positive(d[static_cast<size_t>(j)])) continue;
        if (q < 0) {
          q = j;
          if (bland) break;
        } else if (d[static_cast<size_t>(j)] > d[static_cast<size_t>(q)]) {
          q = j;
        }
      }
      if (q < 0) return LPStatus::kOptimal;
      int p = -1;
      T best_ratio = T(0);
      for (int r = 0; r < m_; ++r) {
        const T& arq = a_[static_cast<size_t>(r)][static_cast<size_t>(q)];
        if (!Arith<T>::Positive(arq)) continue;
        T ratio = b_[static_cast<size_t>(r)] / arq;
        if (p < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<size_t>(r)] < basis_[static_cast<size_t>(p)])) {
          p = r;
          best_ratio = ratio;
        }
      }
      if (p < 0) return LPStatus::kUnbounded;
      if (Arith<T>::Zero(b_[static_cast<size_t>(p)])) {
        if (++degenerate_run > kDegenerateRunBeforeBland) bland = true;
      } else {
        degenerate_run = 0;
      }
      Pivot(p, q, d);
    }
  }

  void Pivot(int p, int q, std::vector<T>& d) {
    if (++pivots_ > max_pivots_) throw NumericalError("simplex pivot limit exceeded");
    auto& prow = a_[static_cast<size_t>(p)];
    T inv = T(1) / prow[static_cast<size_t>(q)];
    std::vector<int> nz;
    for (int j = 0; j < n_; ++j) {
      if (Arith<T>::IsExactZero(prow[static_cast<size_t>(j)])) continue;
      prow[static_cast<size_t>(j)] *= inv;
      nz.push_back(j);
    }
    b_[static_cast<size_t>(p)] *= inv;
    prow[static_cast<size_t>(q)] = T(1);
    auto eliminate = [&](std::vector<T>& row, T* rhs) {
      T f = row[static_cast<size_t>(q)];
      if (Arith<T>::IsExactZero(f)) return;
      for (int j : nz) {
        T& x = row[static_cast<size_t>(j)];
        x -= f * prow[static_cast<size_t>(j)];
        Arith<T>::Clean(x);
      }
      row[static_cast<size_t>(q)] = T(0);
      if (rhs != nullptr) {
        *rhs -= f * b_[static_cast<size_t>(p)];
        Arith<T>::Clean(*rhs);
        if (*rhs < T(0) && Arith<T>::Zero(*rhs)) *rhs = T(0);
      }
    };
    for (int r = 0; r < m_; ++r) {
      if (r != p) eliminate(a_[static_cast<size_t>(r)], &b_[static_cast<size_t>(r)]);
    }
    eliminate(d, nullptr);
    basis_[static_cast<size_t>(p)] = q;
  }

  void DriveOutArtificials() {
    std::vector<T> unused(static_cast<size_t>(n_), T(0));
    for (int r = 0; r < m_; ++r) {
      if (sf_.kind[static_cast<size_t>(basis_[static_cast<size_t>(r)])] != ColumnKind::kArtificial) continue;
      for (int j = 0; j < n_; ++j) {
        if (allowed_[static_cast<size_t>(j)] && !Arith<T>::Zero(a_[static_cast<size_t>(r)][static_cast<size_t>(j)])) {
          Pivot(r, j, unused);
          break;
        }
      }
      // A row with no allowed nonzero is redundant; its artificial stays
      // basic at zero and is never touched again.
    }
  }

  const StandardForm& sf_;
  int m_;
  int n_;
  size_t max_pivots_;
  size_t pivots_ = 0;
  std::vector<std::vector<T>> a_;
  std::vector<T> b_;
  std::vector<int> basis_;
  std::vector<char> allowed_;
};

// Sparse-aware Gaussian elimination of a square rational matrix, kept as a
// list of row operations plus the reduced rows.
class ExactFactor {
 public:
  bool Factor(std::vector<std::vector<Rational>> m) {
    k_ = static_cast<int>(m.size());
    u_ = std::move(m);
    pivot_row_.assign(static_cast<size_t>(k_), -1);
    std::vector<char> used(static_cast<size_t>(k_), 0);
    std::vector<int> count(static_cast<size_t>(k_), 0);
    for (int r = 0; r < k_; ++r) {
      for (const auto& x : u_[static_cast<size_t>(r)]) count[static_cast<size_t>(r)] += sgn(x) != 0;
    }
    for (int c = 0; c < k_; ++c) {
      int best = -1;
      for (int r = 0; r < k_; ++r) {
        if (used[static_cast<size_t>(r)] || sgn(u_[static_cast<size_t>(r)][static_cast<size_t>(c)]) == 0) continue;
        if (best < 0 || count[static_cast<size_t>(r)] < count[static_cast<size_t>(best)]) best = r;
      }
      if (best < 0) return false;
      used[static_cast<size_t>(best)] = 1;
      pivot_row_[static_cast<size_t>(c)] = best;
      const auto& prow = u_[static_cast<size_t>(best)];
      std::vector<int> nz;
      for (int j = c + 1; j < k_; ++j) {
        if (sgn(prow[static_cast<size_t>(j)]) != 0) nz.push_back(j);
      }
      for (int r = 0; r < k_; ++r) {
        auto& row = u_[static_cast<size_t>(r)];
        if (used[static_cast<size_t>(r)] || sgn(row[static_cast<size_t>(c)]) == 0) continue;
        Rational f = row[static_cast<size_t>(c)] / prow[static_cast<size_t>(c)];
        for (int j : nz) {
          bool was_zero = sgn(row[static_cast<size_t>(j)]) == 0;
          row[static_cast<size_t>(j)] -= f * prow[static_cast<size_t>(j)];
          bool is_zero = sgn(row[static_cast<size_t>(j)]) == 0;
          count[static_cast<size_t>(r)] += static_cast<int>(was_zero) - static_cast<int>(is_zero);
        }
        row[static_cast<size_t>(c)] = 0;
        --count[static_cast<size_t>(r)];
        ops_.push_back({r, best, std::move(f)});
      }
    }
    return true;
  }

  // M x = rhs, rhs indexed by row, x by column.
  std::vector<Rational> Solve(std::vector<Rational> rhs) const {
    for (const Op& op : ops_) {
      if (sgn(rhs[static_cast<size_t>(op.source)]) != 0) {
        rhs[static_cast<size_t>(op.target)] -= op.factor * rhs[static_cast<size_t>(op.source)];
      }
    }
    std::vector<Rational> x(static_cast<size_t>(k_));
    for (int c = k_ - 1; c >= 0; --c) {
      int r = pivot_row_[static_cast<size_t>(c)];
      const auto& row = u_[static_cast<size_t>(r)];
      Rational v = rhs[static_cast<size_t>(r)];
      for (int j = c + 1; j < k_; ++j) {
        if (sgn(row[static_cast<size_t>(j)]) != 0) v -= row[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
      }
      x[static_cast<size_t>(c)] = v / row[static_cast<size_t>(c)];
    }
    return x;
  }

  // M^T y = g, g indexed by column, y by row.
  std::vector<Rational> SolveTransposed(const std::vector<Rational>& g) const {
    std::vector<Rational> z(static_cast<size_t>(k_));
    for (int c = 0; c < k_; ++c) {
      int r = pivot_row_[static_cast<size_t>(c)];
      Rational v = g[static_cast<size_t>(c)];
      for (int c2 = 0; c2 < c; ++c2) {
        int r2 = pivot_row_[static_cast<size_t>(c2)];
        const Rational& e = u_[static_cast<size_t>(r2)][static_cast<size_t>(c)];
        if (sgn(e) != 0) v -= e * z[static_cast<size_t>(r2)];
      }
      z[static_cast<size_t>(r)] = v / u_[static_cast<size_t>(r)][static_cast<size_t>(c)];
    }
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
      if (sgn(z[static_cast<size_t>(it->target)]) != 0) {
        z[static_cast<size_t>(it->source)] -= it->factor * z[static_cast<size_t>(it->target)];
      }
    }
    return z;
  }

 private:
  struct Op {
    int target;
    int source;
    Rational factor;
  };
  int k_ = 0;
  std::vector<std::vector<Rational>> u_;
  std::vector<int> pivot_row_;
  std::vector<Op> ops_;
};

// Recomputes the basic solution of `basis` exactly and returns it when it is
// primal and dual feasible, i.e. optimal.
std::optional<LPSolution> Certify(const StandardForm& sf, const std::vector<int>& basis) {
  const int m = sf.rows;
  std::vector<char> slack_basic(static_cast<size_t>(m), 0);
  std::vector<int> structural;
  for (int col : basis) {
    switch (sf.kind[static_cast<size_t>(col)]) {
      case ColumnKind::kStructural:
        structural.push_back(col);
        break;
      case ColumnKind::kSlack:
      case ColumnKind::kSurplus:
        slack_basic[static_cast<size_t>(sf.owner[static_cast<size_t>(col)])] = 1;
        break;
      case ColumnKind::kArtificial:
        return std::nullopt;
    }
  }
  std::sort(structural.begin(), structural.end());
  std::vector<int> rows;
  std::vector<int> row_pos(static_cast<size_t>(m), -1);
  for (int r = 0; r < m; ++r) {
    if (!slack_basic[static_cast<size_t>(r)]) {
      row_pos[static_cast<size_t>(r)] = static_cast<int>(rows.size());
      rows.push_back(r);
    }
  }
  if (rows.size() != structural.size()) return std::nullopt;
  const size_t k = rows.size();
  std::vector<std::vector<Rational>> mat(k, std::vector<Rational>(k));
  for (size_t c = 0; c < k; ++c) {
    for (const auto& [r, coef] : sf.columns[static_cast<size_t>(structural[c])]) {
      int pos = row_pos[static_cast<size_t>(r)];
      if (pos >= 0) mat[static_cast<size_t>(pos)][c] = coef;
    }
  }
  ExactFactor factor;
  if (!factor.Factor(std::move(mat))) return std::nullopt;
  std::vector<Rational> rhs(k);
  for (size_t i = 0; i < k; ++i) rhs[i] = sf.rhs[static_cast<size_t>(rows[i])];
  std::vector<Rational> xb = factor.Solve(std::move(rhs));
  for (const auto& v : xb) {
    if (sgn(v) < 0) return std::nullopt;
  }
  std::vector<Rational> x(static_cast<size_t>(sf.structural));
  for (size_t c = 0; c < k; ++c) x[static_cast<size_t>(structural[c])] = xb[c];

  std::vector<Rational> activity(static_cast<size_t>(m));
  for (int j = 0; j < sf.structural; ++j) {
    if (sgn(x[static_cast<size_t>(j)]) == 0) continue;
    for (const auto& [r, coef] : sf.columns[static_cast<size_t>(j)]) activity[static_cast<size_t>(r)] += coef * x[static_cast<size_t>(j)];
  }
  for (int r = 0; r < m; ++r) {
    const Rational& act = activity[static_cast<size_t>(r)];
    const Rational& b = sf.rhs[static_cast<size_t>(r)];
    switch (sf.sense[static_cast<size_t>(r)]) {
      case RowSense::kLessEqual:
        if (act > b) return std::nullopt;
        break;
      case RowSense::kGreaterEqual:
        if (act < b) return std::nullopt;
        break;
      case RowSense::kEqual:
        if (act != b) return std::nullopt;
        break;
    }
  }

  std::vector<Rational> cb(k);
  for (size_t c = 0; c < k; ++c) cb[c] = sf.cost[static_cast<size_t>(structural[c])];
  std::vector<Rational> yk = factor.SolveTransposed(cb);
  std::vector<Rational> y(static_cast<size_t>(m));
  for (size_t i = 0; i < k; ++i) y[static_cast<size_t>(rows[i])] = yk[i];
  for (int r = 0; r < m; ++r) {
    if (sf.sense[static_cast<size_t>(r)] == RowSense::kLessEqual && sgn(y[static_cast<size_t>(r)]) < 0) return std::nullopt;
    if (sf.sense[static_cast<size_t>(r)] == RowSense::kGreaterEqual && sgn(y[static_cast<size_t>(r)]) > 0) return std::nullopt;
  }
  for (int j = 0; j < sf.structural; ++j) {
    Rational d = sf.cost[static_cast<size_t>(j)];
    for (const auto& [r, coef] : sf.columns[static_cast<size_t>(j)]) {
      if (sgn(y[static_cast<size_t>(r)]) != 0) d -= y[static_cast<size_t>(r)] * coef;
    }
    if (sgn(d) > 0) return std::nullopt;
  }

  LPSolution sol;
  sol.status = LPStatus::kOptimal;
  sol.exact = true;
  for (int j = 0; j < sf.structural; ++j) sol.objective += sf.cost[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
  sol.values = std::move(x);
  sol.duals.resize(static_cast<size_t>(m));
  for (int r = 0; r < m; ++r) sol.duals[static_cast<size_t>(r)] = sf.sign[static_cast<size_t>(r)] * y[static_cast<size_t>(r)];
  return sol;
}

LPSolution SolveExact(const StandardForm& sf, size_t max_pivots) {
  DenseSimplex<Rational> simplex(sf, max_pivots);
  LPSolution sol;
  sol.status = simplex.Solve();
  sol.pivots = simplex.pivots();
  sol.exact = true;
  sol.method = "rational";
  if (sol.status != LPStatus::kOptimal) return sol;
  if (auto certified = Certify(sf, simplex.basis())) {
    certified->pivots = sol.pivots;
    certified->method = sol.method;
    return *certified;
  }
  // Redundant rows can leave an artificial basic at zero; read the tableau.
  std::vector<Rational> cols = simplex.ColumnValues();
  sol.values.assign(cols.begin(), cols.begin() + sf.structural);
  for (int j = 0; j < sf.structural; ++j) sol.objective += sf.cost[static_cast<size_t>(j)] * sol.values[static_cast<size_t>(j)];
  return sol;
}

}  // namespace

Rational MaxViolation(const LinearProgram& lp, const std::vector<Rational>& x) {
  Rational worst = 0;
  for (const auto& v : x) worst = std::max<Rational>(worst, -v);
  for (const auto& c : lp.constraints) {
    Rational act = 0;
    for (const auto& t : c.terms) act += t.coef * x[static_cast<size_t>(t.var)];
    Rational gap = 0;
    switch (c.sense) {
      case RowSense::kLessEqual:
        gap = act - c.rhs;
        break;
      case RowSense::kGreaterEqual:
        gap = c.rhs - act;
        break;
      case RowSense::kEqual:
        gap = abs(act - c.rhs);
        break;
    }
    worst = std::max(worst, gap);
  }
  return worst;
}

LPSolution SolveLP(const LinearProgram& lp, const LPOptions& options) {
  StandardForm sf = Standardize(lp);
  DenseSimplex<double> fast(sf, options.max_pivots);
  LPStatus status;
  try {
    status = fast.Solve();
  } catch (const NumericalError&) {
    if (options.arithmetic == Arithmetic::kDouble) {
      throw NumericalError("double simplex failed to converge; retry with rational arithmetic");
    }
    return SolveExact(sf, options.max_pivots);
  }

  if (options.arithmetic == Arithmetic::kDouble) {
    LPSolution sol;
    sol.status = status;
    sol.pivots = fast.pivots();
    sol.method = "double";
    if (status != LPStatus::kOptimal) return sol;
    std::vector<double> cols = fast.ColumnValues();
    for (int j = 0; j < sf.structural; ++j) {
      double v = std::max(0.0, cols[static_cast<size_t>(j)]);
      sol.values.push_back(RationalFromDouble(v));
      sol.objective += lp.objective[static_cast<size_t>(j)] * sol.values.back();
    }
    if (MaxViolation(lp, sol.values) > RationalFromDouble(options.tolerance)) {
      throw NumericalError("double simplex solution violates constraints beyond tolerance; retry with rational arithmetic");
    }
    return sol;
  }

  if (status == LPStatus::kOptimal) {
    if (auto certified = Certify(sf, fast.basis())) {
      certified->pivots = fast.pivots();
      certified->method = "double+verify";
      return *certified;
    }
  }
  LPSolution exact = SolveExact(sf, options.max_pivots);
  exact.pivots += fast.pivots();
  return exact;
}

}  // namespace ivlab
