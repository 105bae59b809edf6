#pragma once

// Dense two-phase tableau simplex with Bland's rule. Sized for the handful of
// variables and constraints the ontology module builds; not a general solver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ncwit {

struct LinearConstraint {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

/// minimize objective . x  s.t.  eq rows (=), le rows (<=), x >= lower.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> eq;
  std::vector<LinearConstraint> le;
  std::vector<double> lower;  // empty means all zero

  std::size_t dimension() const { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double optimum = 0.0;
  std::vector<double> x;
};

inline constexpr double kLpFeasTol = 1e-9;

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  double& objectiveValue() { return at(rows_, cols_); }  // holds -z

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Bland's rule; returns false when the LP is unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    constexpr double kCostTol = 1e-11;
    constexpr double kPivotTol = 1e-11;
    for (std::size_t iter = 0; iter < 10000; ++iter) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (allowed[c] && cost(c) < -kCostTol) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double v = at(r, enter);
        if (v <= kPivotTol) continue;
        const double ratio = rhs(r) / v;
        if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit reached");
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LpResult solveLp(const LinearProgram& lp) {
  const std::size_t n = lp.dimension();
  auto checkRow = [n](const LinearConstraint& row) {
    if (row.coeffs.size() != n) throw std::invalid_argument("constraint dimension mismatch");
  };
  for (const auto& row : lp.eq) checkRow(row);
  for (const auto& row : lp.le) checkRow(row);
  std::vector<double> lower = lp.lower.empty() ? std::vector<double>(n, 0.0) : lp.lower;
  if (lower.size() != n) throw std::invalid_argument("bounds dimension mismatch");

  const std::size_t mEq = lp.eq.size();
  const std::size_t mLe = lp.le.size();
  const std::size_t m = mEq + mLe;
  // columns: shifted originals | slacks for le rows | artificials
  const std::size_t slack0 = n;
  const std::size_t art0 = n + mLe;
  const std::size_t cols = art0 + m;
  detail::Tableau t(m, cols);

  for (std::size_t r = 0; r < m; ++r) {
    const LinearConstraint& row = r < mEq ? lp.eq[r] : lp.le[r - mEq];
    double b = row.rhs;
    for (std::size_t j = 0; j < n; ++j) b -= row.coeffs[j] * lower[j];
    const double sign = b < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.at(r, j) = sign * row.coeffs[j];
    if (r >= mEq) t.at(r, slack0 + (r - mEq)) = sign;
    t.at(r, art0 + r) = 1.0;
    t.rhs(r) = sign * b;
    t.basis()[r] = art0 + r;
  }

  // Phase 1: minimize the sum of artificials.
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c <= cols; ++c) {
      if (c >= art0 && c < cols) continue;
      t.at(m, c) -= t.at(r, c);
    }
  }
  std::vector<bool> allowed(cols, true);
  t.optimize(allowed);
  if (-t.objectiveValue() > kLpFeasTol) return {LpStatus::Infeasible, 0.0, {}};

  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis()[r] < art0) continue;
    for (std::size_t c = 0; c < art0; ++c) {
      if (std::abs(t.at(r, c)) > 1e-9) {
        t.pivot(r, c);
        break;
      }
    }
  }
  for (std::size_t c = art0; c < cols; ++c) allowed[c] = false;

  // Phase 2 objective row.
  for (std::size_t c = 0; c <= cols; ++c) t.at(m, c) = 0.0;
  for (std::size_t j = 0; j < n; ++j) t.cost(j) = lp.objective[j];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = t.basis()[r];
    const double cb = b < n ? lp.objective[b] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= cols; ++c) t.at(m, c) -= cb * t.at(r, c);
  }
  if (!t.optimize(allowed)) return {LpStatus::Unbounded, -std::numeric_limits<double>::infinity(), {}};

  LpResult out;
  out.status = LpStatus::Optimal;
  out.x = lower;
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = t.basis()[r];
    if (b < n) out.x[b] += t.rhs(r);
  }
  out.optimum = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.optimum += lp.objective[j] * out.x[j];
  return out;
}

}  // namespace ncwit
