#pragma once

// Infima over ontological models, computed on the four deterministic ontic
// states lambda = (X outcome, Y outcome). Any model with outcome-deterministic
// or stochastic responses coarse-grains onto these four states with the same
// statistics and no larger total-variation distances (see coarseGrain), so
// the LPs below attain the infima.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "ncwit/errors.hpp"
#include "ncwit/geometry.hpp"
#include "ncwit/lp.hpp"

namespace ncwit {

inline constexpr std::size_t kOnticStates = 4;
inline constexpr double kNormTol = 1e-9;

using Distribution = std::array<double, kOnticStates>;

enum class Measurement { X, Y };

/// Deterministic response xi(k | lambda, M) on the 4-state ontic space.
struct OnticSpace {
  // lambda index = 2 * xOutcome + yOutcome
  static constexpr int outcome(std::size_t lambda, Measurement m) {
    return m == Measurement::X ? static_cast<int>(lambda / 2) : static_cast<int>(lambda % 2);
  }
  static constexpr double response(int k, std::size_t lambda, Measurement m) {
    return outcome(lambda, m) == k ? 1.0 : 0.0;
  }
  static double probability(int k, const Distribution& mu, Measurement m) {
    double total = 0.0;
    for (std::size_t l = 0; l < kOnticStates; ++l) total += response(k, l, m) * mu[l];
    return total;
  }
  static PrepPoint statistics(const Distribution& mu) {
    return {2.0 * probability(0, mu, Measurement::X) - 1.0, 2.0 * probability(0, mu, Measurement::Y) - 1.0};
  }
};

/// Epistemic states of the four preparations, indexed by Label.
struct EpistemicModel {
  std::array<Distribution, 4> mu{};

  const Distribution& operator[](Label l) const { return mu[index(l)]; }
  Distribution& operator[](Label l) { return mu[index(l)]; }

  bool reproduces(const Scenario& s, double tol = kNormTol) const {
    for (Label l : kLabels) {
      const Distribution& d = mu[index(l)];
      double sum = 0.0;
      for (double v : d) {
        if (v < -tol) return false;
        sum += v;
      }
      if (std::abs(sum - 1.0) > tol) return false;
      const PrepPoint stats = OnticSpace::statistics(d);
      if (std::abs(stats.x - s[l].x) > 2.0 * tol || std::abs(stats.y - s[l].y) > 2.0 * tol) return false;
    }
    return true;
  }
};

inline Distribution mixture(double w, const Distribution& a, const Distribution& b) {
  Distribution out{};
  for (std::size_t l = 0; l < kOnticStates; ++l) out[l] = w * a[l] + (1.0 - w) * b[l];
  return out;
}

inline double tvDistance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("distributions have different supports");
  auto normalized = [](std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
      if (x < -kNormTol) return false;
      s += x;
    }
    return std::abs(s - 1.0) <= kNormTol;
  };
  if (!normalized(a) || !normalized(b)) throw DomainError("distribution is not normalized");
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return 0.5 * total;
}

/// Ontological distinctness (1/2) sum max(mu_a, mu_b).
inline double onticDistinctness(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::max(a[i], b[i]);
  return 0.5 * total;
}

/// Independent-outcome model: X and Y outcomes drawn as a product.
inline Distribution productEpistemic(PrepPoint point) {
  if (!inGbitSquare(point)) throw DomainError("point lies outside [-1,1]^2");
  const double a = probZeroX(point);
  const double b = probZeroY(point);
  return {a * b, a * (1.0 - b), (1.0 - a) * b, (1.0 - a) * (1.0 - b)};
}

/// Mixing weights that define a pair of mixtures:
/// first = wFirst P00 + (1 - wFirst) P11, second = wSecond P01 + (1 - wSecond) P10.
struct MixturePair {
  double wFirst = 0.5;
  double wSecond = 0.5;
};

struct TvOptimum {
  double value = 0.0;
  EpistemicModel model;
};

namespace detail {

// Variable layout: mu_P(lambda) at 4 * index(P) + lambda, then t_lambda at 16 + lambda.
inline constexpr std::size_t kMuVars = 16;

inline std::size_t muVar(Label l, std::size_t lambda) { return 4 * index(l) + lambda; }

inline void addReproduction(LinearProgram& lp, const Scenario& s) {
  const std::size_t n = lp.dimension();
  for (Label l : kLabels) {
    LinearConstraint norm{std::vector<double>(n, 0.0), 1.0};
    LinearConstraint px{std::vector<double>(n, 0.0), probZeroX(s[l])};
    LinearConstraint py{std::vector<double>(n, 0.0), probZeroY(s[l])};
    for (std::size_t lam = 0; lam < kOnticStates; ++lam) {
      norm.coeffs[muVar(l, lam)] = 1.0;
      px.coeffs[muVar(l, lam)] = OnticSpace::response(0, lam, Measurement::X);
      py.coeffs[muVar(l, lam)] = OnticSpace::response(0, lam, Measurement::Y);
    }
    lp.eq.push_back(std::move(norm));
    lp.eq.push_back(std::move(px));
    lp.eq.push_back(std::move(py));
  }
}

// Coefficients of (first - second)(lambda) over the mu variables.
inline std::vector<double> mixtureDifference(std::size_t n, MixturePair w, std::size_t lam) {
  std::vector<double> row(n, 0.0);
  row[muVar(Label::k00, lam)] = w.wFirst;
  row[muVar(Label::k11, lam)] = 1.0 - w.wFirst;
  row[muVar(Label::k01, lam)] = -w.wSecond;
  row[muVar(Label::k10, lam)] = -(1.0 - w.wSecond);
  return row;
}

inline EpistemicModel extractModel(const std::vector<double>& x) {
  EpistemicModel m;
  for (Label l : kLabels) {
    for (std::size_t lam = 0; lam < kOnticStates; ++lam) m[l][lam] = std::max(0.0, x[muVar(l, lam)]);
  }
  return m;
}

}  // namespace detail

/// LP: minimize TV(first, second) over models reproducing the scenario.
inline LinearProgram mixtureTvProgram(const Scenario& s, MixturePair w) {
  constexpr std::size_t n = detail::kMuVars + kOnticStates;
  LinearProgram lp;
  lp.objective.assign(n, 0.0);
  for (std::size_t lam = 0; lam < kOnticStates; ++lam) lp.objective[detail::kMuVars + lam] = 0.5;
  detail::addReproduction(lp, s);
  for (std::size_t lam = 0; lam < kOnticStates; ++lam) {
    // diff - t <= 0 and -diff - t <= 0
    std::vector<double> diff = detail::mixtureDifference(n, w, lam);
    LinearConstraint up{diff, 0.0};
    up.coeffs[detail::kMuVars + lam] = -1.0;
    LinearConstraint down{diff, 0.0};
    for (double& c : down.coeffs) c = -c;
    down.coeffs[detail::kMuVars + lam] = -1.0;
    lp.le.push_back(std::move(up));
    lp.le.push_back(std::move(down));
  }
  return lp;
}

inline TvOptimum minMixtureTv(const Scenario& s, MixturePair w) {
  const LpResult res = solveLp(mixtureTvProgram(s, w));
  if (res.status != LpStatus::Optimal) {
    // Reproduction is always satisfiable and the objective is bounded below by 0.
    throw std::logic_error("mixture TV program did not reach an optimum");
  }
  return {std::max(0.0, res.optimum), detail::extractModel(res.x)};
}

/// min over models of TV(mu_+, mu_-) for the even/odd parity mixtures.
inline TvOptimum minParityTvModel(const Scenario& s) { return minMixtureTv(s, {0.5, 0.5}); }
inline double minParityTv(const Scenario& s) { return minParityTvModel(s).value; }

/// min over models of TV(mu_p, mu_q) for the a posteriori equivalent pair.
inline TvOptimum minPairTvModel(const Scenario& s) {
  const DiagonalCrossing& x = s.crossing();
  return minMixtureTv(s, {x.p, x.q});
}
inline double minPairTv(const Scenario& s) { return minPairTvModel(s).value; }

/// Parity-preservation gap: inf over models of TV(mu_+, mu_-) - d(P_+, P_-).
inline double parityGap(const Scenario& s) { return minParityTv(s) - parityMixtures(s).epsilon; }

/// True iff some model assigns mu_p == mu_q exactly.
inline bool pncFeasible(const Scenario& s) {
  constexpr std::size_t n = detail::kMuVars;
  LinearProgram lp;
  lp.objective.assign(n, 0.0);
  detail::addReproduction(lp, s);
  const DiagonalCrossing& x = s.crossing();
  for (std::size_t lam = 0; lam < kOnticStates; ++lam) {
    lp.eq.push_back({detail::mixtureDifference(n, {x.p, x.q}, lam), 0.0});
  }
  return solveLp(lp).status == LpStatus::Optimal;
}

/// Grid-search oracle for minMixtureTv. Each preparation's feasible family is
/// mu(m) = (m, A - m, B - m, 1 - A - B + m) with A = P(0|X), B = P(0|Y) and
/// m in [max(0, A + B - 1), min(A, B)]. The difference of the two mixtures
/// moves along (1, -1, -1, 1) by the weighted parameter sum, so scanning that
/// one combined coordinate scans every feasible model's objective value.
inline double bruteForceMinMixtureTv(const Scenario& s, MixturePair w, double resolution) {
  if (!(resolution > 0.0) || resolution > 0.1) throw DomainError("resolution must lie in (0, 0.1]");
  struct Family {
    double lo, hi;
    Distribution base;  // mu at m = lo
  };
  auto family = [&](Label l) {
    const double a = probZeroX(s[l]);
    const double b = probZeroY(s[l]);
    const double lo = std::max(0.0, a + b - 1.0);
    const double hi = std::min(a, b);
    return Family{lo, hi, {lo, a - lo, b - lo, 1.0 - a - b + lo}};
  };
  const std::array<double, 4> weight = {w.wFirst, -w.wSecond, -(1.0 - w.wSecond), 1.0 - w.wFirst};
  Distribution baseDiff{};
  double spanLo = 0.0, spanHi = 0.0;
  for (Label l : kLabels) {
    const Family f = family(l);
    const double wt = weight[index(l)];
    for (std::size_t lam = 0; lam < kOnticStates; ++lam) baseDiff[lam] += wt * f.base[lam];
    const double range = f.hi - f.lo;
    (wt >= 0.0 ? spanHi : spanLo) += wt * range;
  }
  static constexpr std::array<double, 4> kShift = {1.0, -1.0, -1.0, 1.0};
  auto objective = [&](double shift) {
    double total = 0.0;
    for (std::size_t lam = 0; lam < kOnticStates; ++lam) total += std::abs(baseDiff[lam] + shift * kShift[lam]);
    return 0.5 * total;
  };
  const auto steps = static_cast<std::size_t>(std::ceil((spanHi - spanLo) / resolution));
  double best = objective(spanLo);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double shift = std::min(spanHi, spanLo + static_cast<double>(k) * resolution);
    best = std::min(best, objective(shift));
  }
  return best;
}

inline double bruteForceMinTv(const Scenario& s, double resolution) {
  return bruteForceMinMixtureTv(s, {0.5, 0.5}, resolution);
}

/// A model on an arbitrary finite ontic space with stochastic responses.
struct FiniteModel {
  std::array<std::vector<double>, 4> mu;  // per preparation, length N
  std::vector<double> responseZeroX;      // xi(0 | lambda, X), length N
  std::vector<double> responseZeroY;

  std::size_t size() const { return responseZeroX.size(); }

  PrepPoint statistics(Label l) const {
    double px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      px += responseZeroX[i] * mu[index(l)][i];
      py += responseZeroY[i] * mu[index(l)][i];
    }
    return {2.0 * px - 1.0, 2.0 * py - 1.0};
  }
};

/// Push each ontic state through the product decomposition of its response
/// pair onto the four deterministic states.
inline EpistemicModel coarseGrain(const FiniteModel& full, const Scenario& s) {
  const std::size_t n = full.size();
  if (full.responseZeroY.size() != n) throw DomainError("response tables differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    auto ok = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
    if (!ok(full.responseZeroX[i]) || !ok(full.responseZeroY[i])) throw DomainError("response outside [0, 1]");
  }
  EpistemicModel out;
  for (Label l : kLabels) {
    const std::vector<double>& mu = full.mu[index(l)];
    if (mu.size() != n) throw DomainError("epistemic state has wrong support size");
    double sum = 0.0;
    for (double v : mu) {
      if (v < -kNormTol) throw DomainError("negative epistemic weight");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kNormTol) throw DomainError("epistemic state is not normalized");
    const PrepPoint stats = full.statistics(l);
    if (std::abs(stats.x - s[l].x) > 2.0 * kNormTol || std::abs(stats.y - s[l].y) > 2.0 * kNormTol) {
      throw DomainError("model does not reproduce preparation " + labelName(l));
    }
    Distribution d{};
    for (std::size_t i = 0; i < n; ++i) {
      const double a = full.responseZeroX[i];
      const double b = full.responseZeroY[i];
      d[0] += mu[i] * a * b;
      d[1] += mu[i] * a * (1.0 - b);
      d[2] += mu[i] * (1.0 - a) * b;
      d[3] += mu[i] * (1.0 - a) * (1.0 - b);
    }
    out[l] = d;
  }
  return out;
}

}  // namespace ncwit
