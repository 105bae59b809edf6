#pragma once

// Closed-form contextuality witnesses and their noise-parameter bounds.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "ncwit/errors.hpp"
#include "ncwit/geometry.hpp"
#include "ncwit/ontology.hpp"

namespace ncwit {

inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline constexpr double kSqrt3 = std::numbers::sqrt3;
inline constexpr double kVerdictTol = 1e-9;

/// Fixed constants of the bounds for a noise parameter delta.
struct BoundConstants {
  double lDelta = kInvSqrt2;
  double uDelta = kInvSqrt2;
  // Equal mixtures of the guessing-game states, and those states themselves.
  std::array<PrepPoint, 4> qPoints = {PrepPoint{0.5, 0.5}, PrepPoint{0.5, -0.5}, PrepPoint{-0.5, 0.5},
                                      PrepPoint{-0.5, -0.5}};
  std::array<PrepPoint, 4> rPoints = {PrepPoint{1.0, 0.0}, PrepPoint{-1.0, 0.0}, PrepPoint{0.0, 1.0},
                                      PrepPoint{0.0, -1.0}};
  double pGuess = 1.0;
  int dOutcomes = 2;
  int nMeasurements = 2;

  static BoundConstants forDelta(double delta) {
    BoundConstants b;
    b.lDelta = kInvSqrt2 - 2.0 * delta;
    b.uDelta = kInvSqrt2 + 2.0 * delta;
    return b;
  }
};

/// S(x_ij, y_ij); S > 0 violates preparation noncontextuality.
inline double puseyS(const Scenario& s, const DecompositionWeights& w) {
  const PrepPoint a = s[Label::k00], b = s[Label::k01], c = s[Label::k10], d = s[Label::k11];
  return w.p * (a.x + a.y + d.x + d.y) + w.q * (b.x - b.y + c.x - c.y) + (c.y - c.x - d.x - d.y) - 2.0;
}

inline double puseyS(const Scenario& s) { return puseyS(s, decompositionWeights(s)); }

/// A symmetry of the square: optional x<->y swap followed by sign flips.
struct SquareSymmetry {
  bool swap = false;
  double sx = 1.0;
  double sy = 1.0;

  PrepPoint apply(PrepPoint p) const {
    const PrepPoint q = swap ? PrepPoint{p.y, p.x} : p;
    return {sx * q.x, sy * q.y};
  }
};

inline std::array<SquareSymmetry, 8> squareSymmetries() {
  std::array<SquareSymmetry, 8> out{};
  std::size_t k = 0;
  for (bool swap : {false, true}) {
    for (double sx : {1.0, -1.0}) {
      for (double sy : {1.0, -1.0}) out[k++] = {swap, sx, sy};
    }
  }
  return out;
}

/// Image of the scenario under a relabeling of measurement outcomes (sign
/// flips) and of the two measurements (swap). Preparation labels are kept, so
/// both equivalent mixtures and their weights p, q carry over unchanged.
inline Scenario transformed(const Scenario& s, const SquareSymmetry& g) {
  std::array<PrepPoint, 4> pts{};
  for (Label l : kLabels) pts[index(l)] = g.apply(s[l]);
  return Scenario(pts);
}

/// Largest S over the eight inequalities obtained from the representative by
/// measurement relabelings.
inline double puseyOrbitMax(const Scenario& s) {
  double best = -std::numeric_limits<double>::infinity();
  for (const SquareSymmetry& g : squareSymmetries()) best = std::max(best, puseyS(transformed(s, g)));
  return best;
}

inline double puseyDeltaBound(double delta) {
  if (!(delta >= 0.0) || delta >= 1.0 / (2.0 * kSqrt2)) throw DomainError("pusey bound needs 0 <= delta < 1/(2 sqrt2)");
  return 2.0 * kSqrt2 - 2.0 - 16.0 * delta + 32.0 * kSqrt2 * delta * delta;
}

/// Lower bound on the inaccessible information for general (d, n):
/// (P_guess - (1 - (d-1)/d / beta)) / ((d-1) d^(n-1)). An infinite beta gives 0 slack.
inline double marvianGeneralBound(double pGuess, double betaMin, int d, int n) {
  const double invBeta = std::isinf(betaMin) ? 0.0 : 1.0 / betaMin;
  const double dd = static_cast<double>(d);
  return (pGuess - (1.0 - (dd - 1.0) / dd * invBeta)) / ((dd - 1.0) * std::pow(dd, n - 1));
}

/// beta_min evaluated at the completely mixed preparation:
/// max over Q_ij of 1/u*, with Q = (1 - u*) E(Q) and E(Q) the exit point of
/// the ray from the origin through Q in hull({P_ij} U R). Infinite when some
/// Q_ij is on or outside the hull boundary.
inline double betaMinNumeric(const Scenario& s) {
  const BoundConstants k;
  std::vector<PrepPoint> verts(s.points().begin(), s.points().end());
  verts.insert(verts.end(), k.rPoints.begin(), k.rPoints.end());
  double beta = 0.0;
  for (const PrepPoint& q : k.qPoints) {
    const PrepPoint exit = rayPolytopeExit({0.0, 0.0}, q, verts);
    const double u = 1.0 - norm(q) / norm(exit);
    if (u <= kGeomTol) return std::numeric_limits<double>::infinity();
    beta = std::max(beta, 1.0 / u);
  }
  return beta;
}

/// gamma = (1/4) / beta_min; reported as 0 when beta_min is unbounded.
inline double marvianGamma(const Scenario& s) {
  const BoundConstants k;
  return marvianGeneralBound(k.pGuess, betaMinNumeric(s), k.dOutcomes, k.nMeasurements);
}

inline double marvianDeltaBound(double delta) {
  const double edge = (kSqrt2 - 1.0) / 4.0;
  if (!(delta >= 0.0) || delta > edge) throw DomainError("marvian bound needs 0 <= delta <= (sqrt2-1)/4");
  const double m = kSqrt2 - 4.0 * delta;
  return (m - 1.0) / (4.0 * m);
}

struct Alphas {
  double alpha1 = 1.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
};

inline Alphas alphas(const DecompositionWeights& w, const ParityMixtures& mix) {
  if (!(w.r < 1.0)) throw DegenerateScenario("common weight r reached 1; alphas undefined");
  const double lever = w.r / (1.0 - w.r);
  return {1.0 / (1.0 - w.r), lever + mix.epsilon, lever - mix.epsilon};
}

inline Alphas alphas(const Scenario& s) { return alphas(decompositionWeights(s), parityMixtures(s)); }

inline double alphaRatioDeltaBound(double delta) {
  if (!(delta >= 0.0) || delta >= 1.0 / (2.0 * kSqrt2)) throw DomainError("alpha ratio bound needs 0 <= delta < 1/(2 sqrt2)");
  return (2.0 * (1.0 + 2.0 * kSqrt3) * delta - 4.0 * kSqrt2 * delta * delta) / (1.0 - 2.0 * kSqrt2 * delta);
}

inline double alpha3DeltaBound(double delta) {
  const double den = 1.0 - 2.0 * kSqrt2 * delta - 4.0 * kSqrt3 * delta;
  if (!(delta >= 0.0) || den <= 0.0) throw DomainError("alpha3 bound needs 1 - 2 sqrt2 delta - 4 sqrt3 delta > 0");
  return 4.0 * kSqrt3 * delta / den;
}

/// Upper bound on r from the box-noise geometry.
inline double rDeltaBound(double delta) {
  const double den = 1.0 - 2.0 * kSqrt2 * delta;
  if (!(delta >= 0.0) || den <= 0.0) throw DomainError("r bound needs delta < 1/(2 sqrt2)");
  return 4.0 * kSqrt3 * delta / den;
}

struct DepolarizingBounds {
  double puseyBound = 0.0;
  double alphaRatioBound = 0.0;
};

/// Bounds for noise that only shrinks each ideal point towards the origin.
inline DepolarizingBounds depolarizingBounds(double delta) {
  if (!(delta >= 0.0) || delta >= 1.0 / (2.0 * kSqrt2)) {
    throw DomainError("depolarizing bounds need 0 <= delta < 1/(2 sqrt2)");
  }
  DepolarizingBounds b;
  b.puseyBound = 2.0 * kSqrt2 - 2.0 - 8.0 * delta + (8.0 * kSqrt2 * delta * delta - 4.0 * delta) / (1.0 - kSqrt2 * delta);
  b.alphaRatioBound = delta + kSqrt2 * delta / (1.0 - 2.0 * kSqrt2 * delta);
  return b;
}

/// Operational distinguishability (1/2) max_M [P(0|a,M) + P(1|b,M)], the
/// maximum running over X, Y and their outcome-relabeled versions.
inline double operationalDistinguishability(PrepPoint a, PrepPoint b) {
  double best = 0.0;
  for (auto [pa, pb] : {std::pair{probZeroX(a), probZeroX(b)}, std::pair{probZeroY(a), probZeroY(b)}}) {
    best = std::max({best, pa + (1.0 - pb), (1.0 - pa) + pb});
  }
  return 0.5 * best;
}

struct Verdicts {
  bool puseyViolated = false;
  bool marvianWitness = false;
  bool parityPreservationViolated = false;
  // Antecedents of the two implications linking gamma and the parity gap.
  bool gammaExceedsAlphaRatio = false;
  bool gapExceedsAlpha3 = false;
};

struct WitnessReport {
  double delta = 0.0;
  double s = 0.0;
  double sOrbitMax = 0.0;
  double betaMin = 0.0;
  double gamma = 0.0;
  std::optional<Alphas> alpha;
  double epsilon = 0.0;
  double sO = 0.5;
  double minParityTv = 0.0;
  double dMin = 0.0;
  double minPairTv = 0.0;
  bool pncFeasible = true;
  Verdicts verdicts;
};

inline WitnessReport fullReport(const Scenario& sc) {
  const DecompositionWeights w = decompositionWeights(sc);
  const ParityMixtures mix = parityMixtures(sc);
  WitnessReport rep;
  rep.delta = sc.delta();
  rep.s = puseyS(sc, w);
  rep.sOrbitMax = puseyOrbitMax(sc);
  rep.betaMin = betaMinNumeric(sc);
  rep.gamma = marvianGamma(sc);
  if (w.r < 1.0) rep.alpha = alphas(w, mix);
  rep.epsilon = mix.epsilon;
  rep.sO = operationalDistinguishability(mix.pPlus, mix.pMinus);
  rep.minParityTv = minParityTv(sc);
  rep.dMin = rep.minParityTv - mix.epsilon;
  rep.minPairTv = minPairTv(sc);
  rep.pncFeasible = pncFeasible(sc);

  rep.verdicts.puseyViolated = rep.sOrbitMax > 0.0;
  rep.verdicts.marvianWitness = rep.gamma > 0.0;
  rep.verdicts.parityPreservationViolated = rep.dMin > kVerdictTol;
  if (rep.alpha) {
    rep.verdicts.gammaExceedsAlphaRatio = rep.gamma > rep.alpha->alpha2 / rep.alpha->alpha1;
    rep.verdicts.gapExceedsAlpha3 = rep.dMin > rep.alpha->alpha3;
  }
  return rep;
}

}  // namespace ncwit
