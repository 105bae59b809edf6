#pragma once

// Noise thresholds, bound curves over the noise parameter, and seeded
// ensembles that check the bounds scenario by scenario.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ncwit/errors.hpp"
#include "ncwit/geometry.hpp"
#include "ncwit/ontology.hpp"
#include "ncwit/witnesses.hpp"

namespace ncwit {

enum class ThresholdKind { Pusey, Marvian, Combined, DepolarizingPusey, DepolarizingCombined };

enum class NoiseModel { Box, Depolarizing };

inline std::string noiseModelName(NoiseModel m) { return m == NoiseModel::Box ? "box" : "depolarizing"; }

/// Bisection for a decreasing sign change: f(lo) > 0 >= f(hi).
inline double bisectRoot(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12) {
  if (!(f(lo) > 0.0) || f(hi) > 0.0) throw std::logic_error("root is not bracketed");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double thresholdRoot(ThresholdKind which) {
  const double marvianEdge = (kSqrt2 - 1.0) / 4.0;
  switch (which) {
    case ThresholdKind::Pusey:
      return bisectRoot(puseyDeltaBound, 0.0, 0.1);
    case ThresholdKind::Marvian:
      return bisectRoot(marvianDeltaBound, 0.0, marvianEdge);
    case ThresholdKind::Combined:
      return bisectRoot([](double d) { return marvianDeltaBound(d) - alphaRatioDeltaBound(d); }, 0.0, 0.05);
    case ThresholdKind::DepolarizingPusey:
      return bisectRoot([](double d) { return depolarizingBounds(d).puseyBound; }, 0.0, 0.1);
    case ThresholdKind::DepolarizingCombined:
      return bisectRoot([](double d) { return marvianDeltaBound(d) - depolarizingBounds(d).alphaRatioBound; }, 0.0,
                        0.05);
  }
  throw std::logic_error("unknown threshold");
}

struct SweepRow {
  double delta = 0.0;
  std::optional<double> puseyBound;
  std::optional<double> marvianBound;
  std::optional<double> alphaRatioBound;
  std::optional<double> alpha3Bound;
  std::optional<double> depolarizingPuseyBound;
  std::optional<double> depolarizingAlphaRatioBound;
  bool puseyViolated = false;
  bool marvianViolated = false;
  bool parityViolated = false;
};

namespace detail {

template <class F>
std::optional<double> tryBound(F&& f) {
  try {
    return f();
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Bound curves on the grid delta_k = deltaMax k / (steps - 1). Verdict flags
/// use the box bounds, or the depolarizing ones for that model.
inline std::vector<SweepRow> sweepCurves(double deltaMax, int steps, NoiseModel model) {
  if (!(deltaMax > 0.0) || deltaMax > 0.12) throw DomainError("deltaMax must lie in (0, 0.12]");
  if (steps < 2) throw DomainError("steps must be at least 2");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    SweepRow row;
    row.delta = deltaMax * k / (steps - 1);
    const double d = row.delta;
    row.puseyBound = detail::tryBound([d] { return puseyDeltaBound(d); });
    row.marvianBound = detail::tryBound([d] { return marvianDeltaBound(d); });
    row.alphaRatioBound = detail::tryBound([d] { return alphaRatioDeltaBound(d); });
    row.alpha3Bound = detail::tryBound([d] { return alpha3DeltaBound(d); });
    if (model == NoiseModel::Depolarizing) {
      row.depolarizingPuseyBound = detail::tryBound([d] { return depolarizingBounds(d).puseyBound; });
      row.depolarizingAlphaRatioBound = detail::tryBound([d] { return depolarizingBounds(d).alphaRatioBound; });
    }
    const std::optional<double> pusey = model == NoiseModel::Box ? row.puseyBound : row.depolarizingPuseyBound;
    const std::optional<double> ratio = model == NoiseModel::Box ? row.alphaRatioBound : row.depolarizingAlphaRatioBound;
    row.puseyViolated = pusey && *pusey > 0.0;
    row.marvianViolated = row.marvianBound && *row.marvianBound > 0.0;
    row.parityViolated = row.marvianBound && ratio && *row.marvianBound > *ratio;
    rows.push_back(row);
  }
  return rows;
}

struct NoiseEnsemble {
  NoiseModel model = NoiseModel::Box;
  double delta = 0.0;
  std::uint64_t seed = 42;
  std::size_t samples = 10000;
};

/// Scenarios for an ensemble: the deterministic extremal configurations first
/// (every combination of box corners, or of the two ends of each radial
/// segment), then `samples` independent random draws.
inline std::vector<Scenario> ensembleScenarios(const NoiseEnsemble& e) {
  if (!(e.delta >= 0.0) || e.delta > 0.12) throw DomainError("ensemble delta must lie in [0, 0.12]");
  std::vector<Scenario> out;
  const double half = 2.0 * e.delta;              // box half-width in coordinates
  const double shrinkMax = 2.0 * kSqrt2 * e.delta;  // largest depolarizing weight
  auto clip = [](PrepPoint p) { return PrepPoint{std::clamp(p.x, -1.0, 1.0), std::clamp(p.y, -1.0, 1.0)}; };

  if (e.model == NoiseModel::Box) {
    static constexpr std::array<PrepPoint, 4> kCorners = {PrepPoint{1, 1}, PrepPoint{1, -1}, PrepPoint{-1, 1},
                                                          PrepPoint{-1, -1}};
    for (unsigned code = 0; code < 256; ++code) {
      std::array<PrepPoint, 4> pts{};
      for (Label l : kLabels) pts[index(l)] = clip(ideal(l) + half * kCorners[(code >> (2 * index(l))) & 3U]);
      out.emplace_back(pts);
    }
  } else {
    for (unsigned code = 0; code < 16; ++code) {
      std::array<PrepPoint, 4> pts{};
      for (Label l : kLabels) pts[index(l)] = (1.0 - (((code >> index(l)) & 1U) ? shrinkMax : 0.0)) * ideal(l);
      out.emplace_back(pts);
    }
  }

  std::mt19937_64 rng(e.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < e.samples; ++i) {
    std::array<PrepPoint, 4> pts{};
    for (Label l : kLabels) {
      if (e.model == NoiseModel::Box) {
        const double dx = (2.0 * unit(rng) - 1.0) * half;
        const double dy = (2.0 * unit(rng) - 1.0) * half;
        pts[index(l)] = clip(ideal(l) + PrepPoint{dx, dy});
      } else {
        pts[index(l)] = (1.0 - unit(rng) * shrinkMax) * ideal(l);
      }
    }
    out.emplace_back(pts);
  }
  return out;
}

/// Pass count and worst margin of one inequality over an ensemble.
/// Margin is (bound side) - (checked side); negative means violated.
struct CheckTally {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  double worstMargin = std::numeric_limits<double>::infinity();
  bool monitorOnly = false;

  void record(double margin, double tol = kVerdictTol) {
    ++total;
    if (margin >= -tol) ++passed;
    worstMargin = std::min(worstMargin, margin);
  }
  void recordFlag(bool ok) { record(ok ? 0.0 : -1.0, 0.0); }
  bool ok() const { return monitorOnly || passed == total; }
};

struct VerificationReport {
  NoiseEnsemble ensemble;
  std::size_t scenarios = 0;
  std::vector<CheckTally> checks;

  bool allPassed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckTally& c) { return c.ok(); });
  }
  const CheckTally* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

namespace detail {

class Tallies {
 public:
  CheckTally& operator[](const std::string& name) {
    for (auto& c : checks_) {
      if (c.name == name) return c;
    }
    checks_.push_back({name});
    return checks_.back();
  }
  std::vector<CheckTally> take() { return std::move(checks_); }

 private:
  std::vector<CheckTally> checks_;
};

}  // namespace detail

/// Check every noise-parameter bound on every scenario of the ensemble.
inline VerificationReport verifyLemmas(const NoiseEnsemble& e) {
  const std::vector<Scenario> scenarios = ensembleScenarios(e);
  const double d = e.delta;
  const bool box = e.model == NoiseModel::Box;
  const bool marvianDefined = d <= (kSqrt2 - 1.0) / 4.0;
  const bool alpha3Defined = 1.0 - 2.0 * kSqrt2 * d - 4.0 * kSqrt3 * d > 0.0;
  detail::Tallies t;
  // fix the report order
  for (const char* name : {"noise_delta", "pusey_bound", "marvian_bound", "alpha_ratio_bound", "alpha3_bound",
                           "r_bound", "epsilon_bound", "data_processing", "gamma_below_pair_tv"}) {
    t[name];
  }
  t["gamma_below_pair_tv"].monitorOnly = true;

  for (const Scenario& sc : scenarios) {
    const DecompositionWeights w = decompositionWeights(sc);
    const ParityMixtures mix = parityMixtures(sc);
    t["noise_delta"].record(d - sc.delta());
    if (box) {
      t["pusey_bound"].record(puseyS(sc, w) - puseyDeltaBound(d));
    } else {
      t["pusey_bound"].record(puseyS(sc, w) - depolarizingBounds(d).puseyBound);
    }
    const double gamma = marvianGamma(sc);
    if (marvianDefined) t["marvian_bound"].record(gamma - marvianDeltaBound(d));
    const Alphas a = alphas(w, mix);
    const double ratio = a.alpha2 / a.alpha1;
    if (box) {
      t["alpha_ratio_bound"].record(alphaRatioDeltaBound(d) - ratio);
      if (alpha3Defined) t["alpha3_bound"].record(alpha3DeltaBound(d) - a.alpha3);
      t["r_bound"].record(rDeltaBound(d) - w.r);
      t["epsilon_bound"].record(2.0 * d - mix.epsilon);
    } else {
      t["alpha_ratio_bound"].record(depolarizingBounds(d).alphaRatioBound - ratio);
      t["r_bound"].record(kSqrt2 * d / (1.0 - 2.0 * kSqrt2 * d) - w.r);
      t["epsilon_bound"].record(d - mix.epsilon);
    }
    const double pairTv = minPairTv(sc);
    t["data_processing"].record(minParityTv(sc) - mix.epsilon);
    t["gamma_below_pair_tv"].record(pairTv - gamma, 1e-6);
  }
  VerificationReport rep{e, scenarios.size(), t.take()};
  // drop checks that never applied (e.g. alpha3 outside its validity region)
  std::erase_if(rep.checks, [](const CheckTally& c) { return c.total == 0; });
  return rep;
}

struct ModelThresholds {
  double pusey = 0.0;
  double marvian = 0.0;
  double combined = 0.0;
};

inline ModelThresholds thresholdsFor(NoiseModel m) {
  if (m == NoiseModel::Box) {
    return {thresholdRoot(ThresholdKind::Pusey), thresholdRoot(ThresholdKind::Marvian),
            thresholdRoot(ThresholdKind::Combined)};
  }
  return {thresholdRoot(ThresholdKind::DepolarizingPusey), thresholdRoot(ThresholdKind::Marvian),
          thresholdRoot(ThresholdKind::DepolarizingCombined)};
}

/// Certify, scenario by scenario, the verdicts the threshold theorems promise
/// at the ensemble's delta.
inline VerificationReport verifyTheoremRegions(const NoiseEnsemble& e) {
  const ModelThresholds th = thresholdsFor(e.model);
  if (!(e.delta < th.marvian)) {
    throw PreconditionError("delta " + std::to_string(e.delta) + " is not below the largest " +
                            noiseModelName(e.model) + " threshold " + std::to_string(th.marvian));
  }
  const bool puseyRegion = e.delta < th.pusey;
  const bool combinedRegion = e.delta < th.combined;
  const std::vector<Scenario> scenarios = ensembleScenarios(e);
  detail::Tallies t;
  if (puseyRegion) t["pusey_violated"];
  t["marvian_witness"];
  if (combinedRegion) {
    t["parity_preservation_violated"];
    t["all_three_criteria"];
  }
  for (const Scenario& sc : scenarios) {
    const bool pusey = puseyOrbitMax(sc) > 0.0;
    const bool marvian = marvianGamma(sc) > 0.0;
    if (puseyRegion) t["pusey_violated"].recordFlag(pusey);
    t["marvian_witness"].recordFlag(marvian);
    if (combinedRegion) {
      const bool parity = parityGap(sc) > kVerdictTol;
      t["parity_preservation_violated"].recordFlag(parity);
      t["all_three_criteria"].recordFlag(pusey && marvian && parity);
    }
  }
  return {e, scenarios.size(), t.take()};
}

}  // namespace ncwit
