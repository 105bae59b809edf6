#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ncwit/witnesses.hpp"
#include "oracles.hpp"

using namespace ncwit;

namespace {

const Scenario kIdeal = Scenario::idealScenario();
const Scenario kOrigin({0, 0}, {0, 0}, {0, 0}, {0, 0});
const Scenario kFig1b(oracle::kFig1b);
const double r2 = std::sqrt(2.0);
const double r3 = std::sqrt(3.0);

}  // namespace

TEST(PuseyS, Examples) {
  EXPECT_NEAR(puseyS(kIdeal), 4.0 / r2 - 2.0, 1e-12);
  EXPECT_NEAR(puseyS(Scenario({1, 1}, {1, -1}, {-1, 1}, {-1, -1})), 2.0, 1e-12);
  EXPECT_NEAR(puseyS(kFig1b), oracle::puseyS(oracle::kFig1b), 1e-12);
  EXPECT_NEAR(puseyS(kFig1b), 0.628, 0.001);
}

TEST(PuseyS, MatchesOracleOnRandomScenarios) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 500; ++i) {
    const auto pts = oracle::boxScenario(rng, 0.1);
    EXPECT_NEAR(puseyS(Scenario(pts)), oracle::puseyS(pts), 1e-10);
  }
}

TEST(PuseyOrbit, IdentityElementIsTheRepresentative) {
  std::mt19937_64 rng(42);
  const SquareSymmetry identity{};
  for (int i = 0; i < 50; ++i) {
    const Scenario s(oracle::boxScenario(rng, 0.08));
    EXPECT_DOUBLE_EQ(puseyS(transformed(s, identity)), puseyS(s));
    EXPECT_GE(puseyOrbitMax(s), puseyS(s));
  }
}

TEST(PuseyOrbit, Examples) {
  EXPECT_NEAR(puseyOrbitMax(kIdeal), 2 * r2 - 2, 1e-12);
  for (const SquareSymmetry& g : squareSymmetries()) {
    EXPECT_NEAR(puseyS(transformed(kOrigin, g)), -2.0, 1e-15);
    EXPECT_LE(puseyS(transformed(kIdeal, g)), 2 * r2 - 2 + 1e-12);
  }
  EXPECT_NEAR(puseyOrbitMax(kOrigin), -2.0, 1e-15);
}

TEST(PuseyOrbit, MembersAreDistinctInequalities) {
  // Moving points and labels together leaves S unchanged, so an orbit built
  // that way would have a single member. Relabeling measurements only does not.
  std::mt19937_64 rng(50);
  const Scenario s(oracle::boxScenario(rng, 0.08));
  std::vector<double> values;
  for (const SquareSymmetry& g : squareSymmetries()) {
    std::array<PrepPoint, 4> moved{};
    for (Label m : kLabels) {
      for (Label k : kLabels) {
        if (norm(ideal(k) - g.apply(ideal(m))) < 1e-12) moved[index(k)] = g.apply(s[m]);
      }
    }
    EXPECT_NEAR(puseyS(Scenario(moved)), puseyS(s), 1e-12);
    values.push_back(puseyS(transformed(s, g)));
  }
  std::sort(values.begin(), values.end());
  EXPECT_EQ(std::adjacent_find(values.begin(), values.end()), values.end());
}

TEST(PuseyOrbit, ReachesTheOtherInequalities) {
  // Reflecting the ideal square through x = 0 breaks the representative but
  // one orbit member still sees the full violation.
  const Scenario mirrored(ideal(Label::k10), ideal(Label::k11), ideal(Label::k00), ideal(Label::k01));
  EXPECT_LT(puseyS(mirrored), 0.0);
  EXPECT_NEAR(puseyOrbitMax(mirrored), 2 * r2 - 2, 1e-12);
}

TEST(PuseyOrbit, PositiveBelowTheThreshold) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 1000; ++i) EXPECT_GT(puseyOrbitMax(Scenario(oracle::boxScenario(rng, 0.05))), 0.0);
}

TEST(PuseyDeltaBound, Examples) {
  EXPECT_NEAR(puseyDeltaBound(0.0), 2 * r2 - 2, 1e-15);
  EXPECT_NEAR(puseyDeltaBound(0.03), 2 * r2 - 2 - 0.48 + 32 * r2 * 0.0009, 1e-15);
  EXPECT_NEAR(puseyDeltaBound(0.03), 0.389, 0.0005);
  EXPECT_NEAR(puseyDeltaBound(0.063), 0.0, 1e-3);
  EXPECT_THROW(puseyDeltaBound(-0.01), DomainError);
  EXPECT_THROW(puseyDeltaBound(1 / (2 * r2)), DomainError);
}

TEST(PuseyDeltaBound, HoldsOnBoxSamples) {
  std::mt19937_64 rng(44);
  for (int k = 0; k <= 12; ++k) {
    const double delta = 0.005 * k;
    for (int i = 0; i < 300; ++i) {
      EXPECT_GE(puseyS(Scenario(oracle::boxScenario(rng, delta))), puseyDeltaBound(delta) - 1e-9);
    }
  }
}

TEST(MarvianGamma, IdealScenario) {
  EXPECT_NEAR(betaMinNumeric(kIdeal), 2 + r2, 1e-12);
  EXPECT_NEAR(marvianGamma(kIdeal), 1 / (4 * (2 + r2)), 1e-12);
  EXPECT_NEAR(marvianGamma(kIdeal), marvianDeltaBound(0.0), 1e-12);
}

TEST(MarvianGamma, ShrunkenSquare) {
  // the 45-degree ray still exits at the shrunken vertex (radius 0.9)
  std::array<PrepPoint, 4> pts{};
  for (Label l : kLabels) pts[index(l)] = 0.9 * ideal(l);
  const Scenario s(pts);
  const double beta = 1 / (1 - oracle::kA / 0.9);
  EXPECT_NEAR(betaMinNumeric(s), beta, 1e-12);
  EXPECT_NEAR(marvianGamma(s), 0.25 / beta, 1e-12);
}

TEST(MarvianGamma, AllOriginIsVacuous) {
  EXPECT_EQ(betaMinNumeric(kOrigin), std::numeric_limits<double>::infinity());
  EXPECT_EQ(marvianGamma(kOrigin), 0.0);
}

TEST(MarvianGamma, GeneralFormulaAtTwoOutcomesTwoMeasurements) {
  for (double beta : {1.5, 3.0, 10.0}) EXPECT_NEAR(marvianGeneralBound(1.0, beta, 2, 2), 0.25 / beta, 1e-15);
  // three outcomes, one measurement: (1 - (1 - 2/3 / beta)) / 2
  EXPECT_NEAR(marvianGeneralBound(1.0, 2.0, 3, 1), (2.0 / 3.0 / 2.0) / 2.0, 1e-15);
}

TEST(MarvianDeltaBound, Examples) {
  EXPECT_NEAR(marvianDeltaBound(0.0), (r2 - 1) / (4 * r2), 1e-15);
  EXPECT_NEAR(marvianDeltaBound(0.007), 0.0696, 1e-4);
  EXPECT_NEAR(marvianDeltaBound((r2 - 1) / 4), 0.0, 1e-15);
  EXPECT_THROW(marvianDeltaBound(0.11), DomainError);
}

TEST(MarvianDeltaBound, HoldsOnBoxSamplesWithTheBetaChain) {
  std::mt19937_64 rng(45);
  for (double delta : {0.0, 0.01, 0.03, 0.05, 0.08, 0.1}) {
    for (int i = 0; i < 300; ++i) {
      const Scenario s(oracle::boxScenario(rng, delta));
      EXPECT_GE(marvianGamma(s), marvianDeltaBound(delta) - 1e-9);
      EXPECT_LE(betaMinNumeric(s), (r2 - 4 * delta) / (r2 - 4 * delta - 1) + 1e-9);
    }
  }
}

TEST(Alphas, Examples) {
  const Alphas a = alphas(kIdeal);
  EXPECT_NEAR(a.alpha1, 1.0, 1e-15);
  EXPECT_NEAR(a.alpha2, 0.0, 1e-15);
  EXPECT_NEAR(a.alpha3, 0.0, 1e-15);

  const Alphas f = alphas(kFig1b);
  const double r = decompositionWeights(kFig1b).r;
  const double eps = oracle::epsilon(oracle::kFig1b);
  EXPECT_NEAR(f.alpha1, 1 / (1 - r), 1e-12);
  EXPECT_NEAR(f.alpha2, r / (1 - r) + eps, 1e-12);
  EXPECT_NEAR(f.alpha3, r / (1 - r) - eps, 1e-12);
  EXPECT_NEAR(f.alpha1, 1.239, 0.001);
  EXPECT_NEAR(f.alpha2, 0.328, 0.001);
  EXPECT_NEAR(f.alpha3, 0.150, 0.001);
}

TEST(Alphas, RejectsUnitWeight) {
  DecompositionWeights w;
  w.r = 1.0;
  EXPECT_THROW(alphas(w, ParityMixtures{}), DegenerateScenario);
}

TEST(AlphaBounds, Examples) {
  EXPECT_EQ(alphaRatioDeltaBound(0.0), 0.0);
  EXPECT_NEAR(alphaRatioDeltaBound(0.007), 0.0635, 5e-5);
  EXPECT_NEAR(alphaRatioDeltaBound(0.05), (0.1 * (1 + 2 * r3) - 4 * r2 * 0.0025) / (1 - 0.1 * r2), 1e-15);
  EXPECT_NEAR(alphaRatioDeltaBound(0.05), 0.5035, 5e-5);
  EXPECT_EQ(alpha3DeltaBound(0.0), 0.0);
  EXPECT_NEAR(alpha3DeltaBound(0.01), 0.0768, 5e-5);
  const double pole = 1 / (2 * r2 + 4 * r3);
  EXPECT_GT(alpha3DeltaBound(pole * 0.999), 100.0);
  EXPECT_THROW(alpha3DeltaBound(pole), DomainError);
  EXPECT_THROW(alphaRatioDeltaBound(0.4), DomainError);
}

TEST(AlphaBounds, HoldOnBoxSamples) {
  std::mt19937_64 rng(46);
  for (double delta : {0.005, 0.01, 0.03, 0.05, 0.08}) {
    for (int i = 0; i < 300; ++i) {
      const Scenario s(oracle::boxScenario(rng, delta));
      const Alphas a = alphas(s);
      EXPECT_LE(a.alpha2 / a.alpha1, alphaRatioDeltaBound(delta) + 1e-9);
      EXPECT_LE(a.alpha3, alpha3DeltaBound(delta) + 1e-9);
    }
  }
}

TEST(DepolarizingBounds, Examples) {
  const DepolarizingBounds zero = depolarizingBounds(0.0);
  EXPECT_NEAR(zero.puseyBound, 2 * r2 - 2, 1e-15);
  EXPECT_EQ(zero.alphaRatioBound, 0.0);
  const DepolarizingBounds b = depolarizingBounds(0.02);
  EXPECT_NEAR(b.alphaRatioBound, 0.0500, 5e-5);
  EXPECT_LT(b.alphaRatioBound, marvianDeltaBound(0.02));
  EXPECT_NEAR(marvianDeltaBound(0.02), 0.0626, 5e-5);
  EXPECT_THROW(depolarizingBounds(0.5), DomainError);
}

TEST(OperationalDistinguishability, ParityPairIdentity) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    const PrepPoint a{u(rng), u(rng)}, b{u(rng), u(rng)};
    EXPECT_NEAR(operationalDistinguishability(a, b), 0.5 * (1 + opDistance(a, b)), 1e-15);
  }
}

TEST(FullReport, IdealScenario) {
  const WitnessReport r = fullReport(kIdeal);
  EXPECT_TRUE(r.verdicts.puseyViolated);
  EXPECT_TRUE(r.verdicts.marvianWitness);
  EXPECT_TRUE(r.verdicts.parityPreservationViolated);
  EXPECT_NEAR(r.dMin, r2 - 1, 1e-8);
  EXPECT_NEAR(r.sO, 0.5 * (1 + r.epsilon), 1e-15);
  EXPECT_FALSE(r.pncFeasible);
}

TEST(FullReport, AllOriginScenario) {
  const WitnessReport r = fullReport(kOrigin);
  EXPECT_FALSE(r.verdicts.puseyViolated);
  EXPECT_FALSE(r.verdicts.marvianWitness);
  EXPECT_FALSE(r.verdicts.parityPreservationViolated);
  EXPECT_NEAR(r.dMin, 0.0, 1e-9);
  EXPECT_TRUE(r.pncFeasible);
}

TEST(FullReport, TheoremRegionSample) {
  std::mt19937_64 rng(48);
  for (int i = 0; i < 200; ++i) {
    const WitnessReport r = fullReport(Scenario(oracle::boxScenario(rng, 0.005)));
    EXPECT_TRUE(r.verdicts.puseyViolated && r.verdicts.marvianWitness && r.verdicts.parityPreservationViolated);
    EXPECT_TRUE(r.verdicts.gammaExceedsAlphaRatio);
  }
}

TEST(FullReport, GammaStaysBelowThePairDistance) {
  std::mt19937_64 rng(49);
  for (double delta : {0.01, 0.05, 0.1}) {
    for (int i = 0; i < 200; ++i) {
      const WitnessReport r = fullReport(Scenario(oracle::boxScenario(rng, delta)));
      EXPECT_LE(r.gamma, r.minPairTv + 1e-6);
    }
  }
}
