#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ncwit/pom.hpp"
#include "oracles.hpp"

using namespace ncwit;

namespace {

const Scenario kIdeal = Scenario::idealScenario();
const Scenario kOrigin({0, 0}, {0, 0}, {0, 0}, {0, 0});
const Scenario kFig1b(oracle::kFig1b);

}  // namespace

TEST(PomSuccess, Examples) {
  const double c = std::cos(std::numbers::pi / 8);
  EXPECT_NEAR(pomSuccess(kIdeal), c * c, 1e-12);
  EXPECT_DOUBLE_EQ(pomSuccess(kOrigin), 0.5);
  EXPECT_DOUBLE_EQ(pomSuccess(Scenario({1, 1}, {1, -1}, {-1, 1}, {-1, -1})), 1.0);
}

TEST(PomSuccess, DistinguishabilityChainOnBoxSamples) {
  std::mt19937_64 rng(51);
  for (double delta : {0.0, 0.02, 0.05, 0.1}) {
    for (int i = 0; i < 500; ++i) {
      const Scenario s(oracle::boxScenario(rng, delta));
      EXPECT_NEAR(pomSuccess(s), pomSuccessViaDistinguishability(s), 1e-9);
    }
  }
}

TEST(ClassicalBruteForce, Examples) {
  EXPECT_EQ(classicalBruteForce(0.0), 0.75);
  EXPECT_EQ(classicalBruteForce(1.0), 1.0);
  EXPECT_NEAR(classicalBruteForce(0.089), 0.75 + 0.089 / 4, 1e-15);
  EXPECT_NEAR(classicalBruteForce(0.089), 0.7723, 5e-5);
  EXPECT_THROW(classicalBruteForce(-0.1), DomainError);
  EXPECT_THROW(classicalBruteForce(1.1), DomainError);
}

TEST(ClassicalBruteForce, FollowsTheLinearBound) {
  for (int k = 0; k <= 20; ++k) {
    const double eps = 0.05 * k;
    EXPECT_NEAR(classicalBruteForce(eps), 0.75 + eps / 4, 1e-15);
  }
}

TEST(PomAnalysis, Examples) {
  const PomOutcome ideal = pomAnalysis(kIdeal);
  EXPECT_NEAR(ideal.epsilon, 0.0, 1e-15);
  EXPECT_TRUE(ideal.exceedsClassical);
  EXPECT_NEAR(ideal.parityGap, std::sqrt(2.0) - 1, 1e-8);
  EXPECT_TRUE(ideal.consistent);

  const PomOutcome origin = pomAnalysis(kOrigin);
  EXPECT_FALSE(origin.exceedsClassical);
  EXPECT_DOUBLE_EQ(origin.successProbability, 0.5);

  const PomOutcome fig = pomAnalysis(kFig1b);
  EXPECT_NEAR(fig.epsilon, 0.089, 1e-12);
  EXPECT_NEAR(fig.classicalBound, 0.75 + 0.089 / 4, 1e-12);
  EXPECT_TRUE(fig.consistent);
}

TEST(PomAnalysis, ExceedingTheClassicalBoundImpliesAParityGap) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> pick(0.0, 0.12);
  int exceeded = 0;
  for (int i = 0; i < 1000; ++i) {
    const Scenario s(oracle::boxScenario(rng, pick(rng)));
    const PomOutcome o = pomAnalysis(s);
    EXPECT_EQ(o.exceedsClassical, o.successProbability > o.classicalBound + 1e-9);
    if (o.exceedsClassical) {
      ++exceeded;
      EXPECT_GT(o.parityGap, 1e-9);
    }
  }
  EXPECT_GT(exceeded, 0);
}
