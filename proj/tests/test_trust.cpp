#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ertrust/graph.hpp"
#include "ertrust/reputation.hpp"
#include "ertrust/trust.hpp"

using namespace ertrust;

TEST(Trust, WeightedSum) {
  EXPECT_DOUBLE_EQ(trust(0.4, 0.6, {0.5, 0.5}), 0.5);
  EXPECT_EQ(trust(0.0, 0.0, {0.2, 0.8}), 0.0);
  for (double w1 : {0.0, 0.3, 0.5, 1.0})
    EXPECT_NEAR(trust(0.37, 0.37, {w1, 1.0 - w1}), 0.37, 1e-15);
}

TEST(Trust, RejectsWeightsNotSummingToOne) {
  EXPECT_THROW(trust(0.1, 0.1, {0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(trust(0.1, 0.1, {-0.1, 1.1}), std::invalid_argument);
}

TEST(TrustRow, NoEdgesIsConstant) {
  const ExperienceGraph g(5);
  auto rep = ReputationVector::uniform(5);
  rep.overall.assign(5, 0.01);
  const auto row = trust_row(2, g, rep, {0.5, 0.5}, 0.3);
  for (UserId u = 0; u < 5; ++u) {
    if (u == 2)
      EXPECT_EQ(row[u], -std::numeric_limits<double>::infinity());
    else
      EXPECT_DOUBLE_EQ(row[u], 0.5 * 0.01 + 0.5 * 0.3);
  }
}

TEST(TrustRow, MatchesPointwiseTrust) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  const std::size_t n = 60;
  ExperienceGraph g(n);
  for (UserId i = 0; i < n; ++i)
    for (UserId j = 0; j < n; ++j)
      if (i != j && gen() % 5 == 0) g.set(i, j, w(gen));
  const auto rep = compute_reputation(g, {});
  const TrustParams params{0.3, 0.7};
  for (UserId requester : {0u, 17u, 59u}) {
    const auto row = trust_row(requester, g, rep, params, 0.3, Exec::serial);
    const auto par = trust_row(requester, g, rep, params, 0.3, Exec::parallel);
    EXPECT_EQ(row, par);
    for (UserId u = 0; u < n; ++u) {
      if (u == requester) continue;
      const double e = g.experience(requester, u).value_or(0.3);
      EXPECT_DOUBLE_EQ(row[u], trust(rep.overall[u], e, params));
    }
  }
}

TEST(TrustRow, RaisingExperienceRaisesTrust) {
  ExperienceGraph g(4);
  g.set(0, 1, 0.4);
  const auto rep = compute_reputation(g, {});
  const auto before = trust_row(0, g, rep, {}, 0.3);
  g.set(0, 1, 0.6);
  const auto after = trust_row(0, g, rep, {}, 0.3);
  EXPECT_GT(after[1], before[1]);
  EXPECT_EQ(after[2], before[2]);
  EXPECT_EQ(after[3], before[3]);
}

TEST(TrustRow, RejectsUnknownRequester) {
  const ExperienceGraph g(3);
  EXPECT_THROW(trust_row(3, g, ReputationVector::uniform(3), {}, 0.3), std::out_of_range);
  EXPECT_THROW(trust_row(0, g, ReputationVector::uniform(2), {}, 0.3), std::invalid_argument);
}
