#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ertrust/graph.hpp"
#include "ertrust/reputation.hpp"

using namespace ertrust;

namespace {

/// Stationary vector of the damped random walk, built densely from the edge
/// list and solved as a linear system with the normalization row.
Eigen::VectorXd dense_stationary(std::size_t n, const std::vector<WeightedEdge>& edges, double d) {
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(N, N); // W(to, from)
  for (const auto& e : edges) W(e.to, e.from) += e.weight;
  Eigen::MatrixXd A(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    const double out = W.col(i).sum();
    for (Eigen::Index j = 0; j < N; ++j)
      A(j, i) = out > 0.0 ? (1.0 - d) / N + d * W(j, i) / out : 1.0 / N;
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(N, N) - A;
  M.row(N - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
  rhs(N - 1) = 1.0;
  return M.fullPivLu().solve(rhs);
}

std::vector<WeightedEdge> random_edges(std::size_t n, double density, std::mt19937_64& gen) {
  std::bernoulli_distribution keep(density);
  std::uniform_real_distribution<double> w(0.01, 1.0);
  std::vector<WeightedEdge> edges;
  for (UserId i = 0; i < n; ++i)
    for (UserId j = 0; j < n; ++j)
      if (i != j && keep(gen)) edges.push_back({i, j, w(gen)});
  return edges;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

} // namespace

TEST(SplitGraph, ThresholdRouting) {
  ExperienceGraph g(3);
  g.set(0, 1, 0.8);
  g.set(0, 2, 0.2);
  g.set(1, 2, 0.5);
  const auto [pos, neg] = split_graph(g, 0.5);
  ASSERT_EQ(pos.edge_count(), 1u);
  ASSERT_EQ(neg.edge_count(), 1u);
  EXPECT_EQ(pos.edges()[0].to, 1u);
  EXPECT_EQ(pos.edges()[0].weight, 0.8);
  EXPECT_EQ(neg.edges()[0].to, 2u);
  EXPECT_NEAR(neg.edges()[0].weight, 0.8, 1e-15);
}

TEST(WeightedGraph, NormalizesBySourceOutWeight) {
  WeightedGraph g(3, {{0, 1, 0.2}, {0, 2, 0.6}, {1, 2, 0.5}});
  EXPECT_NEAR(g.out_weight(0), 0.8, 1e-15);
  EXPECT_TRUE(g.dangling(2));
  const auto src = g.in_sources(2);
  const auto prob = g.in_probabilities(2);
  ASSERT_EQ(src.size(), 2u);
  for (std::size_t k = 0; k < src.size(); ++k)
    EXPECT_NEAR(prob[k], src[k] == 0 ? 0.75 : 1.0, 1e-15);
}

TEST(WeightedGraph, RejectsBadEdges) {
  EXPECT_THROW(WeightedGraph(2, {{0, 0, 0.5}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph(2, {{0, 2, 0.5}}), std::out_of_range);
  EXPECT_THROW(WeightedGraph(2, {{0, 1, -0.5}}), std::invalid_argument);
}

TEST(PowerIterate, EmptyGraphIsUniform) {
  const auto r = power_iterate(WeightedGraph(4, {}), 0.85, 1e-3, 200);
  for (double x : r.rank) EXPECT_DOUBLE_EQ(x, 0.25);
}

TEST(PowerIterate, SymmetricPair) {
  const auto r = power_iterate(WeightedGraph(2, {{0, 1, 0.7}, {1, 0, 0.7}}), 0.85, 1e-12, 200);
  EXPECT_NEAR(r.rank[0], 0.5, 1e-12);
  EXPECT_NEAR(r.rank[1], 0.5, 1e-12);
}

TEST(PowerIterate, MatchesDenseOracle) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + gen() % 49;
    const auto edges = random_edges(n, 0.15, gen);
    const WeightedGraph g(n, edges);
    const auto r = power_iterate(g, 0.85, 1e-10, 1000, Exec::serial);
    const auto oracle = dense_stationary(n, edges, 0.85);
    for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(r.rank[i], oracle(static_cast<Eigen::Index>(i)), 1e-6);
    EXPECT_NEAR(sum(r.rank), 1.0, 1e-9);
    EXPECT_LT(stationarity_residual(g, 0.85, r.rank), 1e-10);
  }
}

TEST(PowerIterate, DefaultToleranceBoundsResidual) {
  std::mt19937_64 gen(5);
  const auto edges = random_edges(60, 0.1, gen);
  const WeightedGraph g(60, edges);
  const auto r = power_iterate(g, 0.85, 1e-3, 200);
  EXPECT_LT(r.last_change, 1e-3);
  EXPECT_LT(stationarity_residual(g, 0.85, r.rank), 1e-3);
}

TEST(PowerIterate, FixedPointIndependentOfStart) {
  std::mt19937_64 gen(9);
  const auto edges = random_edges(30, 0.2, gen);
  const WeightedGraph g(30, edges);
  std::vector<double> start(30);
  for (std::size_t i = 0; i < start.size(); ++i) start[i] = 1.0 + static_cast<double>(i);
  const double total = sum(start);
  for (double& x : start) x /= total;
  const auto a = power_iterate(g, 0.85, 1e-12, 1000);
  const auto b = power_iterate_from(g, start, 0.85, 1e-12, 1000);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_NEAR(a.rank[i], b.rank[i], 1e-10);
}

TEST(PowerIterate, TransitionIsColumnStochastic) {
  std::mt19937_64 gen(3);
  const std::size_t n = 12;
  const WeightedGraph g(n, random_edges(n, 0.2, gen));
  const auto A = transition_matrix(g, 0.85);
  for (std::size_t i = 0; i < n; ++i) {
    double col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_GT(A[i * n + j], 0.0);
      col += A[i * n + j];
    }
    EXPECT_NEAR(col, 1.0, 1e-14);
  }
}

TEST(PowerIterate, SerialAndParallelAreBitwiseEqual) {
  std::mt19937_64 gen(77);
  const std::size_t n = 500;
  const WeightedGraph g(n, random_edges(n, 0.02, gen));
  const auto s = power_iterate(g, 0.85, 1e-9, 500, Exec::serial);
  const auto p = power_iterate(g, 0.85, 1e-9, 500, Exec::parallel);
  EXPECT_EQ(s.iterations, p.iterations);
  EXPECT_EQ(s.rank, p.rank);
}

TEST(PowerIterate, ThrowsWithLastIterateOnNonConvergence) {
  std::mt19937_64 gen(1);
  const WeightedGraph g(40, random_edges(40, 0.1, gen));
  try {
    power_iterate(g, 0.85, 1e-15, 2);
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.last().iterations, 2u);
    EXPECT_EQ(e.last().rank.size(), 40u);
  }
}

TEST(PowerIterate, MoreInboundWeightRanksHigher) {
  // 0 and 1 both point at 2; only 0 points at 3.
  const auto r = power_iterate(WeightedGraph(4, {{0, 2, 0.9}, {1, 2, 0.9}, {0, 3, 0.9}}), 0.85, 1e-12, 500);
  EXPECT_GT(r.rank[2], r.rank[3]);
  EXPECT_GT(r.rank[3], r.rank[0]);
}

TEST(ComputeReputation, NoNegativeEdgesGivesUniformNegativeChannel) {
  ExperienceGraph g(4);
  g.set(0, 1, 0.9);
  g.set(1, 2, 0.8);
  const auto rep = compute_reputation(g, {});
  for (double x : rep.neg) EXPECT_DOUBLE_EQ(x, 0.25);
  EXPECT_NEAR(sum(rep.pos), 1.0, 1e-9);
}

TEST(ComputeReputation, NegativeOnlyTargetHasZeroOverall) {
  ExperienceGraph g(3);
  g.set(0, 1, 0.9);
  g.set(1, 0, 0.9);
  g.set(0, 2, 0.1);
  g.set(1, 2, 0.1);
  ReputationParams params;
  params.tol = 1e-12;
  params.max_iter = 1000;
  const auto rep = compute_reputation(g, params);

  const auto pos = dense_stationary(3, {{0, 1, 0.9}, {1, 0, 0.9}}, 0.85);
  const auto neg = dense_stationary(3, {{0, 2, 0.9}, {1, 2, 0.9}}, 0.85);
  for (Eigen::Index i = 0; i < 3; ++i) {
    EXPECT_NEAR(rep.pos[i], pos(i), 1e-9);
    EXPECT_NEAR(rep.neg[i], neg(i), 1e-9);
  }
  EXPECT_GT(rep.neg[2], rep.pos[2]);
  EXPECT_EQ(rep.overall[2], 0.0);
  EXPECT_GT(rep.overall[0], 0.0);
}

TEST(ComputeReputation, SingleUser) {
  const auto rep = compute_reputation(ExperienceGraph(1), {});
  ASSERT_EQ(rep.size(), 1u);
  EXPECT_EQ(rep.pos[0], 1.0);
  EXPECT_EQ(rep.neg[0], 1.0);
  EXPECT_EQ(rep.overall[0], 0.0);
}

TEST(ComputeReputation, OverallIsClampedDifference) {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  ExperienceGraph g(40);
  for (UserId i = 0; i < 40; ++i)
    for (UserId j = 0; j < 40; ++j)
      if (i != j && gen() % 8 == 0) g.set(i, j, w(gen));
  const auto rep = compute_reputation(g, {});
  for (std::size_t i = 0; i < 40; ++i) EXPECT_EQ(rep.overall[i], std::max(0.0, rep.pos[i] - rep.neg[i]));
  EXPECT_LE(rep.iterations_pos, 60u);
  EXPECT_LE(rep.iterations_neg, 60u);
}
