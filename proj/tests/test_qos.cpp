#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ertrust/qos.hpp"

using namespace ertrust;

TEST(TaskQod, Mean) {
  const std::vector<double> two{0.8, 0.6};
  EXPECT_DOUBLE_EQ(task_qod(two), 0.7);
  const std::vector<double> one{0.9};
  EXPECT_EQ(task_qod(one), 0.9);
}

TEST(TaskQod, MatchesCompensatedSum) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(200);
  for (auto& x : xs) x = u(gen);
  double sum = 0.0, c = 0.0;
  for (double x : xs) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  EXPECT_NEAR(task_qod(xs), sum / 200.0, 1e-12);
}

TEST(TaskQod, RejectsEmptyTask) { EXPECT_THROW(task_qod(std::vector<double>{}), std::invalid_argument); }

TEST(RequestQos, AnalyticValues) {
  const double e_inv = std::exp(-1.0);
  EXPECT_NEAR(request_qos(std::vector<double>{e_inv}), 1.0, 1e-12);
  EXPECT_NEAR(request_qos(std::vector<double>{e_inv, e_inv}), 1.0, 1e-12);
  const std::vector<double> ten(10, 0.75);
  EXPECT_NEAR(request_qos(ten), 1.0 / std::abs(std::log(0.75)), 1e-12);
  EXPECT_NEAR(request_qos(ten), 3.476, 5e-4);
}

TEST(RequestQos, InverseOfMeanNegativeLog) {
  const std::vector<double> qods{0.9, 0.5, 0.7, 0.65};
  double log_sum = 0.0;
  for (double q : qods) log_sum += std::log(q);
  EXPECT_NEAR(request_qos(qods), 4.0 / std::abs(log_sum), 1e-12);
}

TEST(RequestQos, ClampsExtremes) {
  EXPECT_TRUE(std::isfinite(request_qos(std::vector<double>{0.0})));
  EXPECT_NEAR(request_qos(std::vector<double>{0.0}), 1.0 / std::abs(std::log(qod_eps)), 1e-12);
}

TEST(RequestQos, Errors) {
  EXPECT_THROW(request_qos(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(request_qos(std::vector<double>{std::nan("")}), std::invalid_argument);
}
