#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ertrust/population.hpp"
#include "ertrust/rng.hpp"

using namespace ertrust;

namespace {

std::vector<double> draw(double a, double b, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = sample_beta(a, b, rng);
  return xs;
}

/// Kolmogorov-Smirnov statistic against the regularized incomplete beta CDF.
double ks_statistic(std::vector<double> xs, double a, double b) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double cdf = boost::math::ibeta(a, b, xs[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  return d;
}

// Asymptotic KS critical value at significance 0.001.
double ks_critical(std::size_t n) { return 1.949 / std::sqrt(static_cast<double>(n)); }

double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(const std::vector<double>& xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

} // namespace

TEST(SampleBeta, UniformSpecialCase) {
  const auto xs = draw(1.0, 1.0, 100000, 1);
  EXPECT_NEAR(mean(xs), 0.5, 0.01);
  EXPECT_LT(ks_statistic(xs, 1.0, 1.0), ks_critical(xs.size()));
}

TEST(SampleBeta, MomentsOfHighQualityShape) {
  const auto xs = draw(12.0, 4.0, 100000, 2);
  EXPECT_NEAR(mean(xs), 0.75, 0.01);
  EXPECT_NEAR(variance(xs), 12.0 * 4.0 / (16.0 * 16.0 * 17.0), 0.002);
}

TEST(SampleBeta, KolmogorovSmirnovAcrossShapes) {
  const double shapes[][2] = {{12.5, 4.0}, {10.5, 8.0}, {20.0, 3.0}, {5.0, 30.0}, {0.5, 0.5}, {2.0, 5.0}};
  std::uint64_t seed = 10;
  for (const auto& s : shapes) {
    const auto xs = draw(s[0], s[1], 20000, seed++);
    EXPECT_LT(ks_statistic(xs, s[0], s[1]), ks_critical(xs.size())) << "a=" << s[0] << " b=" << s[1];
    for (double x : xs) ASSERT_TRUE(x > 0.0 && x < 1.0);
  }
}

TEST(SampleBeta, RejectsInvalidShapes) {
  Rng rng(1);
  EXPECT_THROW(sample_beta(0.0, 1.0, rng), std::invalid_argument);
  EXPECT_THROW(sample_beta(1.0, -2.0, rng), std::invalid_argument);
}

TEST(SampleBeta, HighQualityModeRegion) {
  const auto xs = draw(12.5, 4.0, 100000, 3);
  std::vector<int> hist(20, 0);
  for (double x : xs) ++hist[std::min<std::size_t>(19, static_cast<std::size_t>(x * 20.0))];
  const auto peak = std::max_element(hist.begin(), hist.end()) - hist.begin();
  const double centre = (static_cast<double>(peak) + 0.5) / 20.0;
  EXPECT_GE(centre, 0.75);
  EXPECT_LE(centre, 0.85);
}

TEST(SampleMixture, HighComponentFrequency) {
  const Malicious m{{20.0, 3.0}, {5.0, 30.0}, 0.7};
  Rng rng(4);
  std::size_t high = 0;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) high += sample_mixture(m, rng).high_component;
  EXPECT_NEAR(static_cast<double>(high) / n, 0.70, 0.01);
}

TEST(SampleMixture, DegenerateMixIsHighComponent) {
  const Malicious m{{20.0, 3.0}, {5.0, 30.0}, 1.0};
  Rng rng(5);
  std::vector<double> xs(20000);
  for (auto& x : xs) x = sample_mixture(m, rng).value;
  EXPECT_LT(ks_statistic(xs, 20.0, 3.0), ks_critical(xs.size()));
}

TEST(SampleMixture, LowComponentIsUncooperative) {
  // Averaged over the admissible low-component shapes, the mass at or below
  // 0.3 exceeds 0.95 (the corner a = 6, b = 25 alone gives about 0.92).
  double mass = 0.0;
  int cells = 0;
  for (double a = 4.01; a < 6.0; a += 0.02)
    for (double b = 25.05; b < 35.0; b += 0.1, ++cells) mass += boost::math::ibeta(a, b, 0.3);
  EXPECT_GT(mass / cells, 0.95);

  Rng rng(6);
  const auto pop = generate_population(0, 0, 200, rng);
  std::size_t below = 0, draws = 0;
  for (const auto& u : pop.users) {
    auto low = std::get<Malicious>(u.behavior);
    low.mix = 0.0;
    for (int i = 0; i < 100; ++i, ++draws) below += sample_mixture(low, rng).value <= 0.3;
  }
  EXPECT_GT(static_cast<double>(below) / static_cast<double>(draws), 0.95);
}

TEST(GeneratePopulation, Empty) {
  Rng rng(1);
  const auto pop = generate_population(0, 0, 0, rng);
  EXPECT_EQ(pop.size(), 0u);
}

TEST(GeneratePopulation, CountsRangesAndIds) {
  Rng rng(1);
  const auto pop = generate_population(300, 60, 40, rng);
  ASSERT_EQ(pop.size(), 400u);
  std::size_t counts[3] = {0, 0, 0};
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const auto& u = pop.users[i];
    EXPECT_EQ(u.id, i);
    ++counts[static_cast<int>(u.kind())];
    if (const auto* h = std::get_if<HighQuality>(&u.behavior)) {
      EXPECT_TRUE(h->shape.a > 10 && h->shape.a < 15 && h->shape.b > 3 && h->shape.b < 5);
    } else if (const auto* l = std::get_if<LowQuality>(&u.behavior)) {
      EXPECT_TRUE(l->shape.a > 9 && l->shape.a < 12 && l->shape.b > 7 && l->shape.b < 9);
    } else {
      const auto& m = std::get<Malicious>(u.behavior);
      EXPECT_TRUE(m.high.a > 18 && m.high.a < 22 && m.high.b > 2.5 && m.high.b < 3.5);
      EXPECT_TRUE(m.low.a > 4 && m.low.a < 6 && m.low.b > 25 && m.low.b < 35);
      EXPECT_EQ(m.mix, 0.7);
    }
  }
  EXPECT_EQ(counts[0], 300u);
  EXPECT_EQ(counts[1], 60u);
  EXPECT_EQ(counts[2], 40u);
}

TEST(GeneratePopulation, KindsAreInterleaved) {
  Rng rng(2);
  const auto pop = generate_population(200, 160, 40, rng);
  std::size_t malicious_in_first_half = 0;
  for (std::size_t i = 0; i < 200; ++i) malicious_in_first_half += pop.users[i].kind() == UserKind::malicious;
  EXPECT_GT(malicious_in_first_half, 5u);
  EXPECT_LT(malicious_in_first_half, 35u);
}

TEST(GeneratePopulation, Deterministic) {
  Rng a(99), b(99);
  const auto p = generate_population(10, 5, 5, a);
  const auto q = generate_population(10, 5, 5, b);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(p.users[i].kind(), q.users[i].kind());
    EXPECT_EQ(p.users[i].expected_qod(), q.users[i].expected_qod());
  }
}

TEST(Substream, KeysAreIndependent) {
  auto a = substream(1, Stream::qod, 3, 4);
  auto b = substream(1, Stream::qod, 3, 4);
  auto c = substream(1, Stream::qod, 4, 3);
  auto d = substream(2, Stream::qod, 3, 4);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}
