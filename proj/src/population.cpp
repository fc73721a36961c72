#include "ertrust/population.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace ertrust {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double uniform_open(const Interval& iv, Rng& rng) {
  std::uniform_real_distribution<double> dist(iv.lo, iv.hi);
  double x = dist(rng);
  while (x <= iv.lo || x >= iv.hi) x = dist(rng);
  return x;
}

BetaShape draw_shape(const Interval& a, const Interval& b, Rng& rng) {
  const double sa = uniform_open(a, rng);
  const double sb = uniform_open(b, rng);
  return {sa, sb};
}

} // namespace

std::string_view to_string(UserKind kind) {
  switch (kind) {
  case UserKind::high_quality: return "high";
  case UserKind::low_quality: return "low";
  case UserKind::malicious: return "malicious";
  }
  return "?";
}

UserKind UserProfile::kind() const {
  return std::visit(overloaded{[](const HighQuality&) { return UserKind::high_quality; },
                               [](const LowQuality&) { return UserKind::low_quality; },
                               [](const Malicious&) { return UserKind::malicious; }},
                    behavior);
}

double UserProfile::expected_qod() const {
  return std::visit(overloaded{[](const HighQuality& h) { return h.shape.mean(); },
                               [](const LowQuality& l) { return l.shape.mean(); },
                               [](const Malicious& m) { return m.mix * m.high.mean() + (1.0 - m.mix) * m.low.mean(); }},
                    behavior);
}

double sample_beta(double a, double b, Rng& rng) {
  if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("Beta shape parameters must be positive and finite");
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  double v = x / (x + y);
  if (!(v > 0.0)) v = std::numeric_limits<double>::min();
  if (!(v < 1.0)) v = std::nextafter(1.0, 0.0);
  return v;
}

MixtureDraw sample_mixture(const Malicious& m, Rng& rng) {
  std::bernoulli_distribution pick_high(m.mix);
  const bool high = pick_high(rng);
  const auto& shape = high ? m.high : m.low;
  return {sample_beta(shape.a, shape.b, rng), high};
}

double sample_qod(const UserProfile& profile, Rng& rng) {
  return std::visit(overloaded{[&](const HighQuality& h) { return sample_beta(h.shape.a, h.shape.b, rng); },
                               [&](const LowQuality& l) { return sample_beta(l.shape.a, l.shape.b, rng); },
                               [&](const Malicious& m) { return sample_mixture(m, rng).value; }},
                    profile.behavior);
}

Population generate_population(std::size_t n_high, std::size_t n_low, std::size_t n_malicious, Rng& rng,
                               const PopulationRanges& ranges) {
  Population pop;
  pop.n_high = n_high;
  pop.n_low = n_low;
  pop.n_malicious = n_malicious;
  pop.users.reserve(n_high + n_low + n_malicious);

  UserId next = 0;
  for (std::size_t i = 0; i < n_high; ++i)
    pop.users.push_back({next++, HighQuality{draw_shape(ranges.high_a, ranges.high_b, rng)}});
  for (std::size_t i = 0; i < n_low; ++i)
    pop.users.push_back({next++, LowQuality{draw_shape(ranges.low_a, ranges.low_b, rng)}});
  for (std::size_t i = 0; i < n_malicious; ++i) {
    const auto high = draw_shape(ranges.mal_high_a, ranges.mal_high_b, rng);
    const auto low = draw_shape(ranges.mal_low_a, ranges.mal_low_b, rng);
    pop.users.push_back({next++, Malicious{high, low, ranges.mix}});
  }
  // Interleave kinds across ids.
  std::vector<UserId> ids(pop.users.size());
  for (UserId i = 0; i < ids.size(); ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<UserProfile> shuffled(pop.users.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    shuffled[ids[i]] = pop.users[i];
    shuffled[ids[i]].id = ids[i];
  }
  pop.users = std::move(shuffled);
  return pop;
}

} // namespace ertrust
