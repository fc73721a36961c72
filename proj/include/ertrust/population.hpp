#pragma once

#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

#include "ertrust/experience.hpp"
#include "ertrust/rng.hpp"

namespace ertrust {

enum class UserKind { high_quality, low_quality, malicious };

std::string_view to_string(UserKind kind);

struct BetaShape {
  double a = 1.0;
  double b = 1.0;

  double mean() const { return a / (a + b); }
};

struct HighQuality {
  BetaShape shape;
};

struct LowQuality {
  BetaShape shape;
};

/// Bimodal behavior: with probability `mix` a task is served from the high
/// component, otherwise from the low one.
struct Malicious {
  BetaShape high;
  BetaShape low;
  double mix = 0.7;
};

using Behavior = std::variant<HighQuality, LowQuality, Malicious>;

struct UserProfile {
  UserId id = 0;
  Behavior behavior;

  UserKind kind() const;
  /// Expected qod of a single task.
  double expected_qod() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Open intervals the per-user Beta shapes are drawn from.
struct PopulationRanges {
  Interval high_a{10.0, 15.0}, high_b{3.0, 5.0};
  Interval low_a{9.0, 12.0}, low_b{7.0, 9.0};
  Interval mal_high_a{18.0, 22.0}, mal_high_b{2.5, 3.5};
  Interval mal_low_a{4.0, 6.0}, mal_low_b{25.0, 35.0};
  double mix = 0.7;
};

struct Population {
  std::vector<UserProfile> users;
  std::size_t n_high = 0;
  std::size_t n_low = 0;
  std::size_t n_malicious = 0;

  std::size_t size() const { return users.size(); }
};

/// Beta(a, b) as X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b). The result is
/// kept strictly inside (0, 1). Throws std::invalid_argument for a, b <= 0.
double sample_beta(double a, double b, Rng& rng);

struct MixtureDraw {
  double value = 0.0;
  bool high_component = true;
};

MixtureDraw sample_mixture(const Malicious& m, Rng& rng);

double sample_qod(const UserProfile& profile, Rng& rng);

/// Users get dense ids in a random order, so an id says nothing about kind.
Population generate_population(std::size_t n_high, std::size_t n_low, std::size_t n_malicious, Rng& rng,
                               const PopulationRanges& ranges = {});

} // namespace ertrust
