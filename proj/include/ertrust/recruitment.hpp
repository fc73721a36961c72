#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "ertrust/experience.hpp"
#include "ertrust/graph.hpp"
#include "ertrust/reputation.hpp"
#include "ertrust/rng.hpp"
#include "ertrust/trust.hpp"

namespace ertrust {

using TaskId = std::uint64_t;

enum class Scheme { trust, average, regression, random };

std::string_view to_string(Scheme scheme);
/// Accepts "trust", "average", "regression", "random".
Scheme parse_scheme(std::string_view name);

struct RecruitDecision {
  TaskId task = 0;
  UserId requester = 0;
  std::vector<UserId> selected;
  std::vector<double> scores; // parallel to selected
  bool truncated = false;     // p exceeded the n - 1 available candidates
};

/// The p highest-scoring users other than the requester, in descending score
/// order. Candidates are shuffled with `rng` before a stable sort, so equal
/// scores are ordered uniformly at random.
RecruitDecision select_top(std::span<const double> scores, UserId requester, std::size_t p, Rng& rng);

struct TrustBasedState {
  ExperienceGraph graph;
  ReputationVector rep;
  std::size_t rep_age = 0; // experience updates since the last reputation recompute
  ExperienceParams experience;
  ReputationParams reputation;
  TrustParams trust;

  static TrustBasedState create(std::size_t n, const ExperienceParams& experience, const ReputationParams& reputation,
                                const TrustParams& trust);
};

RecruitDecision recruit_trust_based(const TrustBasedState& state, UserId requester, std::size_t p, Rng& rng,
                                    Exec exec = Exec::parallel);

/// Applies one interaction per selected participant to the requester's
/// experience edges; recomputes reputation when `recompute_rep` is set.
/// Returns the number of experience updates.
std::size_t update_trust_based(TrustBasedState& state, const RecruitDecision& decision, std::span<const double> qods,
                               bool recompute_rep, std::int64_t step, Exec exec = Exec::parallel);

void recompute_reputation(TrustBasedState& state, Exec exec = Exec::parallel);

struct AverageState {
  std::vector<double> avg;
  std::vector<std::size_t> count;
  double prior = 0.0; // score of users never recruited

  static AverageState create(std::size_t n, double prior = 0.0);
  double score(UserId u) const { return count[u] ? avg[u] : prior; }
};

RecruitDecision recruit_average(const AverageState& state, UserId requester, std::size_t p, Rng& rng);
void update_average(AverageState& state, const RecruitDecision& decision, std::span<const double> qods);

/// Per-user qod histories; t is the user's own observation index 1, 2, ...
struct RegressionState {
  std::vector<std::vector<double>> history;
  std::vector<double> prediction;
  std::vector<char> stale;
  double prior = 0.0;

  static RegressionState create(std::size_t n, double prior = 0.0);
};

/// Prediction for observation n + 1 of a history of length n: the prior when
/// empty, the mean below four points, otherwise the cubic least-squares
/// extrapolation clamped to [0, 1].
double predict_next_qod(std::span<const double> history, double prior);

RecruitDecision recruit_regression(RegressionState& state, UserId requester, std::size_t p, Rng& rng);
void update_regression(RegressionState& state, const RecruitDecision& decision, std::span<const double> qods);

/// Uniform p-subset of the n users, without replacement, excluding the requester.
RecruitDecision recruit_random(std::size_t n, UserId requester, std::size_t p, Rng& rng);

} // namespace ertrust
