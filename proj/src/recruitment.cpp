#include "ertrust/recruitment.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "ertrust/polyfit.hpp"

namespace ertrust {

namespace {

void check_aligned(const RecruitDecision& decision, std::span<const double> qods) {
  if (decision.selected.size() != qods.size())
    throw std::invalid_argument("qod list is not aligned with the selected participants");
}

std::vector<UserId> candidates(std::size_t n, UserId requester) {
  if (requester >= n) throw std::out_of_range("unknown requester id");
  std::vector<UserId> ids;
  ids.reserve(n - 1);
  for (UserId u = 0; u < n; ++u)
    if (u != requester) ids.push_back(u);
  return ids;
}

} // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
  case Scheme::trust: return "trust";
  case Scheme::average: return "average";
  case Scheme::regression: return "regression";
  case Scheme::random: return "random";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (auto s : {Scheme::trust, Scheme::average, Scheme::regression, Scheme::random})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected trust|average|regression|random)");
}

RecruitDecision select_top(std::span<const double> scores, UserId requester, std::size_t p, Rng& rng) {
  auto ids = candidates(scores.size(), requester);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::stable_sort(ids.begin(), ids.end(), [&](UserId a, UserId b) { return scores[a] > scores[b]; });

  RecruitDecision decision;
  decision.requester = requester;
  decision.truncated = p > ids.size();
  ids.resize(std::min(p, ids.size()));
  decision.scores.reserve(ids.size());
  for (auto u : ids) decision.scores.push_back(scores[u]);
  decision.selected = std::move(ids);
  return decision;
}

TrustBasedState TrustBasedState::create(std::size_t n, const ExperienceParams& experience,
                                        const ReputationParams& reputation, const TrustParams& trust) {
  experience.validate();
  reputation.validate();
  trust.validate();
  return {ExperienceGraph(n), ReputationVector::uniform(n), 0, experience, reputation, trust};
}

RecruitDecision recruit_trust_based(const TrustBasedState& state, UserId requester, std::size_t p, Rng& rng,
                                    Exec exec) {
  const auto row = trust_row(requester, state.graph, state.rep, state.trust, state.experience.exp0, exec);
  return select_top(row, requester, p, rng);
}

void recompute_reputation(TrustBasedState& state, Exec exec) {
  state.rep = compute_reputation(state.graph, state.reputation, exec);
  state.rep_age = 0;
}

std::size_t update_trust_based(TrustBasedState& state, const RecruitDecision& decision, std::span<const double> qods,
                               bool recompute_rep, std::int64_t step, Exec exec) {
  check_aligned(decision, qods);
  for (std::size_t i = 0; i < qods.size(); ++i) {
    auto& rel = state.graph.relation(decision.requester, decision.selected[i], state.experience);
    rel = update_on_interaction(rel, qods[i], state.experience, step);
  }
  state.rep_age += qods.size();
  if (recompute_rep) recompute_reputation(state, exec);
  return qods.size();
}

AverageState AverageState::create(std::size_t n, double prior) {
  return {std::vector<double>(n, 0.0), std::vector<std::size_t>(n, 0), prior};
}

RecruitDecision recruit_average(const AverageState& state, UserId requester, std::size_t p, Rng& rng) {
  std::vector<double> scores(state.avg.size());
  for (UserId u = 0; u < scores.size(); ++u) scores[u] = state.score(u);
  return select_top(scores, requester, p, rng);
}

void update_average(AverageState& state, const RecruitDecision& decision, std::span<const double> qods) {
  check_aligned(decision, qods);
  for (std::size_t i = 0; i < qods.size(); ++i) {
    const UserId u = decision.selected[i];
    const auto k = ++state.count[u];
    state.avg[u] += (qods[i] - state.avg[u]) / static_cast<double>(k);
  }
}

RegressionState RegressionState::create(std::size_t n, double prior) {
  return {std::vector<std::vector<double>>(n), std::vector<double>(n, prior), std::vector<char>(n, 0), prior};
}

double predict_next_qod(std::span<const double> history, double prior) {
  const std::size_t n = history.size();
  if (n == 0) return prior;
  std::vector<double> t(n);
  std::iota(t.begin(), t.end(), 1.0);
  const auto model = fit_poly3(t, history);
  return std::clamp(model(static_cast<double>(n + 1)), 0.0, 1.0);
}

RecruitDecision recruit_regression(RegressionState& state, UserId requester, std::size_t p, Rng& rng) {
  for (std::size_t u = 0; u < state.history.size(); ++u) {
    if (!state.stale[u]) continue;
    state.prediction[u] = predict_next_qod(state.history[u], state.prior);
    state.stale[u] = 0;
  }
  return select_top(state.prediction, requester, p, rng);
}

void update_regression(RegressionState& state, const RecruitDecision& decision, std::span<const double> qods) {
  check_aligned(decision, qods);
  for (std::size_t i = 0; i < qods.size(); ++i) {
    const UserId u = decision.selected[i];
    state.history[u].push_back(qods[i]);
    state.stale[u] = 1;
  }
}

RecruitDecision recruit_random(std::size_t n, UserId requester, std::size_t p, Rng& rng) {
  auto ids = candidates(n, requester);
  RecruitDecision decision;
  decision.requester = requester;
  decision.truncated = p > ids.size();
  const std::size_t k = std::min(p, ids.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, ids.size() - 1);
    std::swap(ids[i], ids[pick(rng)]);
  }
  ids.resize(k);
  decision.selected = std::move(ids);
  decision.scores.assign(k, 0.0);
  return decision;
}

} // namespace ertrust
