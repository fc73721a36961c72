#include "ertrust/reputation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ertrust {

WeightedGraph::WeightedGraph(std::size_t n, std::vector<WeightedEdge> edges) : out_weight_(n, 0.0) {
  std::erase_if(edges, [](const WeightedEdge& e) { return e.weight == 0.0; });
  for (const auto& e : edges) {
    if (e.from >= n || e.to >= n) throw std::out_of_range("weighted edge endpoint out of range");
    if (e.from == e.to) throw std::invalid_argument("self-edges are not allowed");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw std::invalid_argument("edge weight must be positive");
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.to != b.to ? a.to < b.to : a.from < b.from;
  });

  offsets_.assign(n + 1, 0);
  sources_.reserve(edges.size());
  weights_.reserve(edges.size());
  for (const auto& e : edges) {
    ++offsets_[e.to + 1];
    sources_.push_back(e.from);
    weights_.push_back(e.weight);
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());

  // Out-weights accumulate in (from, to) order so the sums do not depend on
  // the caller's edge order.
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return edges[a].from != edges[b].from ? edges[a].from < edges[b].from : edges[a].to < edges[b].to;
  });
  for (auto k : order) out_weight_[edges[k].from] += edges[k].weight;

  probabilities_.resize(weights_.size());
  for (std::size_t k = 0; k < weights_.size(); ++k) probabilities_[k] = weights_[k] / out_weight_[sources_[k]];
}

std::span<const UserId> WeightedGraph::in_sources(UserId to) const {
  return {sources_.data() + offsets_[to], offsets_[to + 1] - offsets_[to]};
}

std::span<const double> WeightedGraph::in_probabilities(UserId to) const {
  return {probabilities_.data() + offsets_[to], offsets_[to + 1] - offsets_[to]};
}

std::vector<WeightedEdge> WeightedGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(sources_.size());
  for (UserId to = 0; to < size(); ++to)
    for (std::size_t k = offsets_[to]; k < offsets_[to + 1]; ++k) out.push_back({sources_[k], to, weights_[k]});
  return out;
}

void ReputationParams::validate() const {
  if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("reputation.d must lie in (0,1)");
  if (!(theta_split > 0.0 && theta_split < 1.0)) throw std::invalid_argument("reputation.theta_split must lie in (0,1)");
  if (!(tol > 0.0)) throw std::invalid_argument("reputation.tol must be > 0");
  if (max_iter == 0) throw std::invalid_argument("reputation.max_iter must be positive");
}

ReputationVector ReputationVector::uniform(std::size_t n) {
  ReputationVector rep;
  rep.pos.assign(n, n ? 1.0 / static_cast<double>(n) : 0.0);
  rep.neg = rep.pos;
  rep.overall.assign(n, 0.0);
  return rep;
}

std::pair<WeightedGraph, WeightedGraph> split_graph(const ExperienceGraph& g, double theta_split) {
  std::vector<WeightedEdge> pos, neg;
  g.for_each_edge([&](const ExperienceRelation& rel) {
    if (rel.value > theta_split)
      pos.push_back({rel.trustor, rel.trustee, rel.value});
    else if (rel.value < theta_split)
      neg.push_back({rel.trustor, rel.trustee, 1.0 - rel.value});
  });
  return {WeightedGraph(g.size(), std::move(pos)), WeightedGraph(g.size(), std::move(neg))};
}

void apply_transition(const WeightedGraph& g, double d, std::span<const double> r, std::span<double> out, Exec exec) {
  const std::size_t n = g.size();
  if (r.size() != n || out.size() != n) throw std::invalid_argument("apply_transition: size mismatch");
  if (n == 0) return;

  double total = 0.0, dangling = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += r[i];
    if (g.dangling(static_cast<UserId>(i))) dangling += r[i];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const double base = (1.0 - d) * inv_n * total + d * dangling * inv_n;

  const auto n_signed = static_cast<std::ptrdiff_t>(n);
  auto row = [&](std::ptrdiff_t j) {
    const auto to = static_cast<UserId>(j);
    const auto src = g.in_sources(to);
    const auto prob = g.in_probabilities(to);
    double acc = 0.0;
    for (std::size_t k = 0; k < src.size(); ++k) acc += r[src[k]] * prob[k];
    out[j] = base + d * acc;
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n_signed; ++j) row(j);
  } else {
    for (std::ptrdiff_t j = 0; j < n_signed; ++j) row(j);
  }
}

std::vector<double> transition_matrix(const WeightedGraph& g, double d) {
  const std::size_t n = g.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> a(n * n, (1.0 - d) * inv_n);
  for (std::size_t i = 0; i < n; ++i)
    if (g.dangling(static_cast<UserId>(i)))
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] += d * inv_n;
  for (UserId to = 0; to < n; ++to) {
    const auto src = g.in_sources(to);
    const auto prob = g.in_probabilities(to);
    for (std::size_t k = 0; k < src.size(); ++k) a[src[k] * n + to] += d * prob[k];
  }
  return a;
}

double stationarity_residual(const WeightedGraph& g, double d, std::span<const double> r) {
  std::vector<double> ar(r.size());
  apply_transition(g, d, r, ar, Exec::serial);
  double res = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) res += std::abs(ar[i] - r[i]);
  return res;
}

PowerIterationResult power_iterate_from(const WeightedGraph& g, std::vector<double> start, double d, double tol,
                                        std::size_t max_iter, Exec exec) {
  const std::size_t n = g.size();
  if (n == 0) throw std::invalid_argument("power_iterate: empty graph");
  if (start.size() != n) throw std::invalid_argument("power_iterate: start vector size mismatch");

  std::vector<double> current = std::move(start);
  const double start_sum = std::accumulate(current.begin(), current.end(), 0.0);
  for (auto& x : current) x /= start_sum;

  std::vector<double> next(n);
  PowerIterationResult result;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    apply_transition(g, d, current, next, exec);
    const double sum = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= sum;
      change += std::abs(next[i] - current[i]);
    }
    current.swap(next);
    result.iterations = it;
    result.last_change = change;
    if (change < tol) {
      result.rank = std::move(current);
      return result;
    }
  }
  result.rank = std::move(current);
  throw NonConvergence("power iteration did not converge in " + std::to_string(max_iter) +
                           " iterations (last L1 change " + std::to_string(result.last_change) + ")",
                       std::move(result));
}

PowerIterationResult power_iterate(const WeightedGraph& g, double d, double tol, std::size_t max_iter, Exec exec) {
  if (g.size() == 0) throw std::invalid_argument("power_iterate: empty graph");
  return power_iterate_from(g, std::vector<double>(g.size(), 1.0 / static_cast<double>(g.size())), d, tol, max_iter,
                            exec);
}

ReputationVector compute_reputation(const ExperienceGraph& g, const ReputationParams& params, Exec exec) {
  params.validate();
  const auto [positive, negative] = split_graph(g, params.theta_split);
  auto pos = power_iterate(positive, params.d, params.tol, params.max_iter, exec);
  auto neg = power_iterate(negative, params.d, params.tol, params.max_iter, exec);

  ReputationVector rep;
  rep.iterations_pos = pos.iterations;
  rep.iterations_neg = neg.iterations;
  rep.pos = std::move(pos.rank);
  rep.neg = std::move(neg.rank);
  rep.overall.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) rep.overall[i] = std::max(0.0, rep.pos[i] - rep.neg[i]);
  return rep;
}

} // namespace ertrust
