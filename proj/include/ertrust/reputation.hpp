#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ertrust/experience.hpp"
#include "ertrust/graph.hpp"

namespace ertrust {

/// Execution policy for the data-parallel kernels. Both policies produce
/// bitwise-identical results: parallel loops only distribute independent
/// per-node work, and every reduction runs in the serial order.
enum class Exec { serial, parallel };

struct WeightedEdge {
  UserId from = 0;
  UserId to = 0;
  double weight = 0.0;
};

/// Column-oriented (incoming adjacency) view of a non-negative weighted
/// digraph, with per-source out-weight sums for the column normalization.
/// Zero-weight edges are dropped.
class WeightedGraph {
public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t n, std::vector<WeightedEdge> edges);

  std::size_t size() const { return out_weight_.size(); }
  std::size_t edge_count() const { return sources_.size(); }

  double out_weight(UserId u) const { return out_weight_[u]; }
  bool dangling(UserId u) const { return out_weight_[u] == 0.0; }

  /// Incoming edges of `to`: sources and their normalized probabilities
  /// weight / out_weight(source).
  std::span<const UserId> in_sources(UserId to) const;
  std::span<const double> in_probabilities(UserId to) const;

  std::vector<WeightedEdge> edges() const;

private:
  std::vector<std::size_t> offsets_;
  std::vector<UserId> sources_;
  std::vector<double> weights_;
  std::vector<double> probabilities_;
  std::vector<double> out_weight_;
};

struct ReputationParams {
  double d = 0.85;
  double theta_split = 0.5;
  double tol = 1e-3;
  std::size_t max_iter = 200;

  void validate() const;
};

struct PowerIterationResult {
  std::vector<double> rank;
  std::size_t iterations = 0;
  double last_change = 0.0; // L1 distance between the last two iterates
};

class NonConvergence : public std::runtime_error {
public:
  NonConvergence(const std::string& what, PowerIterationResult last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const PowerIterationResult& last() const { return last_; }

private:
  PowerIterationResult last_;
};

struct ReputationVector {
  std::vector<double> pos;
  std::vector<double> neg;
  std::vector<double> overall;
  std::size_t iterations_pos = 0;
  std::size_t iterations_neg = 0;

  std::size_t size() const { return overall.size(); }
  /// Reputation of a graph with no edges: uniform channels, zero overall.
  static ReputationVector uniform(std::size_t n);
};

/// Positive channel keeps edges with value > theta at their value; the
/// negative channel keeps edges with value < theta at 1 - value.
std::pair<WeightedGraph, WeightedGraph> split_graph(const ExperienceGraph& g, double theta_split);

/// out = A * r, where A = (1-d)/N * E + d * W * M^-1 and dangling columns
/// jump uniformly. `r` and `out` must both have length g.size().
void apply_transition(const WeightedGraph& g, double d, std::span<const double> r, std::span<double> out,
                      Exec exec = Exec::parallel);

/// Dense column-major N x N transition matrix (A(j, i) at [i * N + j]).
/// Intended for small graphs and diagnostics.
std::vector<double> transition_matrix(const WeightedGraph& g, double d);

/// L1 norm of A * r - r.
double stationarity_residual(const WeightedGraph& g, double d, std::span<const double> r);

/// Power iteration from the uniform vector until the L1 change between
/// successive iterates drops below tol. Throws NonConvergence after max_iter.
PowerIterationResult power_iterate(const WeightedGraph& g, double d, double tol, std::size_t max_iter,
                                   Exec exec = Exec::parallel);

/// Same iteration from a caller-supplied strictly positive start vector.
PowerIterationResult power_iterate_from(const WeightedGraph& g, std::vector<double> start, double d, double tol,
                                        std::size_t max_iter, Exec exec = Exec::parallel);

ReputationVector compute_reputation(const ExperienceGraph& g, const ReputationParams& params,
                                    Exec exec = Exec::parallel);

} // namespace ertrust
