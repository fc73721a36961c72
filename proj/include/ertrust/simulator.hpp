#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ertrust/config.hpp"
#include "ertrust/population.hpp"
#include "ertrust/recruitment.hpp"
#include "ertrust/reputation.hpp"

namespace ertrust {

inline constexpr std::size_t qos_window = 10;

struct RequestRecord {
  std::size_t index = 0; // 1-based
  UserId requester = 0;
  std::size_t tasks = 0;
  std::size_t participants = 0; // sum over tasks
  double qos = 0.0;
  double cumulative_qos = 0.0;
  double qos_ma = 0.0; // mean QoS over the last qos_window requests
  std::size_t experience_updates = 0;
  std::size_t decayed_edges = 0;
};

struct ReputationSnapshot {
  std::size_t after_request = 0;
  ReputationVector rep;
};

struct DetectionRow {
  double fraction = 0.0;
  std::size_t bucket_size = 0;
  std::size_t n_malicious = 0;
  std::size_t n_low = 0;
  std::size_t n_high = 0;
};

struct RunStats {
  double wall_seconds = 0.0;
  std::size_t reputation_runs = 0;
  std::size_t min_iterations = 0;
  std::size_t max_iterations = 0;
  double mean_iterations = 0.0;
  std::size_t truncated_tasks = 0;
};

struct RunReport {
  SimConfig config;
  Population population;
  std::vector<RequestRecord> series;
  std::vector<ReputationSnapshot> snapshots;
  std::optional<ReputationSnapshot> detection_reputation;
  std::vector<DetectionRow> detection;
  RunStats stats;
};

/// One sensing task as executed, for tracing and audits.
struct TaskEvent {
  std::size_t request = 0;
  TaskId task = 0;
  const RecruitDecision* decision = nullptr;
  std::span<const double> qods;
  double task_qod = 0.0;
};

using TaskObserver = std::function<void(const TaskEvent&)>;

/// Qod that `user` would deliver for task `task`. Depends only on the seed,
/// the user's profile and the (user, task) pair, never on the scheme.
double potential_qod(const UserProfile& user, std::uint64_t seed, TaskId task);

Population make_population(const SimConfig& config);

/// Runs the full request / task loop. Identical configs give identical
/// reports (apart from wall time). Throws ConfigError for invalid configs and
/// NonConvergence from the reputation solver.
RunReport run_simulation(const SimConfig& config, const TaskObserver& observer = {});

/// Users sorted by ascending overall reputation (ties by pos - neg, then id);
/// for each bucket fraction the lowest round(fraction * N) users are counted
/// by true kind.
std::vector<DetectionRow> detection_report(const ReputationVector& rep, const Population& population,
                                           std::span<const double> buckets);

struct SweepOptions {
  std::vector<Scheme> schemes{Scheme::trust, Scheme::average, Scheme::regression, Scheme::random};
  std::vector<double> malicious_fractions{0.0, 0.05, 0.10, 0.15, 0.20, 0.25};
  std::vector<std::size_t> checkpoints{10, 40, 80, 160};
  std::size_t replicates = 5;
  int jobs = 0; // 0: OpenMP default
};

struct SweepCell {
  Scheme scheme = Scheme::trust;
  double malicious_fraction = 0.0;
  std::size_t checkpoint = 0;
  double mean_qos = 0.0;
  double stderr_qos = 0.0;
  std::size_t replicates = 0;
};

/// Seed of replicate k derived from a master seed.
std::uint64_t replicate_seed(std::uint64_t master, std::size_t k);

/// Grid of windowed QoS at each checkpoint, averaged over replicate seeds.
/// Replicates share seeds across schemes and fractions. Runs execute in
/// parallel; aggregation happens afterwards in a fixed order.
std::vector<SweepCell> run_sweep(const SimConfig& base, const SweepOptions& options);

} // namespace ertrust
