#include "ertrust/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <variant>

#include "ertrust/qos.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ertrust {

namespace {

struct RandomState {};

using SchemeState = std::variant<TrustBasedState, AverageState, RegressionState, RandomState>;

/// Per-run mutable state. The trust ledger (experience graph + reputation)
/// is maintained for every scheme so snapshots and detection tables are
/// available regardless of how participants are chosen; only the trust
/// scheme reads it for selection.
class Run {
public:
  Run(const SimConfig& config, const TaskObserver& observer)
      : config_(config), observer_(observer), population_(make_population(config)),
        ledger_(TrustBasedState::create(config.n_users, config.experience, config.reputation, config.trust)) {
    switch (config.scheme) {
    case Scheme::trust: state_ = RandomState{}; break; // selection reads the ledger
    case Scheme::average: state_ = AverageState::create(config.n_users, config.unseen_prior); break;
    case Scheme::regression: state_ = RegressionState::create(config.n_users, config.unseen_prior); break;
    case Scheme::random: state_ = RandomState{}; break;
    }
  }

  RunReport execute() {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.series.reserve(config_.n_requests);
    double cumulative = 0.0;

    for (std::size_t r = 1; r <= config_.n_requests; ++r) {
      auto record = serve_request(r);
      cumulative += record.qos;
      record.cumulative_qos = cumulative;
      report.series.push_back(record);
      const std::size_t first = r > qos_window ? r - qos_window : 0;
      double window = 0.0;
      for (std::size_t k = first; k < r; ++k) window += report.series[k].qos;
      report.series.back().qos_ma = window / static_cast<double>(r - first);

      if (config_.reputation_snapshot_every && r % config_.reputation_snapshot_every == 0)
        report.snapshots.push_back({r, fresh_reputation()});
      if (config_.detection_at == r) take_detection(report, r);
    }
    if (config_.detection_at > config_.n_requests && config_.n_requests > 0 && config_.detection_at != 0)
      take_detection(report, config_.n_requests);

    report.config = config_;
    report.population = population_;
    report.stats = stats_;
    if (iteration_samples_) report.stats.mean_iterations = iteration_total_ / static_cast<double>(iteration_samples_);
    report.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

private:
  RequestRecord serve_request(std::size_t r) {
    auto scenario = substream(config_.seed, Stream::scenario, r);
    std::uniform_int_distribution<UserId> pick_requester(0, static_cast<UserId>(config_.n_users - 1));
    std::uniform_int_distribution<std::size_t> pick_tasks(config_.tasks_per_request.lo, config_.tasks_per_request.hi);
    std::uniform_int_distribution<std::size_t> pick_size(config_.participants_per_task.lo,
                                                         config_.participants_per_task.hi);
    RequestRecord record;
    record.index = r;
    record.requester = pick_requester(scenario);
    record.tasks = pick_tasks(scenario);
    std::vector<std::size_t> sizes(record.tasks);
    for (auto& p : sizes) p = pick_size(scenario);

    const bool trust_scheme = config_.scheme == Scheme::trust;
    const auto step = static_cast<std::int64_t>(r);
    std::vector<double> task_scores;
    task_scores.reserve(record.tasks);
    std::vector<double> qods;

    for (std::size_t p : sizes) {
      const TaskId task = next_task_++;
      auto tie = substream(config_.seed, Stream::tie_break, task);
      RecruitDecision decision = recruit(record.requester, p, tie);
      decision.task = task;
      if (decision.truncated) ++stats_.truncated_tasks;

      qods.resize(decision.selected.size());
      for (std::size_t i = 0; i < qods.size(); ++i)
        qods[i] = potential_qod(population_.users[decision.selected[i]], config_.seed, task);
      const double score = task_qod(qods);
      task_scores.push_back(score);
      record.participants += qods.size();

      learn(decision, qods);
      const bool per_task_rep = trust_scheme && config_.rep_recompute_per_task;
      record.experience_updates += update_trust_based(ledger_, decision, qods, false, step);
      if (per_task_rep) refresh_ledger_reputation();

      if (observer_) observer_(TaskEvent{r, task, &decision, qods, score});
    }

    record.decayed_edges = ledger_.graph.decay_stale(step, config_.experience);
    if (trust_scheme && !config_.rep_recompute_per_task && r % config_.rep_recompute_every == 0)
      refresh_ledger_reputation();
    record.qos = request_qos(task_scores);
    return record;
  }

  RecruitDecision recruit(UserId requester, std::size_t p, Rng& rng) {
    switch (config_.scheme) {
    case Scheme::trust: return recruit_trust_based(ledger_, requester, p, rng);
    case Scheme::average: return recruit_average(std::get<AverageState>(state_), requester, p, rng);
    case Scheme::regression: return recruit_regression(std::get<RegressionState>(state_), requester, p, rng);
    case Scheme::random: return recruit_random(config_.n_users, requester, p, rng);
    }
    return {};
  }

  void learn(const RecruitDecision& decision, std::span<const double> qods) {
    if (auto* avg = std::get_if<AverageState>(&state_)) update_average(*avg, decision, qods);
    if (auto* reg = std::get_if<RegressionState>(&state_)) update_regression(*reg, decision, qods);
  }

  void note_iterations(const ReputationVector& rep) {
    for (auto it : {rep.iterations_pos, rep.iterations_neg}) {
      stats_.min_iterations = stats_.reputation_runs == 0 ? it : std::min(stats_.min_iterations, it);
      stats_.max_iterations = std::max(stats_.max_iterations, it);
      iteration_total_ += static_cast<double>(it);
      ++iteration_samples_;
    }
    ++stats_.reputation_runs;
  }

  void refresh_ledger_reputation() {
    recompute_reputation(ledger_);
    note_iterations(ledger_.rep);
  }

  /// Reputation of the current experience graph. Reuses the ledger's vector
  /// when it is up to date.
  ReputationVector fresh_reputation() {
    if (config_.scheme == Scheme::trust && ledger_.rep_age == 0 && ledger_.rep.size() == config_.n_users &&
        stats_.reputation_runs > 0)
      return ledger_.rep;
    auto rep = compute_reputation(ledger_.graph, config_.reputation);
    note_iterations(rep);
    return rep;
  }

  void take_detection(RunReport& report, std::size_t r) {
    ReputationSnapshot snap{r, fresh_reputation()};
    report.detection = detection_report(snap.rep, population_, config_.detection_buckets);
    report.detection_reputation = std::move(snap);
  }

  const SimConfig& config_;
  const TaskObserver& observer_;
  Population population_;
  TrustBasedState ledger_;
  SchemeState state_;
  TaskId next_task_ = 0;
  RunStats stats_;
  double iteration_total_ = 0.0;
  std::size_t iteration_samples_ = 0;
};

} // namespace

double potential_qod(const UserProfile& user, std::uint64_t seed, TaskId task) {
  auto rng = substream(seed, Stream::qod, user.id, task);
  return sample_qod(user, rng);
}

Population make_population(const SimConfig& config) {
  auto rng = substream(config.seed, Stream::population);
  PopulationRanges ranges;
  ranges.mix = config.malicious_mix;
  return generate_population(config.n_high_quality(), config.n_low_quality(), config.n_malicious(), rng, ranges);
}

RunReport run_simulation(const SimConfig& config, const TaskObserver& observer) {
  config.validate();
  Run run(config, observer);
  return run.execute();
}

std::vector<DetectionRow> detection_report(const ReputationVector& rep, const Population& population,
                                           std::span<const double> buckets) {
  const std::size_t n = population.size();
  if (rep.size() != n) throw std::invalid_argument("reputation vector does not match the population");
  std::vector<UserId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](UserId a, UserId b) {
    if (rep.overall[a] != rep.overall[b]) return rep.overall[a] < rep.overall[b];
    const double da = rep.pos[a] - rep.neg[a], db = rep.pos[b] - rep.neg[b];
    if (da != db) return da < db;
    return a < b;
  });

  std::vector<DetectionRow> rows;
  for (double fraction : buckets) {
    DetectionRow row;
    row.fraction = fraction;
    row.bucket_size = std::min(n, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))));
    for (std::size_t k = 0; k < row.bucket_size; ++k) {
      switch (population.users[order[k]].kind()) {
      case UserKind::malicious: ++row.n_malicious; break;
      case UserKind::low_quality: ++row.n_low; break;
      case UserKind::high_quality: ++row.n_high; break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::uint64_t replicate_seed(std::uint64_t master, std::size_t k) {
  return substream(master, Stream::replicate, k)();
}

std::vector<SweepCell> run_sweep(const SimConfig& base, const SweepOptions& options) {
  if (options.replicates == 0) throw ConfigError("sweep needs at least one replicate");
  if (options.checkpoints.empty()) throw ConfigError("sweep needs at least one checkpoint");
  for (double f : options.malicious_fractions)
    if (!(f >= 0.0 && f <= 0.25)) throw ConfigError("sweep malicious fractions must lie in [0, 0.25]");
  const std::size_t horizon = *std::max_element(options.checkpoints.begin(), options.checkpoints.end());
  if (horizon == 0) throw ConfigError("sweep checkpoints must be positive");

  struct Job {
    Scheme scheme;
    double fraction;
    std::size_t replicate;
  };
  std::vector<Job> jobs;
  for (auto scheme : options.schemes)
    for (double f : options.malicious_fractions)
      for (std::size_t k = 0; k < options.replicates; ++k) jobs.push_back({scheme, f, k});

  std::vector<SimConfig> configs(jobs.size(), base);
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    auto& c = configs[j];
    c.scheme = jobs[j].scheme;
    c.malicious_fraction = jobs[j].fraction;
    c.seed = replicate_seed(base.seed, jobs[j].replicate);
    c.n_requests = horizon;
    c.detection_at = 0;
    c.reputation_snapshot_every = 0;
    c.validate();
  }

  std::vector<std::vector<double>> series(jobs.size());
  std::exception_ptr failure;
  const auto n_jobs = static_cast<std::ptrdiff_t>(jobs.size());
#ifdef _OPENMP
  const int threads = options.jobs > 0 ? options.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
  for (std::ptrdiff_t j = 0; j < n_jobs; ++j) {
    try {
      const auto report = run_simulation(configs[static_cast<std::size_t>(j)]);
      auto& out = series[static_cast<std::size_t>(j)];
      for (const auto& rec : report.series) out.push_back(rec.qos_ma);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(ertrust_sweep_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SweepCell> cells;
  std::size_t j = 0;
  for (auto scheme : options.schemes) {
    for (double f : options.malicious_fractions) {
      const std::size_t first = j;
      j += options.replicates;
      for (std::size_t checkpoint : options.checkpoints) {
        SweepCell cell{scheme, f, checkpoint, 0.0, 0.0, options.replicates};
        double sum = 0.0;
        for (std::size_t k = first; k < j; ++k) sum += series[k][checkpoint - 1];
        cell.mean_qos = sum / static_cast<double>(options.replicates);
        if (options.replicates > 1) {
          double ss = 0.0;
          for (std::size_t k = first; k < j; ++k) ss += std::pow(series[k][checkpoint - 1] - cell.mean_qos, 2);
          const double var = ss / static_cast<double>(options.replicates - 1);
          cell.stderr_qos = std::sqrt(var / static_cast<double>(options.replicates));
        }
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

} // namespace ertrust
