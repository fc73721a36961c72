// Serial vs OpenMP timings of the data-parallel kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ertrust/graph.hpp"
#include "ertrust/reputation.hpp"
#include "ertrust/trust.hpp"

using namespace ertrust;

namespace {

/// Experience graph with `degree` random out-edges per user.
ExperienceGraph random_graph(std::size_t n, std::size_t degree, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<UserId> pick(0, static_cast<UserId>(n - 1));
  std::uniform_real_distribution<double> value(0.0, 1.0);
  ExperienceGraph g(n);
  for (UserId i = 0; i < n; ++i)
    for (std::size_t k = 0; k < degree; ++k) {
      const UserId j = pick(gen);
      if (j != i) g.set(i, j, value(gen));
    }
  return g;
}

Exec policy(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_ApplyTransition(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto [pos, neg] = split_graph(random_graph(n, 50, 1), 0.5);
  std::vector<double> r(n, 1.0 / static_cast<double>(n)), out(n);
  for (auto _ : state) {
    apply_transition(pos, 0.85, r, out, policy(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pos.edge_count()));
}

void BM_PowerIterate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto [pos, neg] = split_graph(random_graph(n, 50, 2), 0.5);
  for (auto _ : state) {
    auto r = power_iterate(pos, 0.85, 1e-9, 1000, policy(state));
    benchmark::DoNotOptimize(r.rank.data());
  }
}

void BM_TrustRow(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(n, 50, 3);
  const auto rep = compute_reputation(g, {});
  UserId requester = 0;
  for (auto _ : state) {
    auto row = trust_row(requester, g, rep, {}, 0.3, policy(state));
    benchmark::DoNotOptimize(row.data());
    requester = (requester + 1) % static_cast<UserId>(n);
  }
}

} // namespace

// Second argument: 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_ApplyTransition)->ArgsProduct({{400, 4000, 40000}, {0, 1}});
BENCHMARK(BM_PowerIterate)->ArgsProduct({{400, 4000, 40000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrustRow)->ArgsProduct({{400, 4000, 40000}, {0, 1}});

BENCHMARK_MAIN();
