// ertrust: command-line driver for the crowd-sensing trust simulator.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ertrust/config.hpp"
#include "ertrust/report.hpp"
#include "ertrust/simulator.hpp"

namespace fs = std::filesystem;
using namespace ertrust;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_runtime = 2;

struct Invocation {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  int jobs = 0;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App& cmd, Invocation& inv) {
  cmd.add_option("--config", inv.config_path, "Key-value configuration file");
  cmd.add_option("--set", inv.overrides, "Override a config key (KEY=VALUE, repeatable)")->allow_extra_args(false);
  cmd.add_option("--out", inv.out_dir, "Output directory")->capture_default_str();
  cmd.add_option("--jobs", inv.jobs, "Parallel runs (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  cmd.add_option("--seed", inv.seed, "Shorthand for --set seed=U64");
}

/// Defaults, then the config file, then --set overrides, then --seed.
SimConfig resolve_config(const Invocation& inv) {
  SimConfig config;
  if (!inv.config_path.empty()) config = load_config(inv.config_path, config);
  for (const auto& kv : inv.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got '" + kv + "'");
    set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (inv.seed) config.seed = *inv.seed;
  config.validate();
  return config;
}

void print_summary(const RunReport& report) {
  const auto& s = report.stats;
  const double cumulative = report.series.empty() ? 0.0 : report.series.back().cumulative_qos;
  const double last_ma = report.series.empty() ? 0.0 : report.series.back().qos_ma;
  std::cout << "scheme=" << to_string(report.config.scheme) << " seed=" << report.config.seed
            << " requests=" << report.series.size() << " cumulative_qos=" << format_real(cumulative)
            << " final_qos_ma10=" << format_real(last_ma) << " reputation_runs=" << s.reputation_runs
            << " iterations_min=" << s.min_iterations << " iterations_mean=" << format_real(s.mean_iterations)
            << " iterations_max=" << s.max_iterations << " wall_s=" << format_real(s.wall_seconds) << '\n';
}

template <typename T>
std::vector<T> parse_csv_list(const std::string& text, auto convert) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(convert(item));
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experience-reputation trust simulator for crowd-sensing user recruitment.\n"
               "Config precedence: --seed > --set KEY=VALUE > --config file > built-in defaults."};
  app.require_subcommand(1);

  Invocation inv;
  bool log_decisions = false;
  bool dump_population = false;
  auto* simulate = app.add_subcommand("simulate", "Run one simulation and write qos_series.csv and reputation CSVs");
  add_common(*simulate, inv);
  simulate->add_flag("--log-decisions", log_decisions, "Also write decisions.csv (one row per sensing task)");
  simulate->add_flag("--dump-population", dump_population, "Also write population.csv");

  std::size_t replicates = 5;
  std::string fractions = "0,0.05,0.10,0.15,0.20,0.25";
  std::string checkpoints = "10,40,80,160";
  std::string schemes = "trust,average,regression,random";
  auto* sweep = app.add_subcommand("sweep", "Sweep malicious fractions and schemes, write sweep.csv");
  add_common(*sweep, inv);
  sweep->add_option("--replicates", replicates, "Replicate seeds per cell")->capture_default_str();
  sweep->add_option("--fractions", fractions, "Comma-separated malicious fractions")->capture_default_str();
  sweep->add_option("--checkpoints", checkpoints, "Comma-separated request checkpoints")->capture_default_str();
  sweep->add_option("--schemes", schemes, "Comma-separated schemes")->capture_default_str();

  std::size_t steps = 200;
  auto* curve = app.add_subcommand("exp-curve", "Write exp_curve.csv: experience under scripted interaction regimes");
  add_common(*curve, inv);
  curve->add_option("--steps", steps, "Steps per regime")->capture_default_str();

  auto* detect = app.add_subcommand("detect", "Run up to detection_at requests and write detection_table.csv");
  add_common(*detect, inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  SimConfig config;
  try {
    config = resolve_config(inv);
  } catch (const std::exception& e) {
    std::cerr << "ertrust: config error: " << e.what() << '\n';
    return exit_config;
  }

  try {
    const fs::path out = inv.out_dir;
    fs::create_directories(out);

    if (*simulate) {
      std::ofstream log;
      TaskObserver observer;
      if (log_decisions) {
        log.open(out / "decisions.csv", std::ios::binary | std::ios::trunc);
        write_decision_header(log);
        observer = [&](const TaskEvent& ev) { write_decision(log, config.scheme, *ev.decision); };
      }
      const auto report = run_simulation(config, observer);
      write_run_outputs(out, report);
      if (dump_population) {
        std::ofstream pop(out / "population.csv", std::ios::binary | std::ios::trunc);
        write_population(pop, report.population);
      }
      print_summary(report);
    } else if (*sweep) {
      SweepOptions options;
      options.replicates = replicates;
      options.jobs = inv.jobs;
      try {
        options.malicious_fractions = parse_csv_list<double>(fractions, [](const std::string& s) { return std::stod(s); });
        options.checkpoints =
            parse_csv_list<std::size_t>(checkpoints, [](const std::string& s) { return std::stoul(s); });
        options.schemes = parse_csv_list<Scheme>(schemes, [](const std::string& s) { return parse_scheme(s); });
      } catch (const std::exception& e) {
        std::cerr << "ertrust: invalid sweep grid: " << e.what() << '\n';
        return exit_config;
      }
      const auto cells = run_sweep(config, options);
      std::ofstream csv(out / "sweep.csv", std::ios::binary | std::ios::trunc);
      write_sweep(csv, cells);
      std::cout << "sweep cells=" << cells.size() << " replicates=" << replicates << '\n';
    } else if (*curve) {
      const auto points = experience_curves(config.experience, steps);
      std::ofstream csv(out / "exp_curve.csv", std::ios::binary | std::ios::trunc);
      write_exp_curve(csv, points);
      std::cout << "exp-curve rows=" << points.size() << '\n';
    } else if (*detect) {
      if (config.detection_at == 0) config.detection_at = 20;
      config.n_requests = std::min(config.n_requests, config.detection_at);
      const auto report = run_simulation(config);
      write_run_outputs(out, report);
      std::cout << "lowest_fraction bucket malicious low high\n";
      for (const auto& row : report.detection)
        std::cout << format_real(row.fraction) << ' ' << row.bucket_size << ' ' << row.n_malicious << ' '
                  << row.n_low << ' ' << row.n_high << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "ertrust: config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "ertrust: runtime error: " << e.what() << '\n';
    return exit_runtime;
  }
  return exit_ok;
}
