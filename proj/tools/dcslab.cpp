// Command-line front end: single runs, declarative sweeps, the enumeration
// oracle, pre-determined schedules, and adaptive per-phase traces. All
// randomness is controlled by --seed.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"

#include "dcs/allocator.hpp"
#include "dcs/bench.hpp"
#include "dcs/envs.hpp"
#include "dcs/rido.hpp"
#include "dcs/schedules.hpp"

namespace {

struct CommonOpts {
  std::string env;
  double gamma = 1.0;
  std::uint64_t lambda = 0;
  std::optional<std::size_t> horizon;
  std::uint64_t seed = 1;
  int threads = 0;
};

std::optional<std::size_t> horizon_opt(std::size_t h) {
  return h > 0 ? std::optional<std::size_t>(h) : std::nullopt;
}

void print_dcs(std::ostream& os, const dcs::DcsCumulative& n) {
  for (std::size_t t = 0; t < n.horizon(); ++t) {
    os << (t ? "," : "") << 't' << t;
  }
  os << '\n';
  for (std::size_t t = 0; t < n.horizon(); ++t) {
    os << (t ? "," : "") << n.n[t];
  }
  os << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw dcs::ConfigInvalid("cannot open output file '" + path + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo policy evaluation with truncated-trajectory budget allocation"};
  app.require_subcommand(1);

  std::string env_name, strategy_name = "uniform", out_path, config_path;
  double gamma = 1.0, beta = 1.0;
  std::uint64_t lambda = 0, batch = 0, seed = 1;
  std::size_t runs = 100, horizon_flag = 0, gt_count = 1000;
  int threads = 0;
  bool timing = false;

  auto* run = app.add_subcommand("run", "Evaluate one strategy, write one CSV row");
  run->add_option("--env", env_name, "terminal_chain|first_step_chain|lqg|navigation")->required();
  run->add_option("--strategy", strategy_name, "uniform|robust|rido")->required();
  run->add_option("--lambda", lambda, "interaction budget")->required();
  run->add_option("--gamma", gamma, "discount factor (default 1.0)");
  run->add_option("--batch", batch, "rido mini-batch size");
  run->add_option("--beta", beta, "rido robustness level (default 1.0)");
  run->add_option("--runs", runs, "replications (default 100)");
  run->add_option("--seed", seed, "master seed (default 1)");
  run->add_option("--out", out_path, "CSV output path (default stdout)");
  run->add_option("--horizon", horizon_flag, "horizon override (lqg/navigation)");
  run->add_option("--gt-count", gt_count, "simulated ground-truth trajectories");
  run->add_option("--threads", threads, "OpenMP thread count (default all)");
  run->add_flag("--timing", timing, "write measured wall-clock seconds");

  auto* sweep = app.add_subcommand("sweep", "Run the cross product described by a JSON config");
  sweep->add_option("--config", config_path, "sweep config file")->required();
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");
  sweep->add_option("--seed", seed, "override the config seed");
  sweep->add_option("--threads", threads, "OpenMP thread count (default all)");

  auto* oracle = app.add_subcommand("oracle", "Brute-force optimal DCS on the analytic surrogate");
  oracle->add_option("--env", env_name, "terminal_chain|first_step_chain")->required();
  oracle->add_option("--lambda", lambda, "interaction budget")->required();
  oracle->add_option("--gamma", gamma, "discount factor (default 1.0)");

  auto* schedule = app.add_subcommand("schedule", "Print a pre-determined DCS");
  schedule->add_option("--strategy", strategy_name, "uniform|robust")->required();
  schedule->add_option("--lambda", lambda, "interaction budget")->required();
  schedule->add_option("--gamma", gamma, "discount factor (robust only)");
  schedule->add_option("--horizon", horizon_flag, "horizon")->required();

  auto* trace = app.add_subcommand("trace", "Dump the adaptive per-phase DCS of one run");
  trace->add_option("--env", env_name, "environment name")->required();
  trace->add_option("--lambda", lambda, "interaction budget")->required();
  trace->add_option("--batch", batch, "mini-batch size")->required();
  trace->add_option("--beta", beta, "robustness level (default 1.0)");
  trace->add_option("--seed", seed, "master seed (default 1)");
  trace->add_option("--out", out_path, "CSV output path (default stdout)")->required();
  trace->add_option("--gamma", gamma, "discount factor (default 1.0)");
  trace->add_option("--horizon", horizon_flag, "horizon override (lqg/navigation)");
  trace->add_option("--threads", threads, "OpenMP thread count (default all)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (threads > 0) omp_set_num_threads(threads);

    if (run->parsed()) {
      const auto task = dcs::make_task(env_name, gamma, horizon_opt(horizon_flag));
      const auto strategy = dcs::parse_strategy(strategy_name);
      if (strategy == dcs::Strategy::rido && batch == 0) {
        throw dcs::ConfigInvalid("run: rido requires --batch");
      }
      dcs::RidoConfig cfg{lambda, batch, beta, 0};
      auto result = dcs::evaluate_strategy(task, strategy, lambda, runs, cfg,
                                           seed, gt_count);
      if (!timing) result.seconds = 0.0;
      if (out_path.empty()) {
        dcs::write_csv_header(std::cout);
        dcs::write_csv_row(std::cout, result);
      } else {
        auto out = open_out(out_path);
        dcs::write_csv_header(out);
        dcs::write_csv_row(out, result);
      }
    } else if (sweep->parsed()) {
      auto spec = dcs::parse_sweep_file(config_path);
      if (sweep->count("--seed") > 0) spec.seed = seed;
      if (out_path.empty()) {
        dcs::run_sweep(spec, std::cout);
      } else {
        auto out = open_out(out_path);
        dcs::run_sweep(spec, out);
      }
    } else if (oracle->parsed()) {
      const auto task = dcs::make_task(env_name, gamma, std::nullopt);
      const auto surrogate = dcs::analytic_surrogate(task);
      if (!surrogate) {
        throw dcs::ConfigInvalid("oracle: no analytic surrogate for '" + env_name + "'");
      }
      const auto result = dcs::brute_force_oracle(*surrogate, lambda);
      print_dcs(std::cout, result.n);
      std::cout << "value," << result.value << '\n';
    } else if (schedule->parsed()) {
      if (strategy_name == "uniform") {
        print_dcs(std::cout, dcs::uniform_dcs(lambda, horizon_flag));
      } else if (strategy_name == "robust") {
        const auto sched = dcs::robust_dcs(lambda, horizon_flag, gamma);
        if (sched.used_fallback) {
          std::cerr << "warning: budget below the proportional regime; "
                       "falling back to the uniform schedule\n";
        }
        print_dcs(std::cout, sched.n);
      } else {
        throw dcs::ConfigInvalid("schedule: strategy must be uniform or robust");
      }
    } else if (trace->parsed()) {
      const auto task = dcs::make_task(env_name, gamma, horizon_opt(horizon_flag));
      dcs::RidoConfig cfg{lambda, batch, beta, seed};
      const auto result = dcs::run_rido(task, cfg);
      auto out = open_out(out_path);
      dcs::write_trace_csv(out, result);
      std::cout << "estimate," << result.estimate << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
