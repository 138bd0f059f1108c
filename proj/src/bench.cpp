#include "dcs/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "dcs/allocator.hpp"
#include "dcs/envs.hpp"
#include "dcs/schedules.hpp"

namespace dcs {

namespace {

constexpr std::uint64_t kGroundTruthTag = 0x67740000;
constexpr std::uint64_t kReplicationTag = 0x72657000;

std::string fmt(double v, const char* pattern = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

double mean_in_order(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  return m / static_cast<double>(xs.size());
}

}  // namespace

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::uniform:
      return "uniform";
    case Strategy::robust:
      return "robust";
    case Strategy::rido:
      return "rido";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "uniform") return Strategy::uniform;
  if (name == "robust") return Strategy::robust;
  if (name == "rido") return Strategy::rido;
  throw ConfigInvalid("unknown strategy '" + name + "'");
}

double ground_truth(const EvalTask& task, std::size_t count,
                    std::uint64_t seed) {
  if (const auto j = analytic_return(task)) return *j;
  if (count < 1) throw ConfigInvalid("ground_truth: count must be >= 1");
  std::vector<double> returns(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(count); ++r) {
    Rng rng = substream(seed, 0, static_cast<std::uint64_t>(r));
    const auto rewards =
        sample_trajectory(*task.env, *task.policy, task.horizon, rng);
    double g = 1.0;
    double total = 0.0;
    for (double x : rewards) {
      total += g * x;
      g *= task.gamma;
    }
    returns[static_cast<std::size_t>(r)] = total;
  }
  return mean_in_order(returns);
}

BenchResult evaluate_strategy(const EvalTask& task, Strategy strategy,
                              std::uint64_t lambda, std::size_t runs,
                              const RidoConfig& cfg, std::uint64_t seed,
                              std::size_t ground_truth_count) {
  const auto started = std::chrono::steady_clock::now();
  validate(task);
  if (runs == 0) throw ConfigInvalid("evaluate_strategy: runs must be >= 1");

  const double truth = ground_truth(task, ground_truth_count,
                                    substream_seed(seed, kGroundTruthTag));

  DcsCumulative fixed;
  if (strategy == Strategy::uniform) {
    fixed = uniform_dcs(lambda, task.horizon);
  } else if (strategy == Strategy::robust) {
    if (task.gamma >= 1.0) {
      throw UnsupportedDiscount("robust strategy requires gamma < 1");
    }
    fixed = robust_dcs(lambda, task.horizon, task.gamma).n;
  }

  std::vector<double> errors(runs);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(runs); ++r) {
    const std::uint64_t rep_seed =
        substream_seed(seed, kReplicationTag, static_cast<std::uint64_t>(r));
    double estimate;
    if (strategy == Strategy::rido) {
      RidoConfig rep_cfg{lambda, cfg.batch, cfg.beta, rep_seed};
      estimate = run_rido(task, rep_cfg).estimate;
    } else {
      estimate = run_fixed(task, fixed, rep_seed).estimate;
    }
    const double err = estimate - truth;
    errors[static_cast<std::size_t>(r)] = err * err;
  }

  BenchResult out;
  out.env = task.name;
  out.strategy = strategy_name(strategy);
  out.lambda = lambda;
  out.gamma = task.gamma;
  out.horizon = task.horizon;
  out.batch = cfg.batch;
  out.beta = cfg.beta;
  out.runs = runs;
  out.squared_errors = std::move(errors);
  out.mse = mean_in_order(out.squared_errors);
  double ss = 0.0;
  for (double e : out.squared_errors) {
    const double d = e - out.mse;
    ss += d * d;
  }
  const double sd =
      runs >= 2 ? std::sqrt(ss / static_cast<double>(runs - 1)) : 0.0;
  out.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(runs));
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              started)
                    .count();
  return out;
}

double uniform_vs_optimal_ratio(std::size_t horizon, std::uint64_t lambda) {
  SurrogateCoefficients f;
  f.f.assign(horizon, 0.0);
  f.f[0] = 1.0;
  DcsCumulative uniform;
  uniform.n.assign(horizon, lambda / horizon);
  DcsCumulative optimal;
  optimal.n.assign(horizon, 1);
  optimal.n[0] = lambda - static_cast<std::uint64_t>(horizon - 1);
  return deterministic_variance(f, uniform) /
         deterministic_variance(f, optimal);
}

double robust_ratio_lower_bound(double gamma, std::size_t horizon) {
  const auto w = robust_weights(gamma, horizon);
  double sum = 0.0;
  for (double d : w.d) sum += std::sqrt(d);
  return 0.5 * sum / std::sqrt(w.d.front());
}

PropositionReport proposition_checks() {
  PropositionReport report;
  const std::uint64_t lambda = 10000;
  // Horizons dividing the budget keep the integer uniform schedule exact.
  for (std::size_t T : {2ul, 4ul, 5ul, 8ul, 10ul, 20ul, 50ul}) {
    report.uniform_rows.push_back(
        {T, lambda, uniform_vs_optimal_ratio(T, lambda),
         static_cast<double>(T) *
             static_cast<double>(lambda - T + 1) /
             static_cast<double>(lambda)});
  }
  SurrogateCoefficients f;
  for (double gamma : {0.5, 0.9, 0.99}) {
    for (std::size_t T : {2ul, 5ul, 10ul, 20ul}) {
      f.f.assign(T, 0.0);
      f.f[0] = 1.0;
      const double min_budget = robust_min_budget(gamma, T);
      std::uint64_t budget = lambda;
      if (static_cast<double>(budget) < min_budget) continue;
      const auto cont = robust_continuous(budget, T, gamma);
      DcsCumulative optimal;
      optimal.n.assign(T, 1);
      optimal.n[0] = budget - static_cast<std::uint64_t>(T - 1);
      const double robust_var = f.f[0] / cont[0];
      const double ratio = robust_var / deterministic_variance(f, optimal);
      report.robust_rows.push_back(
          {gamma, T, budget, ratio, robust_ratio_lower_bound(gamma, T)});
    }
  }
  return report;
}

std::string format(const PropositionReport& report) {
  std::ostringstream os;
  os << "uniform vs optimal (first-step surrogate)\n";
  os << "T,lambda,ratio,closed_form\n";
  for (const auto& r : report.uniform_rows) {
    os << r.horizon << ',' << r.lambda << ',' << fmt(r.ratio) << ','
       << fmt(r.closed_form) << '\n';
  }
  os << "robust vs optimal (first-step surrogate)\n";
  os << "gamma,T,lambda,ratio,lower_bound\n";
  for (const auto& r : report.robust_rows) {
    os << fmt(r.gamma) << ',' << r.horizon << ',' << r.lambda << ','
       << fmt(r.ratio) << ',' << fmt(r.lower_bound) << '\n';
  }
  return os.str();
}

void write_csv_header(std::ostream& os) {
  os << "env,strategy,lambda,gamma,T,b,beta,runs,mse,ci95,seconds\n";
}

void write_csv_row(std::ostream& os, const BenchResult& r) {
  os << r.env << ',' << r.strategy << ',' << r.lambda << ',' << fmt(r.gamma)
     << ',' << r.horizon << ',' << r.batch << ',' << fmt(r.beta) << ','
     << r.runs << ',' << fmt(r.mse) << ',' << fmt(r.ci95) << ','
     << fmt(r.seconds, "%.3f") << '\n';
}

void write_trace_csv(std::ostream& os, const RidoTrace& trace) {
  if (trace.phase_dcs.empty()) return;
  const std::size_t T = trace.phase_dcs.front().horizon();
  for (std::size_t t = 0; t < T; ++t) {
    os << (t ? "," : "") << 't' << t;
  }
  os << '\n';
  for (const auto& phase : trace.phase_dcs) {
    for (std::size_t t = 0; t < T; ++t) {
      os << (t ? "," : "") << phase.n[t];
    }
    os << '\n';
  }
}

SweepSpec parse_sweep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("sweep: cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid(std::string("sweep: bad JSON: ") + e.what());
  }
  SweepSpec spec;
  try {
    for (const auto& env : j.at("envs")) {
      SweepEnv e;
      e.name = env.at("name").get<std::string>();
      e.batch = env.value("batch", std::uint64_t{0});
      if (env.contains("horizon")) {
        e.horizon = env.at("horizon").get<std::size_t>();
      }
      spec.envs.push_back(std::move(e));
    }
    for (const auto& s : j.at("strategies")) {
      spec.strategies.push_back(parse_strategy(s.get<std::string>()));
    }
    spec.lambdas = j.at("lambdas").get<std::vector<std::uint64_t>>();
    spec.gammas = j.at("gammas").get<std::vector<double>>();
    spec.beta = j.value("beta", 1.0);
    spec.runs = j.value("runs", std::size_t{100});
    spec.seed = j.value("seed", std::uint64_t{1});
    spec.ground_truth_count =
        j.value("ground_truth_count", std::size_t{1000});
    spec.timing = j.value("timing", false);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid(std::string("sweep: bad config: ") + e.what());
  }
  if (spec.envs.empty() || spec.strategies.empty() || spec.lambdas.empty() ||
      spec.gammas.empty()) {
    throw ConfigInvalid("sweep: envs, strategies, lambdas, gammas must be non-empty");
  }
  return spec;
}

void run_sweep(const SweepSpec& spec, std::ostream& os) {
  write_csv_header(os);
  std::uint64_t row = 0;
  for (const auto& env : spec.envs) {
    for (const auto strategy : spec.strategies) {
      for (const auto lambda : spec.lambdas) {
        for (const auto gamma : spec.gammas) {
          const auto task = make_task(env.name, gamma, env.horizon);
          RidoConfig cfg{lambda, env.batch, spec.beta, 0};
          auto result =
              evaluate_strategy(task, strategy, lambda, spec.runs, cfg,
                                substream_seed(spec.seed, 0x726f77, row),
                                spec.ground_truth_count);
          if (!spec.timing) result.seconds = 0.0;
          write_csv_row(os, result);
          ++row;
        }
      }
    }
  }
}

}  // namespace dcs
