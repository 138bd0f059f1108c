#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcs/core.hpp"
#include "dcs/rido.hpp"

namespace dcs {

enum class Strategy { uniform, robust, rido };

const char* strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name);

struct BenchResult {
  std::string env;
  std::string strategy;
  std::uint64_t lambda = 0;
  double gamma = 1.0;
  std::size_t horizon = 0;
  std::uint64_t batch = 0;
  double beta = 1.0;
  std::size_t runs = 0;
  std::vector<double> squared_errors;  // one per replication
  double mse = 0.0;
  double ci95 = 0.0;  // normal-approximation half-width over the runs
  double seconds = 0.0;
};

// Closed-form expected return where available, otherwise the mean discounted
// return over `count` full-length trajectories.
double ground_truth(const EvalTask& task, std::size_t count,
                    std::uint64_t seed);

// R independent replications of the strategy at budget `lambda`; each yields
// one squared error against the ground truth. Replications use disjoint seed
// sub-streams and aggregate in index order, so the result is identical for
// any worker count.
BenchResult evaluate_strategy(const EvalTask& task, Strategy strategy,
                              std::uint64_t lambda, std::size_t runs,
                              const RidoConfig& cfg, std::uint64_t seed,
                              std::size_t ground_truth_count = 1000);

// Closed-form sub-optimality checks of the pre-determined schedules on the
// first-step surrogate (f_0 > 0, all later coefficients zero).
struct PropositionReport {
  struct UniformRow {
    std::size_t horizon;
    std::uint64_t lambda;
    double ratio;        // uniform variance / optimal variance
    double closed_form;  // T (Lambda - T + 1) / Lambda
  };
  struct RobustRow {
    double gamma;
    std::size_t horizon;
    std::uint64_t lambda;
    double ratio;        // robust variance / optimal variance
    double lower_bound;  // (1/2) sum sqrt(d_t) / sqrt(d_0)
  };
  std::vector<UniformRow> uniform_rows;
  std::vector<RobustRow> robust_rows;
};

double uniform_vs_optimal_ratio(std::size_t horizon, std::uint64_t lambda);
double robust_ratio_lower_bound(double gamma, std::size_t horizon);
PropositionReport proposition_checks();
std::string format(const PropositionReport& report);

// CSV output: env,strategy,lambda,gamma,T,b,beta,runs,mse,ci95,seconds
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const BenchResult& result);

// Per-phase DCS dump: header t0..t{T-1}, one row per phase.
void write_trace_csv(std::ostream& os, const RidoTrace& trace);

struct SweepEnv {
  std::string name;
  std::uint64_t batch = 0;
  std::optional<std::size_t> horizon;
};

struct SweepSpec {
  std::vector<SweepEnv> envs;
  std::vector<Strategy> strategies;
  std::vector<std::uint64_t> lambdas;
  std::vector<double> gammas;
  double beta = 1.0;
  std::size_t runs = 100;
  std::uint64_t seed = 1;
  std::size_t ground_truth_count = 1000;
  // Wall-clock is measured either way; with timing off the seconds column is
  // written as zero so repeated sweeps with one seed are byte-identical.
  bool timing = false;
};

SweepSpec parse_sweep_file(const std::string& path);

// Full cross product env x strategy x lambda x gamma, one CSV row each.
void run_sweep(const SweepSpec& spec, std::ostream& os);

}  // namespace dcs
