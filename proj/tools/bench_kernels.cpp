// Timing harness comparing the serial reference implementations against the
// OpenMP kernels: the moment-estimation kernel on a synthetic dataset and the
// replication loop of the benchmark driver.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include <omp.h>

#include "dcs/bench.hpp"
#include "dcs/envs.hpp"
#include "dcs/estimator.hpp"
#include "dcs/rng.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

dcs::RewardDataset synthetic_dataset(std::size_t trajectories,
                                     std::size_t horizon, std::uint64_t seed) {
  dcs::RewardDataset data;
  data.reserve(trajectories);
  dcs::Rng rng(seed);
  for (std::size_t i = 0; i < trajectories; ++i) {
    const std::size_t len = 1 + rng.uniform_int(horizon);
    std::vector<double> rewards(len);
    for (auto& r : rewards) r = rng.normal(0.0, 1.0);
    data.add(std::move(rewards));
  }
  return data;
}

double max_abs_diff(const dcs::MomentEstimates& a,
                    const dcs::MomentEstimates& b) {
  double worst = 0.0;
  const std::size_t T = a.stds.size();
  for (std::size_t t = 0; t < T; ++t) {
    worst = std::max(worst, std::abs(a.stds[t] - b.stds[t]));
    for (std::size_t tp = t + 1; tp < T; ++tp) {
      worst = std::max(worst, std::abs(a.cov.at(t, tp) - b.cov.at(t, tp)));
    }
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t trajectories = 20000;
  std::size_t horizon = 130;
  int reps = 5;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--trajectories") trajectories = std::stoul(argv[i + 1]);
    if (flag == "--horizon") horizon = std::stoul(argv[i + 1]);
    if (flag == "--reps") reps = std::stoi(argv[i + 1]);
  }

  const int max_threads = omp_get_max_threads();
  std::printf("threads available: %d\n\n", max_threads);

  // Moment kernel: serial reference vs OpenMP columns.
  const auto data = synthetic_dataset(trajectories, horizon, 42);
  dcs::MomentEstimates serial, parallel;
  double t_serial = 0.0, t_parallel = 0.0;
  for (int r = 0; r < reps; ++r) {
    auto s0 = clock_type::now();
    serial = dcs::compute_moments_serial(data, horizon);
    t_serial += seconds_since(s0);
    auto s1 = clock_type::now();
    parallel = dcs::compute_moments(data, horizon);
    t_parallel += seconds_since(s1);
  }
  t_serial /= reps;
  t_parallel /= reps;
  std::printf("moment kernel  (%zu trajectories, T=%zu)\n", trajectories,
              horizon);
  std::printf("  serial reference : %8.3f ms\n", 1e3 * t_serial);
  std::printf("  openmp kernel    : %8.3f ms   (speedup %.2fx)\n",
              1e3 * t_parallel, t_serial / t_parallel);
  std::printf("  max |difference| : %g\n\n", max_abs_diff(serial, parallel));

  // Replication loop: one thread vs all threads.
  const auto task = dcs::make_first_step_chain(1.0);
  dcs::RidoConfig cfg{2000, 200, 1.0, 0};
  omp_set_num_threads(1);
  auto b0 = clock_type::now();
  const auto one = dcs::evaluate_strategy(task, dcs::Strategy::rido, 2000, 100,
                                          cfg, 7);
  const double t_one = seconds_since(b0);
  omp_set_num_threads(max_threads);
  auto b1 = clock_type::now();
  const auto many = dcs::evaluate_strategy(task, dcs::Strategy::rido, 2000,
                                           100, cfg, 7);
  const double t_many = seconds_since(b1);
  std::printf("replication loop (first_step_chain, rido, 100 runs)\n");
  std::printf("  1 thread         : %8.3f ms\n", 1e3 * t_one);
  std::printf("  %d threads        : %8.3f ms   (speedup %.2fx)\n",
              max_threads, 1e3 * t_many, t_one / t_many);
  std::printf("  mse identical    : %s\n",
              one.mse == many.mse ? "yes" : "NO");
  return one.mse == many.mse ? 0 : 1;
}
