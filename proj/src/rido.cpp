#include "dcs/rido.hpp"

#include <cstdint>

#include "dcs/allocator.hpp"
#include "dcs/schedules.hpp"

namespace dcs {

namespace {

// Canonical collection order within a phase: longest trajectories first.
std::vector<std::size_t> trajectory_lengths(const DcsCounts& counts) {
  std::vector<std::size_t> lengths;
  for (std::size_t h = counts.m.size(); h >= 1; --h) {
    for (std::uint64_t i = 0; i < counts.m[h - 1]; ++i) {
      lengths.push_back(h);
    }
  }
  return lengths;
}

// Per-trajectory sub-streams are keyed by (phase, slot), so the allocation
// chosen for one phase never perturbs the draws of another.
void collect_phase(const EvalTask& task, const DcsCumulative& n,
                   std::uint64_t seed, std::uint64_t phase,
                   RewardDataset& data) {
  const auto lengths = trajectory_lengths(counts_from_cumulative(n));
  const std::size_t base = data.size();
  data.resize_slots(base + lengths.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(lengths.size());
       ++j) {
    Rng rng = substream(seed, phase, static_cast<std::uint64_t>(j));
    data.set(base + static_cast<std::size_t>(j),
             sample_trajectory(*task.env, *task.policy,
                               lengths[static_cast<std::size_t>(j)], rng));
  }
}

}  // namespace

RidoTrace run_rido(const EvalTask& task, const RidoConfig& cfg) {
  validate(task);
  const std::size_t T = task.horizon;
  if (cfg.batch == 0 || cfg.batch % T != 0) {
    throw ConfigInvalid("rido: batch must be a positive multiple of the horizon");
  }
  if (cfg.batch < 2 * T) {
    throw ConfigInvalid("rido: batch must be at least twice the horizon");
  }
  if (cfg.budget == 0 || cfg.budget % cfg.batch != 0) {
    throw ConfigInvalid("rido: budget must be a positive multiple of the batch");
  }
  if (cfg.beta < 1.0) {
    throw InvalidBeta("rido: beta must be >= 1");
  }
  const std::uint64_t phases = cfg.budget / cfg.batch;

  RidoTrace trace;
  DcsCumulative accumulated;
  accumulated.n.assign(T, 0);

  auto run_phase = [&](const DcsCumulative& n, std::uint64_t phase) {
    collect_phase(task, n, cfg.seed, phase, trace.data);
    trace.phase_dcs.push_back(n);
    for (std::size_t t = 0; t < T; ++t) accumulated.n[t] += n.n[t];
  };

  run_phase(uniform_dcs(cfg.batch, T), 0);

  for (std::uint64_t i = 1; i < phases; ++i) {
    const auto moments = compute_moments(trace.data, T);
    const auto bonuses = compute_bonuses(accumulated.n, cfg.beta);
    const auto surrogate =
        empirical_surrogate(moments.stds, moments.cov, bonuses, task.gamma);
    const auto grouped = group_partition(surrogate, cfg.batch);
    const DcsCumulative next =
        grouped.uniform_fallback
            ? uniform_dcs(cfg.batch, T)
            : round_allocation(solve_grouped(grouped), cfg.batch);
    run_phase(next, i);
  }

  trace.cumulative = accumulated;
  trace.estimate = estimate_return(trace.data, accumulated, task.gamma);
  return trace;
}

FixedRunResult run_fixed(const EvalTask& task, const DcsCumulative& n,
                         std::uint64_t seed) {
  validate(task);
  if (n.horizon() != task.horizon) {
    throw ConfigInvalid("run_fixed: DCS horizon disagrees with the task");
  }
  if (!validate_budget(n, n.total())) {
    throw ConfigInvalid("run_fixed: DCS is not a valid strategy");
  }
  FixedRunResult out;
  collect_phase(task, n, seed, 0, out.data);
  out.estimate = estimate_return(out.data, n, task.gamma);
  return out;
}

}  // namespace dcs
