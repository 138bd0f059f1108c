#pragma once

#include <cstdint>
#include <vector>

#include "dcs/core.hpp"
#include "dcs/envs.hpp"
#include "dcs/estimator.hpp"

namespace dcs {

struct RidoConfig {
  std::uint64_t budget = 0;  // total transitions (Lambda)
  std::uint64_t batch = 0;   // per-phase slice (b); b % T == 0, b >= 2T
  double beta = 1.0;         // robustness level, >= 1
  std::uint64_t seed = 1;
};

struct RidoTrace {
  std::vector<DcsCumulative> phase_dcs;  // K entries, each summing to b
  RewardDataset data;                    // accumulated across phases
  DcsCumulative cumulative;              // elementwise sum of phase DCSs
  double estimate = 0.0;
};

// Adaptive loop: phase 0 spends one batch uniformly, every later phase
// re-estimates the reward moments from all accumulated data, builds the
// bonus-inflated surrogate, solves the grouped allocation for the next batch
// and collects it. Identical (task, cfg) gives a bit-identical trace.
RidoTrace run_rido(const EvalTask& task, const RidoConfig& cfg);

struct FixedRunResult {
  RewardDataset data;
  double estimate = 0.0;
};

// Executes a pre-determined DCS (uniform, robust, or anything valid) and
// returns the dataset plus its return estimate.
FixedRunResult run_fixed(const EvalTask& task, const DcsCumulative& n,
                         std::uint64_t seed);

}  // namespace dcs
