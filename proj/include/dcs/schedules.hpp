#pragma once

#include <cstdint>
#include <vector>

#include "dcs/allocator.hpp"
#include "dcs/core.hpp"

namespace dcs {

// Discount-driven weights d_t = gamma^t (gamma^t + gamma^{t+1} - 2 gamma^T) / (1 - gamma);
// strictly decreasing in t for gamma < 1.
struct RobustWeights {
  std::vector<double> d;
};

// Throws UnsupportedDiscount unless 0 < gamma < 1.
RobustWeights robust_weights(double gamma, std::size_t horizon);

// n_t = budget / T for every t. Throws IndivisibleBudget when T does not
// divide the budget.
DcsCumulative uniform_dcs(std::uint64_t budget, std::size_t horizon);

// Continuous schedule proportional to sqrt(d_t), normalized to the budget.
std::vector<double> robust_continuous(std::uint64_t budget,
                                      std::size_t horizon, double gamma);

// Smallest budget for which the sqrt(d_t)-proportional schedule keeps
// n_{T-1} >= 1: sum_t sqrt(d_t) / sqrt(d_{T-1}).
double robust_min_budget(double gamma, std::size_t horizon);

struct RobustSchedule {
  DcsCumulative n;
  bool used_fallback = false;  // budget below the proportional regime
};

// sqrt(d_t)-proportional schedule rounded via round_allocation; falls back to
// the uniform schedule (flagged) when budget < robust_min_budget.
RobustSchedule robust_dcs(std::uint64_t budget, std::size_t horizon,
                          double gamma);

}  // namespace dcs
