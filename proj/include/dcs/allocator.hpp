#pragma once

#include <cstdint>
#include <vector>

#include "dcs/core.hpp"
#include "dcs/estimator.hpp"

namespace dcs {

// Optimistic inflation of the empirical moments, shrinking with the sample
// count at the relevant step. The covariance bonus depends only on the later
// step of the pair.
struct ExplorationBonuses {
  std::vector<double> sigma;          // C^sigma_t
  std::vector<double> cov_by_later;   // C^c for pairs ending at this step
  double beta = 1.0;

  double cov(std::size_t /*t*/, std::size_t tp) const {
    return cov_by_later[tp];
  }
};

// C^sigma_t = sqrt(2 log(beta) / prior_counts[t]),
// C^c_{t,t'} = 3 sqrt(2 log(beta) / prior_counts[t']).
// Throws InvalidBeta when beta < 1.
ExplorationBonuses compute_bonuses(const std::vector<std::uint64_t>& prior_counts,
                                   double beta);

// f_t = gamma^{2t} (std_t + C^sigma_t)^2
//       + 2 sum_{t'>t} gamma^{t+t'} (cov_{t,t'} + C^c_{t,t'}).
// Entries may be negative.
SurrogateCoefficients empirical_surrogate(const std::vector<double>& stds,
                                          const UpperTriangular& covs,
                                          const ExplorationBonuses& bonuses,
                                          double gamma);

// Contiguous partition of {0..T-1} with pooled numerators, all >= 0 outside
// the uniform-fallback sentinel.
struct GroupedProblem {
  struct Group {
    std::size_t start = 0;
    std::size_t len = 0;
    double pooled = 0.0;
  };

  bool uniform_fallback = false;
  std::vector<Group> groups;
  std::uint64_t budget = 0;

  std::size_t horizon() const;
};

// Left-to-right scan: a negative coefficient opens a group extended to the
// smallest q with a non-negative running sum. When no such q exists at step
// tbar: tbar == 0 yields the uniform-fallback sentinel; otherwise the group
// holding tbar-1 is extended through T-1 keeping its pooled numerator and the
// negative tail coefficients are dropped.
GroupedProblem group_partition(const SurrogateCoefficients& coeffs,
                               std::uint64_t budget);

struct ContinuousAllocation {
  std::vector<double> values;
};

// Minimizes sum_g F_g / y_g subject to sum_g l_g y_g = budget,
// y_g >= y_{g+1} >= 1, then expands to one value per step. Neyman points per
// group, pool-adjacent-violators on the chain constraint, clamp-to-one passes
// iterated to a fixpoint. Throws InfeasibleBudget when budget < T.
ContinuousAllocation solve_grouped(const GroupedProblem& problem);

// floor everything, then +1 on the first (budget - sum of floors) steps.
// Preserves monotonicity and gives an exact-budget integer DCS.
// Throws BudgetMismatch when the continuous total is off by more than 0.5.
DcsCumulative round_allocation(const ContinuousAllocation& allocation,
                               std::uint64_t budget);

struct OracleResult {
  DcsCumulative n;
  double value = 0.0;
};

// Exhaustive minimizer of sum_t f_t / n_t over monotone integer vectors with
// n_t >= 1 and total <= budget; ties break toward the lexicographically
// largest vector. Throws InstanceTooLarge beyond the enumeration bound.
OracleResult brute_force_oracle(const SurrogateCoefficients& coeffs,
                                std::uint64_t budget);

}  // namespace dcs
