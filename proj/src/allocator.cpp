#include "dcs/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dcs {

namespace {

constexpr double kFloorSnap = 1e-9;

struct Block {
  std::size_t group_begin;  // [group_begin, group_end) into problem.groups
  std::size_t group_end;
  double pooled;
  double len;
};

// ratio(a) < ratio(b) with ratio = sqrt(pooled/len), pooled >= 0.
bool ratio_less(const Block& a, const Block& b) {
  return a.pooled * b.len < b.pooled * a.len;
}

void assign_groups(std::size_t lo, std::size_t hi, double value,
                   std::vector<double>& y) {
  for (std::size_t g = lo; g < hi; ++g) y[g] = value;
}

// Solves the chain-constrained problem on groups[lo, hi) with the given
// budget. y is indexed per group.
void solve_range(const std::vector<GroupedProblem::Group>& groups,
                 std::size_t lo, std::size_t hi, double budget,
                 std::vector<double>& y) {
  // Pool adjacent violators: keep per-block Neyman ratios non-increasing.
  std::vector<Block> blocks;
  blocks.reserve(hi - lo);
  for (std::size_t g = lo; g < hi; ++g) {
    blocks.push_back({g, g + 1, groups[g].pooled,
                      static_cast<double>(groups[g].len)});
    while (blocks.size() >= 2 &&
           ratio_less(blocks[blocks.size() - 2], blocks.back())) {
      Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      prev.group_end = top.group_end;
      prev.pooled += top.pooled;
      prev.len += top.len;
    }
  }

  double total_len = 0.0;
  double denom = 0.0;
  for (const auto& b : blocks) {
    total_len += b.len;
    denom += std::sqrt(b.pooled * b.len);
  }

  if (denom <= 0.0) {
    // Only zero numerators left: the objective is indifferent, spread the
    // budget uniformly so monotonicity and the lower bound hold.
    assign_groups(lo, hi, budget / total_len, y);
    return;
  }

  const double scale = budget / denom;
  std::vector<double> vals(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    vals[b] = scale * std::sqrt(blocks[b].pooled / blocks[b].len);
  }

  // vals is non-increasing; blocks below the lower bound form a suffix.
  std::size_t j = blocks.size();
  while (j > 0 && vals[j - 1] < 1.0) --j;

  if (j == blocks.size()) {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      assign_groups(blocks[b].group_begin, blocks[b].group_end,
                    vals[b], y);
    }
    return;
  }
  if (j == 0) {
    // Numerically possible only when budget == total_len.
    const double extra = std::max(0.0, budget - total_len) / total_len;
    assign_groups(lo, hi, 1.0 + extra, y);
    return;
  }

  double clamped_len = 0.0;
  for (std::size_t b = j; b < blocks.size(); ++b) {
    clamped_len += blocks[b].len;
    assign_groups(blocks[b].group_begin, blocks[b].group_end, 1.0, y);
  }
  solve_range(groups, lo, blocks[j].group_begin, budget - clamped_len, y);
}

}  // namespace

ExplorationBonuses compute_bonuses(const std::vector<std::uint64_t>& prior_counts,
                                   double beta) {
  if (beta < 1.0) {
    throw InvalidBeta("compute_bonuses: beta must be >= 1");
  }
  const std::size_t T = prior_counts.size();
  ExplorationBonuses out;
  out.beta = beta;
  out.sigma.resize(T);
  out.cov_by_later.resize(T);
  const double two_log_beta = 2.0 * std::log(beta);
  for (std::size_t t = 0; t < T; ++t) {
    if (prior_counts[t] < 1) {
      throw std::invalid_argument("compute_bonuses: prior count must be >= 1");
    }
    const double base =
        std::sqrt(two_log_beta / static_cast<double>(prior_counts[t]));
    out.sigma[t] = base;
    out.cov_by_later[t] = 3.0 * base;
  }
  return out;
}

SurrogateCoefficients empirical_surrogate(const std::vector<double>& stds,
                                          const UpperTriangular& covs,
                                          const ExplorationBonuses& bonuses,
                                          double gamma) {
  const std::size_t T = stds.size();
  std::vector<double> pow_gamma(T, 1.0);
  for (std::size_t t = 1; t < T; ++t) pow_gamma[t] = pow_gamma[t - 1] * gamma;
  SurrogateCoefficients out;
  out.f.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    const double inflated = stds[t] + bonuses.sigma[t];
    double v = pow_gamma[t] * pow_gamma[t] * inflated * inflated;
    for (std::size_t tp = t + 1; tp < T; ++tp) {
      v += 2.0 * pow_gamma[t] * pow_gamma[tp] *
           (covs.at(t, tp) + bonuses.cov(t, tp));
    }
    out.f[t] = v;
  }
  return out;
}

std::size_t GroupedProblem::horizon() const {
  std::size_t total = 0;
  for (const auto& g : groups) total += g.len;
  return total;
}

GroupedProblem group_partition(const SurrogateCoefficients& coeffs,
                               std::uint64_t budget) {
  const auto& c = coeffs.f;
  const std::size_t T = c.size();
  GroupedProblem out;
  out.budget = budget;
  std::size_t t = 0;
  while (t < T) {
    if (c[t] >= 0.0) {
      out.groups.push_back({t, 1, c[t]});
      ++t;
      continue;
    }
    // Negative opener: extend to the smallest q with non-negative sum.
    double run = c[t];
    std::size_t q = t;
    while (run < 0.0 && q + 1 < T) {
      ++q;
      run += c[q];
    }
    if (run >= 0.0) {
      out.groups.push_back({t, q - t + 1, run});
      t = q + 1;
      continue;
    }
    // No such q exists: tail stays negative from t onward.
    if (t == 0) {
      out.uniform_fallback = true;
      out.groups.clear();
      return out;
    }
    // Extend the group holding t-1 through the end; its pooled numerator is
    // kept and the negative tail coefficients are dropped.
    GroupedProblem::Group prev = out.groups.back();
    out.groups.pop_back();
    out.groups.push_back({prev.start, T - prev.start, prev.pooled});
    return out;
  }
  return out;
}

ContinuousAllocation solve_grouped(const GroupedProblem& problem) {
  if (problem.uniform_fallback) {
    throw std::invalid_argument("solve_grouped: uniform-fallback sentinel");
  }
  if (problem.groups.empty()) {
    throw std::invalid_argument("solve_grouped: empty problem");
  }
  const std::size_t T = problem.horizon();
  if (problem.budget < T) {
    throw InfeasibleBudget("solve_grouped: budget " +
                           std::to_string(problem.budget) +
                           " below horizon " + std::to_string(T));
  }
  for (const auto& g : problem.groups) {
    if (g.pooled < 0.0) {
      throw std::invalid_argument("solve_grouped: negative pooled numerator");
    }
  }

  std::vector<double> y(problem.groups.size(), 0.0);
  solve_range(problem.groups, 0, problem.groups.size(),
              static_cast<double>(problem.budget), y);

  ContinuousAllocation out;
  out.values.resize(T);
  for (std::size_t g = 0; g < problem.groups.size(); ++g) {
    const auto& grp = problem.groups[g];
    for (std::size_t i = 0; i < grp.len; ++i) {
      out.values[grp.start + i] = y[g];
    }
  }
  return out;
}

DcsCumulative round_allocation(const ContinuousAllocation& allocation,
                               std::uint64_t budget) {
  const auto& v = allocation.values;
  double total = 0.0;
  for (double x : v) total += x;
  if (std::abs(total - static_cast<double>(budget)) > 0.5) {
    throw BudgetMismatch("round_allocation: continuous total " +
                         std::to_string(total) + " != budget " +
                         std::to_string(budget));
  }
  DcsCumulative out;
  out.n.resize(v.size());
  std::uint64_t floored = 0;
  for (std::size_t t = 0; t < v.size(); ++t) {
    out.n[t] = static_cast<std::uint64_t>(std::floor(v[t] + kFloorSnap));
    floored += out.n[t];
  }
  if (floored > budget || budget - floored > v.size()) {
    throw BudgetMismatch("round_allocation: rounding residue out of range");
  }
  const std::uint64_t k = budget - floored;
  for (std::uint64_t t = 0; t < k; ++t) out.n[t] += 1;
  return out;
}

namespace {

void enumerate_monotone(const std::vector<double>& f, std::size_t t,
                        std::uint64_t prev_cap, std::uint64_t remaining,
                        double partial, std::vector<std::uint64_t>& current,
                        double& best_value,
                        std::vector<std::uint64_t>& best_n) {
  const std::size_t T = f.size();
  if (t == T) {
    if (partial < best_value) {
      best_value = partial;
      best_n = current;
    }
    return;
  }
  const std::uint64_t steps_left = static_cast<std::uint64_t>(T - t - 1);
  const std::uint64_t cap = std::min<std::uint64_t>(prev_cap, remaining - steps_left);
  // Descend so the lexicographically largest minimizer is reached first;
  // strict improvement then implements the tie-break.
  for (std::uint64_t v = cap; v >= 1; --v) {
    current[t] = v;
    enumerate_monotone(f, t + 1, v, remaining - v,
                       partial + f[t] / static_cast<double>(v), current,
                       best_value, best_n);
  }
}

}  // namespace

OracleResult brute_force_oracle(const SurrogateCoefficients& coeffs,
                                std::uint64_t budget) {
  const std::size_t T = coeffs.f.size();
  if (T == 0) {
    throw std::invalid_argument("brute_force_oracle: empty coefficients");
  }
  if (T > 12 || budget > 60) {
    throw InstanceTooLarge("brute_force_oracle: enumeration bound is T <= 12, budget <= 60");
  }
  if (budget < T) {
    throw InfeasibleBudget("brute_force_oracle: budget below horizon");
  }
  std::vector<std::uint64_t> current(T, 1), best_n;
  double best_value = std::numeric_limits<double>::infinity();
  enumerate_monotone(coeffs.f, 0, budget, budget, 0.0, current, best_value,
                     best_n);
  OracleResult out;
  out.n.n = std::move(best_n);
  out.value = best_value;
  return out;
}

}  // namespace dcs
