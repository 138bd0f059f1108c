#include "dcs/schedules.hpp"

#include <cmath>

namespace dcs {

RobustWeights robust_weights(double gamma, std::size_t horizon) {
  if (!(gamma > 0.0) || gamma >= 1.0) {
    throw UnsupportedDiscount("robust_weights: requires 0 < gamma < 1");
  }
  if (horizon == 0) {
    throw ConfigInvalid("robust_weights: horizon must be >= 1");
  }
  RobustWeights out;
  out.d.resize(horizon);
  const double gT = std::pow(gamma, static_cast<double>(horizon));
  double gt = 1.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    out.d[t] = gt * (gt + gt * gamma - 2.0 * gT) / (1.0 - gamma);
    gt *= gamma;
  }
  return out;
}

DcsCumulative uniform_dcs(std::uint64_t budget, std::size_t horizon) {
  if (horizon == 0) {
    throw ConfigInvalid("uniform_dcs: horizon must be >= 1");
  }
  if (budget % horizon != 0) {
    throw IndivisibleBudget("uniform_dcs: budget " + std::to_string(budget) +
                            " not divisible by horizon " +
                            std::to_string(horizon));
  }
  DcsCumulative n;
  n.n.assign(horizon, budget / horizon);
  return n;
}

std::vector<double> robust_continuous(std::uint64_t budget,
                                      std::size_t horizon, double gamma) {
  const auto w = robust_weights(gamma, horizon);
  double denom = 0.0;
  std::vector<double> root(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    root[t] = std::sqrt(w.d[t]);
    denom += root[t];
  }
  std::vector<double> out(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    out[t] = static_cast<double>(budget) * root[t] / denom;
  }
  return out;
}

double robust_min_budget(double gamma, std::size_t horizon) {
  const auto w = robust_weights(gamma, horizon);
  double sum = 0.0;
  for (double d : w.d) sum += std::sqrt(d);
  return sum / std::sqrt(w.d.back());
}

RobustSchedule robust_dcs(std::uint64_t budget, std::size_t horizon,
                          double gamma) {
  const double min_budget = robust_min_budget(gamma, horizon);
  if (static_cast<double>(budget) < min_budget) {
    return {uniform_dcs(budget, horizon), true};
  }
  ContinuousAllocation cont{robust_continuous(budget, horizon, gamma)};
  return {round_allocation(cont, budget), false};
}

}  // namespace dcs
