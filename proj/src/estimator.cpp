#include "dcs/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace dcs {

namespace {

double mean_of(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  return m / static_cast<double>(xs.size());
}

// Indices sorted by (length desc, insertion asc); trajectories reaching any
// step t' form a prefix of the order.
std::vector<std::uint32_t> longest_first_order(
    const std::vector<std::vector<double>>& trajs, std::size_t horizon) {
  std::vector<std::vector<std::uint32_t>> buckets(horizon + 1);
  for (std::uint32_t i = 0; i < trajs.size(); ++i) {
    const std::size_t len = std::min(trajs[i].size(), horizon);
    buckets[len].push_back(i);
  }
  std::vector<std::uint32_t> order;
  order.reserve(trajs.size());
  for (std::size_t h = horizon + 1; h-- > 1;) {
    order.insert(order.end(), buckets[h].begin(), buckets[h].end());
  }
  return order;
}

}  // namespace

DcsCumulative RewardDataset::per_step_counts(std::size_t horizon) const {
  DcsCumulative out;
  out.n.assign(horizon, 0);
  for (const auto& traj : trajectories_) {
    const std::size_t len = std::min(traj.size(), horizon);
    for (std::size_t t = 0; t < len; ++t) out.n[t] += 1;
  }
  return out;
}

RewardDataset::Columns RewardDataset::columns(std::size_t horizon) const {
  const auto order = longest_first_order(trajectories_, horizon);
  auto counts = per_step_counts(horizon);
  Columns c;
  c.col.resize(horizon);
  for (std::size_t t = 0; t < horizon; ++t) c.col[t].reserve(counts.n[t]);
  for (auto idx : order) {
    const auto& r = trajectories_[idx];
    const std::size_t len = std::min(r.size(), horizon);
    for (std::size_t t = 0; t < len; ++t) c.col[t].push_back(r[t]);
  }
  return c;
}

double estimate_return(const RewardDataset& data, const DcsCumulative& n,
                       double gamma) {
  const std::size_t T = n.horizon();
  for (const auto& traj : data.trajectories()) {
    if (traj.size() > T) {
      throw InconsistentDataset("estimate_return: trajectory longer than horizon");
    }
  }
  const auto counts = data.per_step_counts(T);
  if (counts.n != n.n) {
    throw InconsistentDataset("estimate_return: per-step sample counts disagree with the DCS");
  }
  const auto cols = data.columns(T);
  double total = 0.0;
  double g = 1.0;
  for (std::size_t t = 0; t < T; ++t) {
    if (n.n[t] > 0) {
      double s = 0.0;
      for (double x : cols.col[t]) s += x;
      total += g * s / static_cast<double>(n.n[t]);
    }
    g *= gamma;
  }
  return total;
}

double empirical_std(std::span<const double> samples) {
  const std::size_t count = samples.size();
  if (count < 2) {
    throw InsufficientSamples("empirical_std: need at least 2 samples");
  }
  const double m = mean_of(samples);
  double ss = 0.0;
  for (double x : samples) {
    const double d = x - m;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(count - 1));
}

double empirical_cov(std::span<const double> samples_t,
                     std::span<const double> paired_t,
                     std::span<const double> paired_tp) {
  if (paired_t.empty() || paired_tp.empty()) {
    throw InsufficientSamples("empirical_cov: no paired samples");
  }
  if (paired_t.size() != paired_tp.size()) {
    throw std::invalid_argument("empirical_cov: paired spans differ in length");
  }
  double cross = 0.0;
  for (std::size_t i = 0; i < paired_t.size(); ++i) {
    cross += paired_t[i] * paired_tp[i];
  }
  const double np = static_cast<double>(paired_tp.size());
  return cross / np - mean_of(samples_t) * mean_of(paired_tp);
}

SurrogateCoefficients exact_surrogate(const std::vector<double>& variances,
                                      const UpperTriangular& covariances,
                                      double gamma) {
  const std::size_t T = variances.size();
  std::vector<double> pow_gamma(T, 1.0);
  for (std::size_t t = 1; t < T; ++t) pow_gamma[t] = pow_gamma[t - 1] * gamma;
  SurrogateCoefficients out;
  out.f.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    if (variances[t] < 0.0) {
      throw InvalidMoments("exact_surrogate: negative variance at step " +
                           std::to_string(t));
    }
    double v = pow_gamma[t] * pow_gamma[t] * variances[t];
    for (std::size_t tp = t + 1; tp < T; ++tp) {
      v += 2.0 * pow_gamma[t] * pow_gamma[tp] * covariances.at(t, tp);
    }
    out.f[t] = v;
  }
  return out;
}

double deterministic_variance(const SurrogateCoefficients& coeffs,
                              const DcsCumulative& n) {
  if (coeffs.f.size() != n.horizon()) {
    throw std::invalid_argument("deterministic_variance: size mismatch");
  }
  double total = 0.0;
  for (std::size_t t = 0; t < n.horizon(); ++t) {
    if (n.n[t] == 0) {
      throw ZeroAllocation("deterministic_variance: n[" + std::to_string(t) +
                           "] = 0");
    }
    total += coeffs.f[t] / static_cast<double>(n.n[t]);
  }
  return total;
}

double hoeffding_width(const DcsCumulative& n, double gamma, double delta) {
  if (!(gamma > 0.0) || gamma >= 1.0) {
    throw UnsupportedDiscount("hoeffding_width: requires 0 < gamma < 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("hoeffding_width: delta must be in (0, 1)");
  }
  const std::size_t T = n.horizon();
  const double gT = std::pow(gamma, static_cast<double>(T));
  double sum = 0.0;
  double gt = 1.0;
  for (std::size_t t = 0; t < T; ++t) {
    if (n.n[t] == 0) {
      throw ZeroAllocation("hoeffding_width: n[" + std::to_string(t) + "] = 0");
    }
    const double d = gt * (gt + gt * gamma - 2.0 * gT) / (1.0 - gamma);
    sum += d / static_cast<double>(n.n[t]);
    gt *= gamma;
  }
  return std::sqrt(0.5 * std::log(2.0 / delta) * sum);
}

MomentEstimates compute_moments(const RewardDataset& data,
                                std::size_t horizon) {
  const auto cols = data.columns(horizon);
  MomentEstimates out;
  out.stds.assign(horizon, 0.0);
  out.cov = UpperTriangular(horizon);

  std::vector<double> means(horizon, 0.0);
  for (std::size_t t = 0; t < horizon; ++t) {
    const auto& c = cols.col[t];
    if (c.empty()) continue;
    means[t] = mean_of(c);
    if (c.size() >= 2) out.stds[t] = empirical_std(c);
  }

  struct Pair {
    std::uint32_t t, tp;
  };
  std::vector<Pair> pairs;
  pairs.reserve(horizon * (horizon - 1) / 2);
  for (std::uint32_t t = 0; t + 1 < horizon; ++t) {
    for (std::uint32_t tp = t + 1; tp < horizon; ++tp) {
      if (!cols.col[tp].empty()) pairs.push_back({t, tp});
    }
  }

#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(pairs.size()); ++k) {
    const auto [t, tp] = pairs[static_cast<std::size_t>(k)];
    const auto& ct = cols.col[t];
    const auto& ctp = cols.col[tp];
    const std::size_t np = ctp.size();
    double cross = 0.0;
    for (std::size_t i = 0; i < np; ++i) cross += ct[i] * ctp[i];
    out.cov.at(t, tp) =
        cross / static_cast<double>(np) - means[t] * means[tp];
  }
  return out;
}

MomentEstimates compute_moments_serial(const RewardDataset& data,
                                       std::size_t horizon) {
  const auto order = longest_first_order(data.trajectories(), horizon);
  MomentEstimates out;
  out.stds.assign(horizon, 0.0);
  out.cov = UpperTriangular(horizon);

  std::vector<double> means(horizon, 0.0);
  std::vector<std::size_t> counts(horizon, 0);
  for (std::size_t t = 0; t < horizon; ++t) {
    double sum = 0.0;
    std::size_t cnt = 0;
    for (auto idx : order) {
      const auto& r = data.trajectory(idx);
      if (r.size() <= t) break;  // order is longest-first
      sum += r[t];
      ++cnt;
    }
    counts[t] = cnt;
    if (cnt == 0) continue;
    means[t] = sum / static_cast<double>(cnt);
    if (cnt >= 2) {
      double ss = 0.0;
      for (auto idx : order) {
        const auto& r = data.trajectory(idx);
        if (r.size() <= t) break;
        const double d = r[t] - means[t];
        ss += d * d;
      }
      out.stds[t] = std::sqrt(ss / static_cast<double>(cnt - 1));
    }
  }

  for (std::size_t t = 0; t + 1 < horizon; ++t) {
    for (std::size_t tp = t + 1; tp < horizon; ++tp) {
      if (counts[tp] == 0) continue;
      double cross = 0.0;
      for (auto idx : order) {
        const auto& r = data.trajectory(idx);
        if (r.size() <= tp) break;
        cross += r[t] * r[tp];
      }
      out.cov.at(t, tp) =
          cross / static_cast<double>(counts[tp]) - means[t] * means[tp];
    }
  }
  return out;
}

}  // namespace dcs
