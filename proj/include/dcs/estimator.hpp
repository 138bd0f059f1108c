#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dcs/core.hpp"

namespace dcs {

// Strictly-upper-triangular T x T matrix of doubles, stored packed.
class UpperTriangular {
 public:
  UpperTriangular() = default;
  explicit UpperTriangular(std::size_t t_count)
      : t_(t_count), v_(t_count >= 2 ? t_count * (t_count - 1) / 2 : 0, 0.0) {}

  double& at(std::size_t t, std::size_t tp) { return v_[index(t, tp)]; }
  double at(std::size_t t, std::size_t tp) const { return v_[index(t, tp)]; }
  std::size_t size() const { return t_; }

 private:
  std::size_t index(std::size_t t, std::size_t tp) const {
    // requires t < tp < T
    return t * t_ - t * (t + 1) / 2 + (tp - t - 1);
  }

  std::size_t t_ = 0;
  std::vector<double> v_;
};

// Reward sequences kept per trajectory so that, for any t < t', the samples
// at t that have a partner at t' (trajectories longer than t') stay
// recoverable without duplication.
class RewardDataset {
 public:
  void reserve(std::size_t count) { trajectories_.reserve(count); }
  void add(std::vector<double> rewards) {
    trajectories_.push_back(std::move(rewards));
  }
  // Preallocation hook for parallel fills; slots are written via set().
  void resize_slots(std::size_t count) { trajectories_.resize(count); }
  void set(std::size_t slot, std::vector<double> rewards) {
    trajectories_[slot] = std::move(rewards);
  }

  std::size_t size() const { return trajectories_.size(); }
  const std::vector<double>& trajectory(std::size_t i) const {
    return trajectories_[i];
  }
  const std::vector<std::vector<double>>& trajectories() const {
    return trajectories_;
  }

  DcsCumulative per_step_counts(std::size_t horizon) const;

  // Per-step sample columns ordered longest-trajectory-first, so for t < t'
  // the first n_{t'} entries of column t are exactly the samples whose
  // trajectory also reaches t', aligned index-by-index with column t'.
  struct Columns {
    std::vector<std::vector<double>> col;
  };
  Columns columns(std::size_t horizon) const;

 private:
  std::vector<std::vector<double>> trajectories_;
};

// Per-step coefficients f_t weighting 1/n_t in the variance surrogate.
struct SurrogateCoefficients {
  std::vector<double> f;
};

// Truncated-trajectory return estimate: sum over trajectories of
// sum_t gamma^t R_t / n_t. Throws InconsistentDataset when the dataset's
// per-step counts disagree with n.
double estimate_return(const RewardDataset& data, const DcsCumulative& n,
                       double gamma);

// sqrt of the unbiased sample variance, equal to the pairwise U-statistic
// sqrt( (1/(n(n-1))) sum_{i<j} (x_i - x_j)^2 ). Needs >= 2 samples.
double empirical_std(std::span<const double> samples);

// Asymmetric plug-in covariance for t < t':
//   (1/n_{t'}) sum_i R_t^(i) R_{t'}^(i)  -  mean(all n_t samples at t) * mean(n_{t'} samples at t').
// paired_t / paired_tp are the aligned sample prefixes from trajectories
// longer than t'; samples_t is the full step-t sample list.
double empirical_cov(std::span<const double> samples_t,
                     std::span<const double> paired_t,
                     std::span<const double> paired_tp);

// f_t = gamma^{2t} Var(R_t) + 2 sum_{t'>t} gamma^{t+t'} Cov(R_t, R_{t'}).
// Throws InvalidMoments when a variance is negative.
SurrogateCoefficients exact_surrogate(const std::vector<double>& variances,
                                      const UpperTriangular& covariances,
                                      double gamma);

// sum_t f_t / n_t; the exact estimator variance under a deterministic DCS.
double deterministic_variance(const SurrogateCoefficients& coeffs,
                              const DcsCumulative& n);

// Half-width of the (1-delta) confidence interval
//   sqrt( (1/2) log(2/delta) sum_t d_t / n_t ),
// d_t = gamma^t (gamma^t + gamma^{t+1} - 2 gamma^T) / (1 - gamma).
// Only defined for gamma < 1.
double hoeffding_width(const DcsCumulative& n, double gamma, double delta);

struct MomentEstimates {
  std::vector<double> stds;  // per-step empirical standard deviations
  UpperTriangular cov;       // pairwise plug-in covariances, t < t'
};

// Column-based kernel, pairwise covariances computed in parallel.
MomentEstimates compute_moments(const RewardDataset& data,
                                std::size_t horizon);

// Straightforward trajectory-indexed reference used to cross-check the
// parallel kernel.
MomentEstimates compute_moments_serial(const RewardDataset& data,
                                       std::size_t horizon);

}  // namespace dcs
