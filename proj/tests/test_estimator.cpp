#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "dcs/envs.hpp"
#include "dcs/estimator.hpp"
#include "dcs/rido.hpp"
#include "dcs/rng.hpp"

using namespace dcs;

namespace {

DcsCumulative cumulative(std::vector<std::uint64_t> n) {
  return DcsCumulative{std::move(n)};
}

// Random consistent moments from a factor model: Sigma = B B^T is positive
// semi-definite, so the surrogate built from it obeys the suffix property.
struct RandomMoments {
  std::vector<double> variances;
  UpperTriangular cov;
};

RandomMoments random_psd_moments(std::size_t T, Rng& rng, bool nonnegative) {
  const std::size_t k = 1 + rng.uniform_int(T);
  std::vector<std::vector<double>> b(T, std::vector<double>(k));
  for (auto& row : b) {
    for (auto& x : row) {
      x = nonnegative ? rng.uniform() : rng.normal(0.0, 1.0);
    }
  }
  RandomMoments out;
  out.variances.resize(T);
  out.cov = UpperTriangular(T);
  for (std::size_t t = 0; t < T; ++t) {
    out.variances[t] =
        std::inner_product(b[t].begin(), b[t].end(), b[t].begin(), 0.0);
    for (std::size_t tp = t + 1; tp < T; ++tp) {
      out.cov.at(t, tp) =
          std::inner_product(b[t].begin(), b[t].end(), b[tp].begin(), 0.0);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("estimate_return hand examples") {
  // Two full-length trajectories reduce to the plain Monte Carlo mean.
  RewardDataset uniform_data;
  uniform_data.add({1.0, 2.0});
  uniform_data.add({3.0, 4.0});
  const double g1 = 1.0 + 0.5 * 2.0;
  const double g2 = 3.0 + 0.5 * 4.0;
  CHECK(estimate_return(uniform_data, cumulative({2, 2}), 0.5) ==
        doctest::Approx((g1 + g2) / 2.0).epsilon(1e-12));

  RewardDataset mixed;
  mixed.add({1.0});
  mixed.add({0.0, 1.0});
  CHECK(estimate_return(mixed, cumulative({2, 1}), 0.5) ==
        doctest::Approx(1.0).epsilon(1e-12));

  RewardDataset zeros;
  zeros.add({0.0, 0.0});
  zeros.add({0.0});
  CHECK(estimate_return(zeros, cumulative({2, 1}), 0.7) == 0.0);

  CHECK_THROWS_AS(estimate_return(mixed, cumulative({2, 2}), 0.5),
                  InconsistentDataset);
}

TEST_CASE("empirical_std") {
  const std::vector<double> two{0.0, 1.0};
  CHECK(empirical_std(two) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  const std::vector<double> same{3.7, 3.7, 3.7};
  CHECK(empirical_std(same) == doctest::Approx(0.0));
  const std::vector<double> four{0.0, 0.0, 1.0, 1.0};
  CHECK(empirical_std(four) ==
        doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(empirical_std(one), InsufficientSamples);
}

TEST_CASE("empirical_std matches the pairwise U-statistic") {
  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rng.uniform_int(20);
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.normal(0.0, 2.0);
    double pair_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        pair_sum += (xs[i] - xs[j]) * (xs[i] - xs[j]);
      }
    }
    const double u_stat = std::sqrt(pair_sum / (double(n) * double(n - 1)));
    CHECK(empirical_std(xs) == doctest::Approx(u_stat).epsilon(1e-10));
  }
}

TEST_CASE("empirical_std consistency at large samples") {
  Rng rng(99);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = rng.normal(1.0, 2.0);
  CHECK(empirical_std(xs) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("empirical_cov asymmetric estimator") {
  const std::vector<double> st{0.0, 1.0};
  const std::vector<double> pt{0.0, 1.0};
  const std::vector<double> ptp{0.0, 1.0};
  CHECK(empirical_cov(st, pt, ptp) == doctest::Approx(0.25).epsilon(1e-12));

  const std::vector<double> st3{0.0, 1.0, 1.0};
  CHECK(empirical_cov(st3, pt, ptp) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  // Constant second component cancels when samples_t equals the pair firsts.
  const std::vector<double> firsts{0.3, 0.9, 0.1};
  const std::vector<double> consts{2.0, 2.0, 2.0};
  CHECK(empirical_cov(firsts, firsts, consts) ==
        doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(empirical_cov(st, {}, {}), InsufficientSamples);
}

TEST_CASE("exact_surrogate") {
  UpperTriangular zero(2);
  const auto f1 = exact_surrogate({1.0, 1.0}, zero, 1.0);
  CHECK(f1.f == std::vector<double>{1.0, 1.0});

  UpperTriangular neg(2);
  neg.at(0, 1) = -0.5;
  const auto f2 = exact_surrogate({1.0, 1.0}, neg, 1.0);
  CHECK(f2.f[0] == doctest::Approx(0.0));
  CHECK(f2.f[1] == doctest::Approx(1.0));

  const auto f3 = exact_surrogate({0.0, 0.0, 0.0}, UpperTriangular(3), 0.9);
  for (double v : f3.f) CHECK(v == 0.0);

  CHECK_THROWS_AS(exact_surrogate({-1.0}, UpperTriangular(1), 1.0),
                  InvalidMoments);
}

TEST_CASE("exact_surrogate suffix sums stay non-negative") {
  Rng rng(2024);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t T = 2 + rng.uniform_int(9);
    const auto moments = random_psd_moments(T, rng, false);
    const double gamma = 0.05 + 0.95 * rng.uniform();
    const auto f = exact_surrogate(moments.variances, moments.cov, gamma);
    double suffix = 0.0;
    for (std::size_t t = T; t-- > 0;) {
      suffix += f.f[t];
      CHECK(suffix >= -1e-12);
    }
  }
}

TEST_CASE("deterministic_variance") {
  SurrogateCoefficients f{{1.0, 1.0}};
  CHECK(deterministic_variance(f, cumulative({2, 1})) ==
        doctest::Approx(1.5).epsilon(1e-12));

  // All mass on the first step with the tail at one sample each.
  SurrogateCoefficients first{{4.0, 0.0, 0.0}};
  CHECK(deterministic_variance(first, cumulative({7, 1, 1})) ==
        doctest::Approx(4.0 / 7.0).epsilon(1e-12));

  CHECK_THROWS_AS(deterministic_variance(f, cumulative({2, 0})),
                  ZeroAllocation);
}

TEST_CASE("hoeffding_width") {
  // T = 1 reduces to the standard interval on [0, 1].
  const double w1 = hoeffding_width(cumulative({8}), 0.3, 0.05);
  CHECK(w1 == doctest::Approx(std::sqrt(std::log(2.0 / 0.05) / 16.0))
                  .epsilon(1e-12));

  // gamma = 0.5, T = 2: d = (2.0, 0.25).
  const double w2 = hoeffding_width(cumulative({4, 2}), 0.5, 0.1);
  const double expected =
      std::sqrt(0.5 * std::log(2.0 / 0.1) * (2.0 / 4.0 + 0.25 / 2.0));
  CHECK(w2 == doctest::Approx(expected).epsilon(1e-12));

  // Doubling every count shrinks the width by sqrt(2).
  const double w3 = hoeffding_width(cumulative({8, 4}), 0.5, 0.1);
  CHECK(w2 / w3 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(hoeffding_width(cumulative({4, 2}), 1.0, 0.1),
                  UnsupportedDiscount);
}

TEST_CASE("unbiasedness over replications on the terminal chain") {
  const auto task = make_terminal_chain(1.0);
  const DcsCumulative n = cumulative({4, 4, 4, 4, 4, 4, 4, 4, 4, 2});
  const std::size_t reps = 4000;
  std::vector<double> estimates(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    estimates[r] = run_fixed(task, n, substream_seed(5, r)).estimate;
  }
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= double(reps);
  double var = 0.0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  var /= double(reps - 1);
  const double se = std::sqrt(var / double(reps));
  CHECK(std::abs(mean - kChainRewardMean) <= 4.0 * se);
}

TEST_CASE("empirical estimator variance matches the analytic surrogate") {
  const auto task = make_first_step_chain(1.0);
  const DcsCumulative n = cumulative(std::vector<std::uint64_t>(10, 10));
  const std::size_t reps = 20000;
  std::vector<double> estimates(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    estimates[r] = run_fixed(task, n, substream_seed(11, r)).estimate;
  }
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= double(reps);
  double var = 0.0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  var /= double(reps - 1);
  const auto f = analytic_surrogate(task);
  REQUIRE(f.has_value());
  const double analytic = deterministic_variance(*f, n);
  CHECK(var == doctest::Approx(analytic).epsilon(0.06));
}

TEST_CASE("moment kernel matches hand values on a mixed dataset") {
  RewardDataset data;
  data.add({1.0, 2.0, 0.5});
  data.add({0.0, 1.0});
  data.add({2.0});
  const auto m = compute_moments(data, 3);
  CHECK(m.stds[0] == doctest::Approx(empirical_std(std::vector<double>{1.0, 0.0, 2.0})));
  CHECK(m.stds[1] == doctest::Approx(empirical_std(std::vector<double>{2.0, 1.0})));
  CHECK(m.stds[2] == doctest::Approx(0.0));
  // Pair (0, 1): trajectories of length >= 2, means over all step samples.
  const double mean0 = (1.0 + 0.0 + 2.0) / 3.0;
  const double mean1 = (2.0 + 1.0) / 2.0;
  const double expected01 = (1.0 * 2.0 + 0.0 * 1.0) / 2.0 - mean0 * mean1;
  CHECK(m.cov.at(0, 1) == doctest::Approx(expected01).epsilon(1e-12));
  const double expected02 = (1.0 * 0.5) / 1.0 - mean0 * 0.5;
  CHECK(m.cov.at(0, 2) == doctest::Approx(expected02).epsilon(1e-12));
}
