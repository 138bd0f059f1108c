#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "dcs/bench.hpp"
#include "dcs/envs.hpp"
#include "dcs/schedules.hpp"

using namespace dcs;

TEST_CASE("ground truth prefers closed forms") {
  CHECK(ground_truth(make_terminal_chain(1.0), 1000, 1) ==
        doctest::Approx(2.5));
  const auto lqg = make_lqg(0.95, 50);
  CHECK(ground_truth(lqg, 10, 1) == doctest::Approx(*analytic_return(lqg)));
}

TEST_CASE("simulated ground truth is seed-reproducible") {
  const auto task = make_navigation2d(0.999, 130);
  const double a = ground_truth(task, 200, 42);
  const double b = ground_truth(task, 200, 42);
  const double c = ground_truth(task, 200, 43);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a > 0.0);  // the greedy policy collects goal rewards
}

TEST_CASE("uniform strategy MSE matches the analytic variance") {
  const auto task = make_first_step_chain(1.0);
  const RidoConfig cfg{10000, 1000, 1.0, 0};
  const auto result =
      evaluate_strategy(task, Strategy::uniform, 10000, 1000, cfg, 3);
  // Var = f_0 T / Lambda = 10.25 * 10 / 10^4.
  CHECK(result.mse == doctest::Approx(1.025e-2).epsilon(0.10));
}

TEST_CASE("front-loaded fixed schedule approaches the optimal variance") {
  const auto task = make_first_step_chain(1.0);
  DcsCumulative front;
  front.n.assign(10, 1);
  front.n[0] = 10000 - 9;
  const double truth = ground_truth(task, 1, 1);
  std::vector<double> errors(1000);
  for (std::size_t r = 0; r < errors.size(); ++r) {
    const double est = run_fixed(task, front, substream_seed(5, r)).estimate;
    errors[r] = (est - truth) * (est - truth);
  }
  double mse = 0.0;
  for (double e : errors) mse += e;
  mse /= double(errors.size());
  CHECK(mse == doctest::Approx(10.25 / 9991.0).epsilon(0.12));
}

namespace {

class ConstantEnv final : public Environment {
 public:
  State reset(Rng&) const override { return {0.0, 0.0}; }
  std::pair<State, double> step(const State& s, const Action&,
                                Rng&) const override {
    return {{s[0] + 1.0, 0.0}, 0.5};
  }
};

class NullPolicy final : public Policy {
 public:
  Action act(const State&, Rng&) const override { return {0.0, 0.0}; }
};

}  // namespace

TEST_CASE("zero-variance environment gives zero MSE for every strategy") {
  EvalTask task;
  task.env = std::make_shared<ConstantEnv>();
  task.policy = std::make_shared<NullPolicy>();
  task.horizon = 5;
  task.gamma = 0.9;
  task.name = "constant";
  const RidoConfig cfg{100, 10, 1.0, 0};
  for (const auto strategy :
       {Strategy::uniform, Strategy::robust, Strategy::rido}) {
    const auto result = evaluate_strategy(task, strategy, 100, 20, cfg, 9, 50);
    CHECK(result.mse == doctest::Approx(0.0).epsilon(1e-18));
  }
}

TEST_CASE("MSE decreases with the budget") {
  const auto task = make_first_step_chain(1.0);
  const RidoConfig cfg{0, 100, 1.0, 0};
  double prev = 1e300;
  for (const std::uint64_t lambda : {500ull, 1000ull, 2000ull}) {
    const auto result =
        evaluate_strategy(task, Strategy::uniform, lambda, 200, cfg, 11);
    CHECK(result.mse < prev);
    prev = result.mse;
  }
  prev = 1e300;
  for (const std::uint64_t lambda : {500ull, 1000ull, 2000ull}) {
    const auto result =
        evaluate_strategy(task, Strategy::rido, lambda, 200, cfg, 11);
    CHECK(result.mse < prev);
    prev = result.mse;
  }
}

TEST_CASE("robust strategy requires a discount below one") {
  const auto task = make_first_step_chain(1.0);
  const RidoConfig cfg{500, 100, 1.0, 0};
  CHECK_THROWS_AS(evaluate_strategy(task, Strategy::robust, 500, 10, cfg, 1),
                  UnsupportedDiscount);
}

TEST_CASE("proposition plug-in values") {
  // T = 10, Lambda = 10^4: ratio = 10 * 9991 / 10^4.
  CHECK(uniform_vs_optimal_ratio(10, 10000) ==
        doctest::Approx(9.991).epsilon(1e-12));
  // T = 2: 2 (Lambda - 1) / Lambda stays below 2.
  CHECK(uniform_vs_optimal_ratio(2, 10000) ==
        doctest::Approx(2.0 * 9999.0 / 10000.0).epsilon(1e-12));
  CHECK(uniform_vs_optimal_ratio(2, 10000) < 2.0);
  // gamma = 0.5, T = 2: (sqrt 2 + 0.5) / (2 sqrt 2).
  CHECK(robust_ratio_lower_bound(0.5, 2) ==
        doctest::Approx((std::sqrt(2.0) + 0.5) / (2.0 * std::sqrt(2.0)))
            .epsilon(1e-12));

  const auto report = proposition_checks();
  for (std::size_t i = 0; i + 1 < report.uniform_rows.size(); ++i) {
    CHECK(report.uniform_rows[i].ratio < report.uniform_rows[i + 1].ratio);
    CHECK(report.uniform_rows[i].ratio ==
          doctest::Approx(report.uniform_rows[i].closed_form).epsilon(1e-12));
  }
  // The robust sub-optimality bound grows with T at every fixed gamma.
  for (std::size_t i = 0; i + 1 < report.robust_rows.size(); ++i) {
    const auto& a = report.robust_rows[i];
    const auto& b = report.robust_rows[i + 1];
    if (a.gamma == b.gamma) CHECK(a.lower_bound < b.lower_bound);
  }
  CHECK_FALSE(format(report).empty());
}

TEST_CASE("sweep output is deterministic at the library level") {
  SweepSpec spec;
  spec.envs = {{"first_step_chain", 100, std::nullopt}};
  spec.strategies = {Strategy::uniform, Strategy::rido};
  spec.lambdas = {500};
  spec.gammas = {1.0};
  spec.runs = 20;
  spec.seed = 4;
  std::ostringstream a, b;
  run_sweep(spec, a);
  run_sweep(spec, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("first_step_chain,uniform,500") != std::string::npos);
}

TEST_CASE("csv schema") {
  std::ostringstream os;
  write_csv_header(os);
  BenchResult r;
  r.env = "lqg";
  r.strategy = "rido";
  r.lambda = 2000;
  r.gamma = 0.95;
  r.horizon = 50;
  r.batch = 500;
  r.beta = 1.0;
  r.runs = 100;
  r.mse = 0.125;
  r.ci95 = 0.01;
  r.seconds = 0.0;
  write_csv_row(os, r);
  CHECK(os.str() ==
        "env,strategy,lambda,gamma,T,b,beta,runs,mse,ci95,seconds\n"
        "lqg,rido,2000,0.95,50,500,1,100,0.125,0.01,0.000\n");
}
