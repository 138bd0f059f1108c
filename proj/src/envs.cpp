#include "dcs/envs.hpp"

#include <algorithm>
#include <cmath>

namespace dcs {

namespace {

constexpr std::size_t kChainHorizon = 10;
constexpr double kChainNoiseStd = 3.1622776601683795;  // sqrt(10)
constexpr double kLqgNoiseStd = 0.31622776601683794;   // sqrt(0.1)
constexpr double kLqgInitHalfWidth = 80.0;
constexpr double kNavBound = 92.0;
constexpr double kNavGoal = 91.0;
constexpr double kNavStartMax = 5.0;
constexpr double kNavStepNoiseStd = 0.31622776601683794;  // sqrt(0.1)

class ChainEnv final : public Environment {
 public:
  explicit ChainEnv(std::size_t reward_step) : reward_step_(reward_step) {}

  State reset(Rng&) const override { return {0.0, 0.0}; }

  std::pair<State, double> step(const State& s, const Action& a,
                                Rng& rng) const override {
    const auto t = static_cast<std::size_t>(s[0]);
    double reward = 0.0;
    if (t == reward_step_) {
      const double mean = (a[0] < 0.5) ? 3.0 : 2.0;
      reward = rng.normal(mean, kChainNoiseStd);
    }
    return {{s[0] + 1.0, 0.0}, reward};
  }

 private:
  std::size_t reward_step_;
};

class UniformBinaryPolicy final : public Policy {
 public:
  Action act(const State&, Rng& rng) const override {
    return {static_cast<double>(rng.uniform_int(2)), 0.0};
  }
};

class LqgEnv final : public Environment {
 public:
  State reset(Rng& rng) const override {
    return {rng.uniform(-kLqgInitHalfWidth, kLqgInitHalfWidth), 0.0};
  }

  std::pair<State, double> step(const State& s, const Action& a,
                                Rng& rng) const override {
    const double executed = a[0] + rng.normal(0.0, kLqgNoiseStd);
    const double eta = rng.normal(0.0, kLqgNoiseStd);
    const double reward = -(s[0] * s[0] + executed * executed);
    return {{s[0] + executed + eta, 0.0}, reward};
  }
};

class LqgPolicy final : public Policy {
 public:
  explicit LqgPolicy(double gain) : gain_(gain) {}
  Action act(const State& s, Rng&) const override {
    return {-gain_ * s[0], 0.0};
  }

 private:
  double gain_;
};

class NavigationEnv final : public Environment {
 public:
  State reset(Rng& rng) const override {
    return {rng.uniform(0.0, kNavStartMax), rng.uniform(0.0, kNavStartMax)};
  }

  std::pair<State, double> step(const State& s, const Action& a,
                                Rng& rng) const override {
    const double q0 = rng.normal(a[0], kNavStepNoiseStd);
    const double q1 = rng.normal(a[1], kNavStepNoiseStd);
    State next{std::clamp(s[0] + q0, 0.0, kNavBound),
               std::clamp(s[1] + q1, 0.0, kNavBound)};
    const double dx = next[0] - kNavGoal;
    const double dy = next[1] - kNavGoal;
    double reward = 0.0;
    if (dx * dx + dy * dy <= 1.0) {
      reward = rng.normal(1.0, 1.0);
    }
    return {next, reward};
  }
};

class GreedyGoalPolicy final : public Policy {
 public:
  Action act(const State& s, Rng&) const override {
    return {std::clamp(kNavGoal - s[0], -1.0, 1.0),
            std::clamp(kNavGoal - s[1], -1.0, 1.0)};
  }
};

EvalTask make_chain(std::size_t reward_step, double gamma, std::string name) {
  EvalTask task;
  task.env = std::make_shared<ChainEnv>(reward_step);
  task.policy = std::make_shared<UniformBinaryPolicy>();
  task.horizon = kChainHorizon;
  task.gamma = gamma;
  task.name = std::move(name);
  validate(task);
  return task;
}

}  // namespace

std::vector<double> sample_trajectory(const Environment& env,
                                      const Policy& policy, std::size_t h,
                                      Rng& rng) {
  std::vector<double> rewards(h);
  State s = env.reset(rng);
  for (std::size_t t = 0; t < h; ++t) {
    const Action a = policy.act(s, rng);
    auto [next, reward] = env.step(s, a, rng);
    rewards[t] = reward;
    s = next;
  }
  return rewards;
}

EvalTask make_terminal_chain(double gamma) {
  return make_chain(kChainHorizon - 1, gamma, "terminal_chain");
}

EvalTask make_first_step_chain(double gamma) {
  return make_chain(0, gamma, "first_step_chain");
}

EvalTask make_lqg(double gamma, std::size_t horizon) {
  EvalTask task;
  task.env = std::make_shared<LqgEnv>();
  task.policy = std::make_shared<LqgPolicy>(lqg_riccati_gain(gamma));
  task.horizon = horizon;
  task.gamma = gamma;
  task.name = "lqg";
  validate(task);
  return task;
}

EvalTask make_navigation2d(double gamma, std::size_t horizon) {
  EvalTask task;
  task.env = std::make_shared<NavigationEnv>();
  task.policy = std::make_shared<GreedyGoalPolicy>();
  task.horizon = horizon;
  task.gamma = gamma;
  task.name = "navigation";
  validate(task);
  return task;
}

EvalTask make_task(const std::string& name, double gamma,
                   std::optional<std::size_t> horizon) {
  if (name == "terminal_chain" || name == "first_step_chain") {
    if (horizon && *horizon != kChainHorizon) {
      throw ConfigInvalid("make_task: the chains have a fixed horizon of 10");
    }
    return name == "terminal_chain" ? make_terminal_chain(gamma)
                                    : make_first_step_chain(gamma);
  }
  if (name == "lqg") {
    return make_lqg(gamma, horizon.value_or(50));
  }
  if (name == "navigation") {
    return make_navigation2d(gamma, horizon.value_or(130));
  }
  throw ConfigInvalid("make_task: unknown environment '" + name + "'");
}

std::optional<double> analytic_return(const EvalTask& task) {
  if (task.name == "terminal_chain") {
    return std::pow(task.gamma, static_cast<double>(kChainHorizon - 1)) *
           kChainRewardMean;
  }
  if (task.name == "first_step_chain") {
    return kChainRewardMean;
  }
  if (task.name == "lqg") {
    const double gain = lqg_riccati_gain(task.gamma);
    // Second-moment recursion of the closed-loop state:
    // v' = (1-K)^2 v + Var(xi) + Var(eta); E R_t = -((1+K^2) v_t + Var(xi)).
    double v = kLqgInitHalfWidth * kLqgInitHalfWidth / 3.0;
    const double noise_var = kLqgNoiseStd * kLqgNoiseStd;
    double j = 0.0;
    double g = 1.0;
    for (std::size_t t = 0; t < task.horizon; ++t) {
      j += g * -((1.0 + gain * gain) * v + noise_var);
      v = (1.0 - gain) * (1.0 - gain) * v + 2.0 * noise_var;
      g *= task.gamma;
    }
    return j;
  }
  return std::nullopt;
}

std::optional<SurrogateCoefficients> analytic_surrogate(const EvalTask& task) {
  std::size_t reward_step;
  if (task.name == "terminal_chain") {
    reward_step = kChainHorizon - 1;
  } else if (task.name == "first_step_chain") {
    reward_step = 0;
  } else {
    return std::nullopt;
  }
  SurrogateCoefficients out;
  out.f.assign(kChainHorizon, 0.0);
  out.f[reward_step] =
      std::pow(task.gamma, 2.0 * static_cast<double>(reward_step)) *
      kChainRewardVar;
  return out;
}

double lqg_riccati_value(double gamma) {
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw ConfigInvalid("lqg_riccati_value: discount must lie in (0, 1]");
  }
  double p = 1.0;
  for (int it = 0; it < 1000000; ++it) {
    const double gp = gamma * p;
    const double next = 1.0 + gp - gp * gp / (1.0 + gp);
    if (std::abs(next - p) < 1e-12) return next;
    p = next;
  }
  return p;
}

double lqg_riccati_gain(double gamma) {
  const double p = lqg_riccati_value(gamma);
  return gamma * p / (1.0 + gamma * p);
}

}  // namespace dcs
