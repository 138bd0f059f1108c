#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcs/core.hpp"
#include "dcs/estimator.hpp"
#include "dcs/rng.hpp"

namespace dcs {

using State = std::array<double, 2>;
using Action = std::array<double, 2>;

class Environment {
 public:
  virtual ~Environment() = default;
  virtual State reset(Rng& rng) const = 0;
  // Pure function of (state, action, rng draws); the horizon is imposed by
  // the collector, not the environment.
  virtual std::pair<State, double> step(const State& s, const Action& a,
                                        Rng& rng) const = 0;
};

// Markov policy; stateless between calls.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual Action act(const State& s, Rng& rng) const = 0;
};

// s0 from the initial distribution, then h policy/transition draws; returns
// (R_0, ..., R_{h-1}).
std::vector<double> sample_trajectory(const Environment& env,
                                      const Policy& policy, std::size_t h,
                                      Rng& rng);

// 10-step chain, uniform-random binary policy. Reward is zero everywhere
// except one step, where it is the 0.5/0.5 mixture of N(3,10) and N(2,10)
// (mean/variance convention). Terminal variant rewards at t = 9, first-step
// variant at t = 0.
EvalTask make_terminal_chain(double gamma);
EvalTask make_first_step_chain(double gamma);

// 1-D linear system s' = s + (a + xi) + eta with xi, eta ~ N(0, 0.1),
// s0 ~ U[-80, 80], reward -(s^2 + (a + xi)^2) (cost emitted as negative
// reward so "return" means the same thing in every environment). The policy
// is the optimal linear gain from the discounted Riccati fixed point.
EvalTask make_lqg(double gamma, std::size_t horizon = 50);

// 2-D room [0, 92]^2 with clamped noisy dynamics, goal ball of radius 1 at
// (91, 91) paying N(1, 1), start uniform on [0, 5]^2, greedy clamped policy.
// The default horizon leaves the greedy policy enough steps to reach the
// goal region from anywhere in the start area.
EvalTask make_navigation2d(double gamma, std::size_t horizon = 130);

// Factory keyed by the CLI names: terminal_chain, first_step_chain, lqg,
// navigation. Throws ConfigInvalid for unknown names or horizon overrides on
// the fixed-horizon chains.
EvalTask make_task(const std::string& name, double gamma,
                   std::optional<std::size_t> horizon = std::nullopt);

// Closed-form expected return where available (chains, LQG); nullopt means
// simulate.
std::optional<double> analytic_return(const EvalTask& task);

// Closed-form surrogate coefficients; available for the chains only.
std::optional<SurrogateCoefficients> analytic_surrogate(const EvalTask& task);

// Scalar discounted Riccati fixed point for unit state/action costs and
// integrator dynamics, iterated to 1e-12.
double lqg_riccati_value(double gamma);
double lqg_riccati_gain(double gamma);

inline constexpr double kChainRewardMean = 2.5;
inline constexpr double kChainRewardVar = 10.25;  // 10 + 0.25 mixture spread

}  // namespace dcs
