#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dcs/errors.hpp"

namespace dcs {

class Environment;
class Policy;

// Trajectories-per-length view of a data collection strategy.
// m[h-1] = number of trajectories of length h, for h = 1..T.
struct DcsCounts {
  std::vector<std::uint64_t> m;

  std::size_t horizon() const { return m.size(); }
  // Total transitions the strategy consumes: sum_h m_h * h.
  std::uint64_t transitions() const;
};

// Samples-per-timestep view; n[t] = samples collected at step t, t = 0..T-1.
// Valid strategies are monotone non-increasing in t.
struct DcsCumulative {
  std::vector<std::uint64_t> n;

  std::size_t horizon() const { return n.size(); }
  std::uint64_t total() const;
  bool monotone_nonincreasing() const;

  friend bool operator==(const DcsCumulative&, const DcsCumulative&) = default;
};

// n_{T-1} = m_T, n_t = n_{t+1} + m_{t+1}.
DcsCumulative cumulative_from_counts(const DcsCounts& counts);

// Inverse map; throws MonotonicityViolation when n is not non-increasing.
DcsCounts counts_from_cumulative(const DcsCumulative& cumulative);

// True iff n is monotone, spends exactly `budget` transitions, and collects
// at least one full-length trajectory (n_{T-1} >= 1).
bool validate_budget(const DcsCumulative& n, std::uint64_t budget);

// Environment + policy + horizon + discount: the object being evaluated.
struct EvalTask {
  std::shared_ptr<const Environment> env;
  std::shared_ptr<const Policy> policy;
  std::size_t horizon = 0;
  double gamma = 1.0;
  std::string name;
};

// Throws ConfigInvalid unless horizon >= 1 and gamma in (0, 1].
void validate(const EvalTask& task);

}  // namespace dcs
