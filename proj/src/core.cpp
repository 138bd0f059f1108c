#include "dcs/core.hpp"

namespace dcs {

std::uint64_t DcsCounts::transitions() const {
  std::uint64_t total = 0;
  for (std::size_t h = 0; h < m.size(); ++h) {
    total += m[h] * static_cast<std::uint64_t>(h + 1);
  }
  return total;
}

std::uint64_t DcsCumulative::total() const {
  std::uint64_t total = 0;
  for (auto v : n) total += v;
  return total;
}

bool DcsCumulative::monotone_nonincreasing() const {
  for (std::size_t t = 0; t + 1 < n.size(); ++t) {
    if (n[t] < n[t + 1]) return false;
  }
  return true;
}

DcsCumulative cumulative_from_counts(const DcsCounts& counts) {
  const auto& m = counts.m;
  DcsCumulative out;
  out.n.resize(m.size());
  if (m.empty()) return out;
  const std::size_t T = m.size();
  out.n[T - 1] = m[T - 1];
  for (std::size_t t = T - 1; t-- > 0;) {
    // m_{t+1} lives at index t.
    out.n[t] = out.n[t + 1] + m[t];
  }
  return out;
}

DcsCounts counts_from_cumulative(const DcsCumulative& cumulative) {
  const auto& n = cumulative.n;
  DcsCounts out;
  out.m.resize(n.size());
  if (n.empty()) return out;
  const std::size_t T = n.size();
  for (std::size_t t = 0; t + 1 < T; ++t) {
    if (n[t] < n[t + 1]) {
      throw MonotonicityViolation("counts_from_cumulative: n[" +
                                  std::to_string(t) + "] < n[" +
                                  std::to_string(t + 1) + "]");
    }
    out.m[t] = n[t] - n[t + 1];
  }
  out.m[T - 1] = n[T - 1];
  return out;
}

bool validate_budget(const DcsCumulative& n, std::uint64_t budget) {
  if (n.n.empty()) return false;
  if (!n.monotone_nonincreasing()) return false;
  if (n.n.back() < 1) return false;
  return n.total() == budget;
}

void validate(const EvalTask& task) {
  if (!task.env || !task.policy) {
    throw ConfigInvalid("task: environment and policy must be set");
  }
  if (task.horizon < 1) {
    throw ConfigInvalid("task: horizon must be >= 1");
  }
  if (!(task.gamma > 0.0) || task.gamma > 1.0) {
    throw ConfigInvalid("task: discount must lie in (0, 1]");
  }
}

}  // namespace dcs
