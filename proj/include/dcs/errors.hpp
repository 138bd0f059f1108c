#pragma once

#include <stdexcept>
#include <string>

namespace dcs {

// Common base so callers can catch the whole family at the CLI boundary.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MonotonicityViolation : Error {
  using Error::Error;
};

struct InsufficientSamples : Error {
  using Error::Error;
};

struct InconsistentDataset : Error {
  using Error::Error;
};

struct InvalidMoments : Error {
  using Error::Error;
};

struct ZeroAllocation : Error {
  using Error::Error;
};

struct UnsupportedDiscount : Error {
  using Error::Error;
};

struct IndivisibleBudget : Error {
  using Error::Error;
};

struct InvalidBeta : Error {
  using Error::Error;
};

struct InfeasibleBudget : Error {
  using Error::Error;
};

struct BudgetMismatch : Error {
  using Error::Error;
};

struct InstanceTooLarge : Error {
  using Error::Error;
};

struct ConfigInvalid : Error {
  using Error::Error;
};

}  // namespace dcs
