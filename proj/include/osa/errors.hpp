#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace osa {

/// Model parameters outside their admissible domain (probabilities, ordering,
/// degenerate chains, sensor settings).
class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bayes update requested for an observation with zero likelihood.
class ImpossibleObservation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The remaining PU throughput requirement cannot be met inside [0, 1].
class InfeasibleRequirement : public std::runtime_error {
 public:
  InfeasibleRequirement(std::size_t slot, double delta_low, double delta_high,
                        const std::string& detail);

  std::size_t slot() const noexcept { return slot_; }
  double delta_low() const noexcept { return delta_low_; }
  double delta_high() const noexcept { return delta_high_; }

 private:
  std::size_t slot_;
  double delta_low_;
  double delta_high_;
};

/// Exact tree enumeration would exceed the configured node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget);

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace osa
