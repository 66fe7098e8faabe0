#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "osa/belief.hpp"
#include "osa/policy.hpp"

namespace osa {

struct SolverOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
  /// Worker threads for the top of the tree; 0 picks the hardware count.
  /// Results do not depend on this value.
  unsigned threads = 1;
};

struct SensingSolution {
  double value = 0.0;  ///< expected SU reward summed over the remaining slots
  SensingPolicyTree tree;
  std::uint64_t nodes_expanded = 0;
};

/// Optimal channel-selection tree for fixed per-slot channel actions, by
/// exhaustive dynamic programming over the reachable belief tree starting at
/// `first_slot`. Throws BudgetExceeded before doing any work when the tree
/// is larger than the budget.
SensingSolution solve_sensing(std::span<const ChannelParams> channels, const PolicySchedule& schedule,
                              const BeliefMatrix& belief, std::size_t first_slot = 0,
                              const SolverOptions& options = {});

/// Value of the optimal sensing rule from `first_slot` on, without the tree.
double optimal_value(std::span<const ChannelParams> channels, const PolicySchedule& schedule,
                     const BeliefMatrix& belief, std::size_t first_slot = 0,
                     const SolverOptions& options = {});

}  // namespace osa
