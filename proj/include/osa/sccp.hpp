#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "osa/belief.hpp"
#include "osa/policy.hpp"
#include "osa/scenario.hpp"
#include "osa/sensing.hpp"

namespace osa {

/// Per-slot optimum under the collision cap: delta = zeta, epsilon on the ROC
/// curve, access only after an "idle" sensing result. Time-invariant and
/// independent of the belief.
ChannelAction sccp_action(double zeta, const RocCurve& roc);
ChannelAction sccp_action(double zeta, const EnergyDetectorParams& sensor);

/// Value of the remaining slots given the belief reached at the next slot.
using ContinuationFn = std::function<double(const BeliefMatrix&)>;

/// Expected reward from `slot` to the end when `action` is taken now and the
/// future is valued by `continuation`. The continuation is ignored in the
/// last slot (slot + 1 == horizon).
double q_value(const BeliefMatrix& belief, std::span<const ChannelParams> channels,
               const ActionTriple& action, const ContinuationFn& continuation, std::size_t slot,
               std::size_t horizon);

/// Continuation that plays the optimal sensing rule under fixed per-slot
/// actions from `schedule`, starting at slot + 1.
ContinuationFn optimal_continuation(std::span<const ChannelParams> channels, PolicySchedule schedule,
                                    std::size_t slot, SolverOptions options = {});

/// SCCP action on every channel and slot.
PolicySchedule sccp_schedule(const Scenario& scenario);

struct SccpSolution {
  double value = 0.0;  ///< V_1 at the stationary start, summed over T slots
  Policy policy;
  std::uint64_t nodes_expanded = 0;
};

SccpSolution solve_sccp(const Scenario& scenario, const SolverOptions& options = {});

/// Conditional collision probability on `channel` when `sensed` is sensed.
double sccp_sigma(const ChannelAction& action, std::size_t channel, std::size_t sensed) noexcept;

}  // namespace osa
