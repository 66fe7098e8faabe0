#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "osa/belief.hpp"
#include "osa/policy.hpp"
#include "osa/scenario.hpp"
#include "osa/sensing.hpp"

namespace osa {

/// State of the deterministic equivalent MDP: expected PU state distribution
/// given only the SU's action history.
using MdpState = StateDistribution;

/// Pushes the state through the sensed kernel with access pair (0, 1), so the
/// busy-state access probability equals delta.
MdpState mdp_step(const MdpState& state, const ChannelParams& params, double delta);

/// Expected PU throughput of one slot: (w0 + w2)(1 - delta).
double mdp_pu_reward(const MdpState& state, double delta) noexcept;

/// Remaining requirement X(t): X(1) = upsilon * T, X(t) = X(t-1) - R(t-1).
std::vector<double> requirement_recursion(double upsilon, std::size_t horizon,
                                          std::span<const double> rewards);

struct MCoefficient {
  double m1 = 1.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 1.0;
};

/// Backward recursion for the upper mis-detection bound, one entry per slot;
/// the last slot holds (1, 0, 0, 1).
std::vector<MCoefficient> m_coefficients(const ChannelParams& params, std::size_t horizon);

/// Absolute slack used when testing the requirement bracket.
inline constexpr double kRequirementTolerance = 1e-12;

/// Minimum mis-detection keeping the remaining requirement non-negative.
double pm_lower(const MdpState& state, double requirement, std::size_t slot = 0);

/// Maximum mis-detection keeping the final-slot requirement reachable.
/// Throws InfeasibleRequirement when the bound is negative.
double pm_upper(const MdpState& state, double requirement, const MCoefficient& m,
                std::size_t slot = 0);

struct LputSlot {
  double requirement = 0.0;  ///< X(t) at the start of the slot
  MdpState omega{};
  double delta_low = 0.0;
  double delta_high = 0.0;
  double psi = 0.0;
  double delta_star = 0.0;
  double epsilon_star = 0.0;
  double pu_reward = 0.0;
};

struct LputSchedule {
  double upsilon = 0.0;
  std::vector<LputSlot> slots;

  double total_pu_reward() const noexcept;
  ChannelAction action(std::size_t slot) const;
};

/// The psi-interpolated mis-detection schedule for one channel that is
/// sensed in every slot. `psi` has one entry per slot, each in [0, 1].
LputSchedule build_schedule(const ChannelParams& params, const RocCurve& roc, double zeta,
                            std::size_t horizon, std::span<const double> psi);

inline constexpr double kDefaultPsi = 0.8;

struct MultiChannelPolicy {
  std::vector<LputSchedule> schedules;  ///< one per channel
  SensingSolution sensing;
  Policy policy;
};

/// Per-channel worst-case schedules, then the SU-optimal sensing tree under
/// those fixed actions.
MultiChannelPolicy multi_channel_policy(const Scenario& scenario, std::span<const double> psi,
                                        const SolverOptions& options = {});

/// Final-slot action that spends the entire surplus of a policy whose PU
/// throughput over slots 1..T-1 is `realized`. Requires
/// 0 <= upsilon*T - realized <= busy(T).
ChannelAction tighten_final_slot(const BeliefRow& final_belief, double upsilon, std::size_t horizon,
                                 double realized, const RocCurve& roc);

/// Largest gap between the MDP state and the probability-weighted mixture of
/// all POMDP belief branches, over every slot and state. `actions` holds the
/// operating point per slot; access is fixed to (0, 1).
double pomdp_mdp_consistency(const ChannelParams& params, std::span<const OperatingPoint> actions,
                             std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace osa
