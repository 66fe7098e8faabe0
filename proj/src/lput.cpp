#include "osa/lput.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "osa/errors.hpp"

namespace osa {

namespace {

double busy_mass(const MdpState& s) noexcept { return s[index(PuState::BusyL0)] + s[index(PuState::BusyL1)]; }

void check_probability(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw InvalidParameters(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

MdpState mdp_step(const MdpState& state, const ChannelParams& params, double delta) {
  check_probability(delta, "delta");
  MdpState next{};
  for (PuState i : kAllStates) {
    const double w = state[index(i)];
    if (w == 0.0) continue;
    const auto row = transition_row_sensed(params, i, delta);
    for (std::size_t j = 0; j < 4; ++j) next[j] += w * row[j];
  }
  return next;
}

double mdp_pu_reward(const MdpState& state, double delta) noexcept { return busy_mass(state) * (1.0 - delta); }

std::vector<double> requirement_recursion(double upsilon, std::size_t horizon, std::span<const double> rewards) {
  if (horizon == 0) throw InvalidParameters("horizon must be >= 1");
  if (rewards.size() + 1 < horizon) throw InvalidParameters("need one reward per slot before the last");
  std::vector<double> x(horizon);
  x[0] = upsilon * static_cast<double>(horizon);
  for (std::size_t t = 1; t < horizon; ++t) x[t] = x[t - 1] - rewards[t - 1];
  return x;
}

std::vector<MCoefficient> m_coefficients(const ChannelParams& p, std::size_t horizon) {
  if (horizon == 0) throw InvalidParameters("horizon must be >= 1");
  std::vector<MCoefficient> m(horizon);
  for (std::size_t t = horizon - 1; t-- > 0;) {
    const MCoefficient& n = m[t + 1];
    m[t].m1 = 1.0 + (1.0 - p.alpha0()) * n.m1 + p.alpha0() * n.m2;
    m[t].m2 = (1.0 - p.beta0()) * n.m1 + p.beta0() * n.m2;
    m[t].m3 = (1.0 - p.beta1()) * n.m1 + p.beta1() * n.m3;
    m[t].m4 = 1.0 + (p.alpha1() - p.alpha0()) * n.m1 + p.alpha0() * n.m2 - p.alpha1() * n.m3;
  }
  return m;
}

double pm_lower(const MdpState& state, double requirement, std::size_t slot) {
  const double s = busy_mass(state);
  if (!(s > 0.0)) {
    if (requirement <= kRequirementTolerance) return 1.0;
    throw InfeasibleRequirement(slot, 1.0, 1.0, "no busy mass left to carry the remaining requirement");
  }
  return std::clamp(1.0 - requirement / s, 0.0, 1.0);
}

double pm_upper(const MdpState& state, double requirement, const MCoefficient& m, std::size_t slot) {
  const double s = busy_mass(state);
  if (!(s > 0.0)) {
    if (requirement <= kRequirementTolerance) return 1.0;
    throw InfeasibleRequirement(slot, 1.0, 1.0, "no busy mass left to carry the remaining requirement");
  }
  const double bound = (state[index(PuState::IdleL0)] * m.m2 + state[index(PuState::IdleL1)] * m.m3 - requirement) /
                           (s * m.m4) +
                       m.m1 / m.m4;
  if (bound < -kRequirementTolerance) {
    throw InfeasibleRequirement(slot, pm_lower(state, requirement, slot), bound,
                                "requirement exceeds what the PU can still earn");
  }
  return std::clamp(bound, 0.0, 1.0);
}

double LputSchedule::total_pu_reward() const noexcept {
  double total = 0.0;
  for (const auto& s : slots) total += s.pu_reward;
  return total;
}

ChannelAction LputSchedule::action(std::size_t slot) const {
  const LputSlot& s = slots.at(slot);
  return ChannelAction{OperatingPoint{s.epsilon_star, s.delta_star}, AccessPair{0.0, 1.0}};
}

LputSchedule build_schedule(const ChannelParams& params, const RocCurve& roc, double zeta, std::size_t horizon,
                            std::span<const double> psi) {
  if (horizon == 0) throw InvalidParameters("horizon must be >= 1");
  if (psi.size() != horizon) throw InvalidParameters("psi needs one entry per slot");
  for (double v : psi) check_probability(v, "psi");

  const auto m = m_coefficients(params, horizon);
  LputSchedule out;
  out.upsilon = benchmark_throughput(params, zeta);
  out.slots.reserve(horizon);

  MdpState omega = initial_row(params);
  double requirement = out.upsilon * static_cast<double>(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    LputSlot slot;
    slot.requirement = requirement;
    slot.omega = omega;
    slot.delta_low = pm_lower(omega, requirement, t);
    slot.delta_high = pm_upper(omega, requirement, m[t], t);
    if (slot.delta_high < slot.delta_low) {
      // the final slot collapses the bracket; anything beyond rounding is a genuine conflict
      if (slot.delta_low - slot.delta_high > 1e-9) {
        throw InfeasibleRequirement(t, slot.delta_low, slot.delta_high, "empty mis-detection bracket");
      }
      slot.delta_high = slot.delta_low;
    }
    slot.psi = psi[t];
    slot.delta_star = std::clamp(slot.delta_low + slot.psi * (slot.delta_high - slot.delta_low), 0.0, 1.0);
    slot.epsilon_star = roc.epsilon_for_delta(slot.delta_star);
    slot.pu_reward = mdp_pu_reward(omega, slot.delta_star);
    requirement -= slot.pu_reward;
    omega = mdp_step(omega, params, slot.delta_star);
    out.slots.push_back(slot);
  }
  return out;
}

MultiChannelPolicy multi_channel_policy(const Scenario& scenario, std::span<const double> psi,
                                        const SolverOptions& options) {
  const std::size_t n = scenario.channel_count();
  const std::size_t horizon = scenario.horizon();
  std::vector<LputSchedule> schedules;
  schedules.reserve(n);
  for (std::size_t c = 0; c < n; ++c) {
    schedules.push_back(build_schedule(scenario.channel(c), scenario.roc(), scenario.zeta(), horizon, psi));
  }
  PolicySchedule schedule(horizon, n);
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t c = 0; c < n; ++c) schedule.at(t, c) = schedules[c].action(t);
  }
  SensingSolution sensing =
      solve_sensing(scenario.channels(), schedule, BeliefMatrix::initial(scenario.channels()), 0, options);
  SensingPolicyTree tree = sensing.tree;
  return MultiChannelPolicy{std::move(schedules), std::move(sensing),
                            Policy{"lput", std::move(schedule), std::move(tree)}};
}

ChannelAction tighten_final_slot(const BeliefRow& final_belief, double upsilon, std::size_t horizon, double realized,
                                 const RocCurve& roc) {
  if (horizon == 0) throw InvalidParameters("horizon must be >= 1");
  const std::size_t last = horizon - 1;
  const double need = upsilon * static_cast<double>(horizon) - realized;
  const double busy = busy_mass(final_belief);
  if (need < -kRequirementTolerance || need > busy + kRequirementTolerance) {
    throw InfeasibleRequirement(last, 0.0, 1.0, "final-slot requirement outside [0, busy mass]");
  }
  const double delta = busy > 0.0 ? std::clamp(1.0 - need / busy, 0.0, 1.0) : 1.0;
  return ChannelAction{roc.point_for_delta(delta), AccessPair{0.0, 1.0}};
}

double pomdp_mdp_consistency(const ChannelParams& params, std::span<const OperatingPoint> actions,
                             std::uint64_t node_budget) {
  const std::size_t horizon = actions.size();
  if (horizon == 0) throw InvalidParameters("need at least one slot");
  const std::uint64_t need = required_nodes(1, horizon);
  if (need > node_budget) throw BudgetExceeded(need, node_budget);

  const ChannelParams channel[1]{params};
  std::vector<std::pair<double, BeliefMatrix>> branches;
  branches.emplace_back(1.0, BeliefMatrix::initial(channel));
  MdpState omega = initial_row(params);
  double worst = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    StateDistribution mixture{};
    for (const auto& [h, b] : branches) {
      for (std::size_t j = 0; j < 4; ++j) mixture[j] += h * b.row(0)[j];
    }
    for (std::size_t j = 0; j < 4; ++j) worst = std::max(worst, std::abs(omega[j] - mixture[j]));
    if (t + 1 == horizon) break;

    const ActionTriple action{0, ChannelAction{actions[t], AccessPair{0.0, 1.0}}};
    std::vector<std::pair<double, BeliefMatrix>> next;
    next.reserve(branches.size() * 2);
    for (const auto& [h, b] : branches) {
      for (Feedback k : kFeedbacks) {
        const double p = observation_likelihood(b.row(0), action.action, k);
        if (p < kBranchPruneProbability) continue;
        next.emplace_back(h * p, advance(b, channel, action, k));
      }
    }
    branches = std::move(next);
    omega = mdp_step(omega, params, actions[t].delta);
  }
  return worst;
}

}  // namespace osa
