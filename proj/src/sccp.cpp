#include "osa/sccp.hpp"

#include <utility>

#include "osa/errors.hpp"

namespace osa {

ChannelAction sccp_action(double zeta, const RocCurve& roc) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw InvalidParameters("zeta must lie in [0, 1]");
  return ChannelAction{roc.point_for_delta(zeta), AccessPair{0.0, 1.0}};
}

ChannelAction sccp_action(double zeta, const EnergyDetectorParams& sensor) {
  return sccp_action(zeta, EnergyDetectorRoc(sensor));
}

double q_value(const BeliefMatrix& belief, std::span<const ChannelParams> channels, const ActionTriple& action,
               const ContinuationFn& continuation, std::size_t slot, std::size_t horizon) {
  if (slot >= horizon) throw InvalidParameters("slot beyond the horizon");
  if (action.channel >= belief.size()) throw InvalidParameters("sensed channel out of range");
  const BeliefRow& row = belief.row(action.channel);
  double q = 0.0;
  for (Feedback k : kFeedbacks) {
    const double p = observation_likelihood(row, action.action, k);
    if (p < kBranchPruneProbability) continue;
    double future = 0.0;
    if (slot + 1 < horizon && continuation) future = continuation(advance(belief, channels, action, k));
    q += p * (reward(k) + future);
  }
  return q;
}

ContinuationFn optimal_continuation(std::span<const ChannelParams> channels, PolicySchedule schedule,
                                    std::size_t slot, SolverOptions options) {
  std::vector<ChannelParams> owned(channels.begin(), channels.end());
  return [owned = std::move(owned), schedule = std::move(schedule), slot, options](const BeliefMatrix& b) {
    return optimal_value(owned, schedule, b, slot + 1, options);
  };
}

PolicySchedule sccp_schedule(const Scenario& scenario) {
  return PolicySchedule(scenario.horizon(), scenario.channel_count(),
                        sccp_action(scenario.zeta(), scenario.roc()));
}

SccpSolution solve_sccp(const Scenario& scenario, const SolverOptions& options) {
  PolicySchedule schedule = sccp_schedule(scenario);
  SensingSolution sensing =
      solve_sensing(scenario.channels(), schedule, BeliefMatrix::initial(scenario.channels()), 0, options);
  return SccpSolution{sensing.value, Policy{"sccp", std::move(schedule), std::move(sensing.tree)},
                      sensing.nodes_expanded};
}

double sccp_sigma(const ChannelAction& action, std::size_t channel, std::size_t sensed) noexcept {
  return channel == sensed ? access_prob_busy(action) : 0.0;
}

}  // namespace osa
