#include "osa/belief.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "osa/errors.hpp"

namespace osa {

namespace {

std::atomic<std::size_t> g_renormalizations{0};

void check_row(const BeliefRow& row) {
  double sum = 0.0;
  for (double v : row) {
    if (!(v >= -kSimplexTolerance && v <= 1.0 + kSimplexTolerance)) {
      throw InvalidParameters("belief entries must lie in [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) throw InvalidParameters("belief rows must sum to 1");
}

BeliefRow settle(BeliefRow row) {
  double sum = 0.0;
  for (double v : row) sum += v;
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    for (double& v : row) v /= sum;
    g_renormalizations.fetch_add(1, std::memory_order_relaxed);
  }
  return row;
}

template <typename Kernel>
BeliefRow push(const BeliefRow& row, Kernel kernel) {
  BeliefRow next{};
  for (PuState i : kAllStates) {
    const double w = row[index(i)];
    if (w == 0.0) continue;
    const auto out = kernel(i);
    for (std::size_t j = 0; j < 4; ++j) next[j] += w * out[j];
  }
  return next;
}

}  // namespace

BeliefMatrix::BeliefMatrix(std::vector<BeliefRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw InvalidParameters("belief matrix needs at least one row");
  for (const auto& r : rows_) check_row(r);
}

BeliefMatrix BeliefMatrix::initial(std::span<const ChannelParams> channels) {
  std::vector<BeliefRow> rows;
  rows.reserve(channels.size());
  for (const auto& c : channels) rows.push_back(initial_row(c));
  return BeliefMatrix(std::move(rows));
}

double access_prob_idle(const ChannelAction& a) noexcept {
  return a.point.epsilon * a.access.f0 + (1.0 - a.point.epsilon) * a.access.f1;
}

double access_prob_busy(const ChannelAction& a) noexcept {
  return (1.0 - a.point.delta) * a.access.f0 + a.point.delta * a.access.f1;
}

double observation_prob(const ChannelAction& action, PuState state, Feedback k) noexcept {
  const double success = is_idle(state) ? access_prob_idle(action) : 0.0;
  return k == Feedback::Success ? success : 1.0 - success;
}

double observation_likelihood(const BeliefRow& row, const ChannelAction& action, Feedback k) noexcept {
  const double idle = row[index(PuState::IdleL0)] + row[index(PuState::IdleL1)];
  const double success = idle * access_prob_idle(action);
  return k == Feedback::Success ? success : 1.0 - success;
}

BeliefRow update_unselected(const BeliefRow& row, const ChannelParams& params) {
  return settle(push(row, [&](PuState i) { return transition_row_unsensed(params, i); }));
}

BeliefRow update_selected(const BeliefRow& row, const ChannelParams& params, const ChannelAction& action,
                          Feedback k) {
  const double mu = access_prob_busy(action);
  double denom = 0.0;
  BeliefRow weighted{};
  for (PuState i : kAllStates) {
    weighted[index(i)] = row[index(i)] * observation_prob(action, i, k);
    denom += weighted[index(i)];
  }
  if (!(denom > 0.0)) {
    throw ImpossibleObservation("feedback K=" + std::to_string(static_cast<int>(k)) +
                                " has zero probability under the current belief");
  }
  BeliefRow next = push(weighted, [&](PuState i) { return transition_row_sensed(params, i, mu); });
  for (double& v : next) v /= denom;
  return settle(next);
}

BeliefMatrix advance(const BeliefMatrix& belief, std::span<const ChannelParams> channels,
                     const ActionTriple& action, Feedback k) {
  if (channels.size() != belief.size()) throw InvalidParameters("belief/channel count mismatch");
  if (action.channel >= channels.size()) throw InvalidParameters("sensed channel out of range");
  BeliefMatrix next = belief;
  for (std::size_t n = 0; n < channels.size(); ++n) {
    next.row(n) = n == action.channel ? update_selected(belief.row(n), channels[n], action.action, k)
                                      : update_unselected(belief.row(n), channels[n]);
  }
  return next;
}

double expected_su_reward(const BeliefRow& row, const ChannelAction& action) noexcept {
  return (row[index(PuState::IdleL0)] + row[index(PuState::IdleL1)]) * access_prob_idle(action);
}

double expected_pu_reward_slot(const BeliefRow& row, double sigma) noexcept {
  return (row[index(PuState::BusyL0)] + row[index(PuState::BusyL1)]) * (1.0 - sigma);
}

std::size_t belief_renormalizations() noexcept { return g_renormalizations.load(std::memory_order_relaxed); }

}  // namespace osa
