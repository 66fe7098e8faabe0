#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "osa/pu_model.hpp"
#include "osa/sensor_roc.hpp"

namespace osa {

/// Conditional distribution of one channel's PU state.
using BeliefRow = StateDistribution;

/// Rows are kept on the simplex within this tolerance; larger drift is
/// rescaled and counted.
inline constexpr double kSimplexTolerance = 1e-12;

/// SU belief over the N channel states, one row per channel.
class BeliefMatrix {
 public:
  explicit BeliefMatrix(std::vector<BeliefRow> rows);

  /// Level-0 stationary start on every channel.
  static BeliefMatrix initial(std::span<const ChannelParams> channels);

  std::size_t size() const noexcept { return rows_.size(); }
  const BeliefRow& row(std::size_t n) const { return rows_.at(n); }
  BeliefRow& row(std::size_t n) { return rows_.at(n); }
  std::span<const BeliefRow> rows() const noexcept { return rows_; }

 private:
  std::vector<BeliefRow> rows_;
};

/// Access probabilities given the sensing outcome: f0 after "busy", f1 after "idle".
struct AccessPair {
  double f0 = 0.0;
  double f1 = 1.0;
};

/// Sensor operating point and access rule applied to the sensed channel.
struct ChannelAction {
  OperatingPoint point;
  AccessPair access;
};

/// Full per-slot SU action: which channel to sense and what to do on it.
struct ActionTriple {
  std::size_t channel = 0;
  ChannelAction action;
};

/// Acknowledgement K seen at the end of a slot; Success only when the SU
/// transmitted on an idle channel.
enum class Feedback : int { Failure = 0, Success = 1 };

inline constexpr Feedback kFeedbacks[2]{Feedback::Failure, Feedback::Success};

constexpr double reward(Feedback k) noexcept { return k == Feedback::Success ? 1.0 : 0.0; }

/// g: access probability given the PU is idle.
double access_prob_idle(const ChannelAction& action) noexcept;

/// mu: access probability given the PU is busy.
double access_prob_busy(const ChannelAction& action) noexcept;

double observation_prob(const ChannelAction& action, PuState state, Feedback k) noexcept;

/// Probability of observing k from a channel whose belief is `row`.
double observation_likelihood(const BeliefRow& row, const ChannelAction& action, Feedback k) noexcept;

BeliefRow update_unselected(const BeliefRow& row, const ChannelParams& params);

/// Bayes update of the sensed channel. Throws ImpossibleObservation when the
/// observation has zero likelihood under `row`.
BeliefRow update_selected(const BeliefRow& row, const ChannelParams& params,
                          const ChannelAction& action, Feedback k);

/// Next belief matrix after sensing `action.channel` and observing k.
BeliefMatrix advance(const BeliefMatrix& belief, std::span<const ChannelParams> channels,
                     const ActionTriple& action, Feedback k);

double expected_su_reward(const BeliefRow& row, const ChannelAction& action) noexcept;

double expected_pu_reward_slot(const BeliefRow& row, double sigma) noexcept;

/// Number of rows rescaled so far because their drift exceeded kSimplexTolerance.
std::size_t belief_renormalizations() noexcept;

}  // namespace osa
