#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace osa {

/// Reactive PU channel state. The first bit of the two-bit code is the level,
/// the second is busy (0) / idle (1): 00,01,10,11 -> 0,1,2,3.
enum class PuState : std::uint8_t { BusyL0 = 0, IdleL0 = 1, BusyL1 = 2, IdleL1 = 3 };

inline constexpr std::array<PuState, 4> kAllStates{PuState::BusyL0, PuState::IdleL0,
                                                   PuState::BusyL1, PuState::IdleL1};

constexpr std::size_t index(PuState s) noexcept { return static_cast<std::size_t>(s); }
constexpr bool is_idle(PuState s) noexcept { return (index(s) & 1U) != 0; }
constexpr bool is_busy(PuState s) noexcept { return !is_idle(s); }
constexpr bool is_level1(PuState s) noexcept { return (index(s) & 2U) != 0; }

std::string_view to_string(PuState s) noexcept;

/// Probability vector over the four PU states, indexed by `index(PuState)`.
using StateDistribution = std::array<double, 4>;

/// Transition probabilities of one reactive PU channel.
///
/// alpha is the busy->idle probability and beta the idle->idle probability of
/// a level; level 1 is entered after a collision and satisfies alpha1 >= alpha0,
/// beta1 >= beta0. The constructor rejects values outside [0, 1] or violating
/// the ordering.
class ChannelParams {
 public:
  ChannelParams(double alpha0, double beta0, double alpha1, double beta1);

  double alpha0() const noexcept { return alpha0_; }
  double beta0() const noexcept { return beta0_; }
  double alpha1() const noexcept { return alpha1_; }
  double beta1() const noexcept { return beta1_; }

  /// 1 + alpha0 - beta0 == 0 makes the level-0 chain absorbing in both states.
  bool degenerate() const noexcept;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;

 private:
  double alpha0_;
  double beta0_;
  double alpha1_;
  double beta1_;
};

/// Next-state distribution when the SU does not access the channel.
StateDistribution transition_row_unsensed(const ChannelParams& params, PuState state);

/// Next-state distribution when the channel is sensed and the SU accesses a
/// busy channel with probability `mu`. Idle rows do not depend on `mu`.
StateDistribution transition_row_sensed(const ChannelParams& params, PuState state, double mu);

struct Level0Stationary {
  double busy;
  double idle;
};

/// Stationary distribution of the level-0 two-state chain.
/// Throws InvalidParameters for a degenerate chain.
Level0Stationary stationary_level0(const ChannelParams& params);

/// PU throughput a non-reactive PU keeps under a per-slot collision cap zeta.
double benchmark_throughput(const ChannelParams& params, double zeta);

/// Copies the level-0 dynamics into level 1.
ChannelParams reduce_to_nonreactive(const ChannelParams& params) noexcept;

/// Level-0 stationary start: (busy, idle, 0, 0).
StateDistribution initial_row(const ChannelParams& params);

}  // namespace osa
