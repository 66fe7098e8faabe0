#include "osa/pu_model.hpp"

#include <cmath>
#include <string>

#include "osa/errors.hpp"

namespace osa {

namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidParameters(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

std::string_view to_string(PuState s) noexcept {
  switch (s) {
    case PuState::BusyL0: return "00";
    case PuState::IdleL0: return "01";
    case PuState::BusyL1: return "10";
    case PuState::IdleL1: return "11";
  }
  return "??";
}

ChannelParams::ChannelParams(double alpha0, double beta0, double alpha1, double beta1)
    : alpha0_(alpha0), beta0_(beta0), alpha1_(alpha1), beta1_(beta1) {
  require_probability(alpha0, "alpha0");
  require_probability(beta0, "beta0");
  require_probability(alpha1, "alpha1");
  require_probability(beta1, "beta1");
  if (alpha1 < alpha0) throw InvalidParameters("alpha1 must be >= alpha0");
  if (beta1 < beta0) throw InvalidParameters("beta1 must be >= beta0");
}

bool ChannelParams::degenerate() const noexcept { return 1.0 + alpha0_ - beta0_ == 0.0; }

StateDistribution transition_row_unsensed(const ChannelParams& p, PuState state) {
  switch (state) {
    case PuState::BusyL0:
    case PuState::BusyL1:
      // no collision: back to (or stay in) level 0
      return {1.0 - p.alpha0(), p.alpha0(), 0.0, 0.0};
    case PuState::IdleL0:
      return {1.0 - p.beta0(), p.beta0(), 0.0, 0.0};
    case PuState::IdleL1:
      return {0.0, 0.0, 1.0 - p.beta1(), p.beta1()};
  }
  return {};
}

StateDistribution transition_row_sensed(const ChannelParams& p, PuState state, double mu) {
  require_probability(mu, "mu");
  if (is_idle(state)) return transition_row_unsensed(p, state);
  const double quiet = 1.0 - mu;
  return {quiet * (1.0 - p.alpha0()), quiet * p.alpha0(), mu * (1.0 - p.alpha1()), mu * p.alpha1()};
}

Level0Stationary stationary_level0(const ChannelParams& p) {
  const double denom = 1.0 + p.alpha0() - p.beta0();
  if (denom == 0.0) {
    throw InvalidParameters("degenerate level-0 chain: 1 + alpha0 - beta0 = 0");
  }
  const double busy = (1.0 - p.beta0()) / denom;
  return {busy, 1.0 - busy};
}

double benchmark_throughput(const ChannelParams& params, double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw InvalidParameters("zeta must lie in [0, 1]");
  return stationary_level0(params).busy * (1.0 - zeta);
}

ChannelParams reduce_to_nonreactive(const ChannelParams& p) noexcept {
  return ChannelParams(p.alpha0(), p.beta0(), p.alpha0(), p.beta0());
}

StateDistribution initial_row(const ChannelParams& params) {
  const auto s = stationary_level0(params);
  return {s.busy, s.idle, 0.0, 0.0};
}

}  // namespace osa
