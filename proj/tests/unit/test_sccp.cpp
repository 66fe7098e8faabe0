#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "osa/evaluator.hpp"
#include "osa/sccp.hpp"

using namespace osa;

namespace {

const EnergyDetectorParams kSensor = EnergyDetectorParams::from_db(30, 0.0, 5.0);
const ChannelParams kSingle(0.1, 0.2, 0.9, 0.95);
const ChannelParams kTable(0.5, 0.5, 0.9, 0.9);

double table_q(double f1, double eps, double delta) {
  const std::vector<ChannelParams> chs{kTable};
  const PolicySchedule second(2, 1, ChannelAction{PerfectSensorRoc().point_for_delta(1.0), {0.0, 1.0}});
  const auto future = optimal_continuation(chs, second, 0);
  const ActionTriple a{0, ChannelAction{{eps, delta}, {0.0, f1}}};
  return q_value(BeliefMatrix::initial(chs), chs, a, future, 0, 2);
}

}  // namespace

TEST_CASE("q values of the three reference actions") {
  CHECK(std::abs(table_q(0.5, 0.5, 0.5) - 0.675) < 5e-4);
  CHECK(std::abs(table_q(0.6, 0.5, 0.5) - 0.71) < 5e-4);
  CHECK(std::abs(table_q(0.6, 0.5, 0.1) - 0.662) < 5e-4);
  // same g, smaller Q: the value is not monotone in g
  CHECK(table_q(0.6, 0.5, 0.1) < table_q(0.6, 0.5, 0.5));
}

TEST_CASE("q value ignores the continuation in the last slot") {
  const std::vector<ChannelParams> chs{kTable};
  const ActionTriple a{0, ChannelAction{{0.5, 0.5}, {0.0, 0.5}}};
  const ContinuationFn never = [](const BeliefMatrix&) -> double { throw std::logic_error("called"); };
  CHECK(q_value(BeliefMatrix::initial(chs), chs, a, never, 1, 2) == doctest::Approx(0.125));
}

TEST_CASE("sccp action") {
  const auto zero = sccp_action(0.0, kSensor);
  CHECK(zero.point.delta == 0.0);
  CHECK(zero.point.epsilon == 1.0);
  CHECK(access_prob_idle(zero) == 0.0);
  const auto one = sccp_action(1.0, kSensor);
  CHECK(one.point.epsilon == 0.0);
  CHECK(access_prob_idle(one) == 1.0);
  CHECK(access_prob_busy(one) == 1.0);
  const auto a = sccp_action(0.05, kSensor);
  const auto back = operating_point_from_threshold(kSensor, epsilon_for_delta(kSensor, 0.05).eta);
  CHECK(std::abs(a.point.epsilon - back.epsilon) < 1e-9);
  CHECK(a.point.delta == 0.05);
  CHECK(a.access.f0 == 0.0);
  CHECK(a.access.f1 == 1.0);
}

TEST_CASE("collision probability per channel") {
  const auto a = sccp_action(0.05, kSensor);
  CHECK(sccp_sigma(a, 1, 0) == 0.0);
  CHECK(sccp_sigma(a, 0, 0) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(sccp_sigma(ChannelAction{{0.5, 0.5}, {0.0, 0.6}}, 2, 2) == doctest::Approx(0.3));
}

TEST_CASE("single-slot value") {
  const Scenario sc({kSingle}, 1, 0.05, kSensor);
  const auto sol = solve_sccp(sc);
  const double eps = epsilon_for_delta(kSensor, 0.05).epsilon;
  CHECK(sol.value == doctest::Approx((0.1 / 0.9) * (1.0 - eps)).epsilon(1e-14));
}

TEST_CASE("non-reactive channel gives a constant per-slot reward") {
  for (double zeta : {0.05, 0.1}) {
    const Scenario base = Scenario({kSingle}, 1, zeta, kSensor).nonreactive();
    double prev_total = 0.0;
    double first = 0.0;
    for (std::size_t t = 1; t <= 8; ++t) {
      const double total = solve_sccp(base.with_horizon(t)).value;
      const double slot = total - prev_total;
      if (t == 1) first = slot;
      CHECK(std::abs(slot - first) < 1e-12);
      prev_total = total;
    }
  }
}

TEST_CASE("reactive channel gives the secondary user more than the non-reactive one") {
  for (double zeta : {0.05, 0.1}) {
    for (std::size_t t = 2; t <= 8; ++t) {
      const Scenario sc({kSingle}, t, zeta, kSensor);
      CHECK(solve_sccp(sc).value > solve_sccp(sc.nonreactive()).value);
    }
  }
}

TEST_CASE("solved tree respects the collision cap and matches path enumeration") {
  const std::vector<ChannelParams> chs{ChannelParams(0.1, 0.1, 0.9, 0.95), ChannelParams(0.1, 0.2, 0.9, 0.95),
                                       ChannelParams(0.05, 0.6, 0.9, 0.95)};
  const Scenario sc(chs, 4, 0.05, kSensor);
  const auto sol = solve_sccp(sc);
  for (std::size_t t = 0; t < sc.horizon(); ++t) {
    for (std::size_t n = 0; n < chs.size(); ++n) {
      for (std::size_t a = 0; a < chs.size(); ++a) CHECK(sccp_sigma(sol.policy.schedule.at(t, n), n, a) <= 0.05 + 1e-15);
    }
  }
  const auto paths = oracle::forward(chs, sc.horizon(), oracle::follow(sol.policy.sensing),
                                     [&](std::size_t t, std::size_t n) { return sol.policy.schedule.at(t, n); });
  CHECK(paths.su == doctest::Approx(sol.value).epsilon(1e-12));
  CHECK(exact_su_value(sc, sol.policy) == doctest::Approx(sol.value).epsilon(1e-13));
}

TEST_CASE("fixed-action value is affine in the belief row") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const std::vector<ChannelParams> chs{oracle::random_channel(rng)};
    const std::size_t horizon = 2 + static_cast<std::size_t>(i % 5);
    PolicySchedule sched(horizon, 1);
    for (std::size_t t = 0; t < horizon; ++t) sched.at(t, 0) = ChannelAction{{u(rng) * 0.3, u(rng)}, {0.0, 1.0}};
    const auto x = oracle::random_row(rng), y = oracle::random_row(rng);
    const double w = u(rng);
    BeliefRow mix{};
    for (std::size_t j = 0; j < 4; ++j) mix[j] = w * x[j] + (1.0 - w) * y[j];
    for (std::size_t t = 0; t < horizon; ++t) {
      const double vx = optimal_value(chs, sched, BeliefMatrix({x}), t);
      const double vy = optimal_value(chs, sched, BeliefMatrix({y}), t);
      const double vm = optimal_value(chs, sched, BeliefMatrix({mix}), t);
      CHECK(std::abs(vm - (w * vx + (1.0 - w) * vy)) < 1e-12);
    }
  }
}
