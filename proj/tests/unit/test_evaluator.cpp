#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "osa/evaluator.hpp"
#include "osa/lput.hpp"
#include "osa/sccp.hpp"

using namespace osa;

namespace {

const EnergyDetectorParams kSensor = EnergyDetectorParams::from_db(30, 0.0, 5.0);
const ChannelParams kSingle(0.1, 0.2, 0.9, 0.95);
const std::vector<ChannelParams> kThree{ChannelParams(0.1, 0.1, 0.9, 0.95), ChannelParams(0.1, 0.2, 0.9, 0.95),
                                        ChannelParams(0.05, 0.6, 0.9, 0.95)};

void matches_oracle(const Scenario& sc, const Policy& policy) {
  const auto r = evaluate_exact(sc, policy);
  const auto o = oracle::forward({sc.channels().begin(), sc.channels().end()}, sc.horizon(),
                                 oracle::follow(policy.sensing),
                                 [&](std::size_t t, std::size_t n) { return policy.schedule.at(t, n); });
  const double t = static_cast<double>(sc.horizon());
  CHECK(r.su_total == doctest::Approx(o.su).epsilon(1e-12));
  for (std::size_t n = 0; n < sc.channel_count(); ++n) {
    CHECK(std::abs(r.pu_normalized[n] - o.pu[n] / t) < 1e-12);
    CHECK(std::abs(r.su_share[n] - o.su_share[n] / t) < 1e-12);
    CHECK(r.sum_throughput[n] == r.su_share[n] + r.pu_normalized[n]);
    CHECK(r.upper_bound[n] == 1.0 - r.benchmark[n]);
  }
  CHECK(std::abs(r.probability_mass - 1.0) < 1e-12);
}

}  // namespace

TEST_CASE("exact evaluation agrees with joint-state enumeration") {
  for (std::size_t horizon : {1, 2, 4, 6}) {
    const Scenario one({kSingle}, horizon, 0.1, kSensor);
    matches_oracle(one, solve_sccp(one).policy);
    matches_oracle(one, multi_channel_policy(one, std::vector<double>(horizon, 0.8)).policy);
  }
  for (std::size_t horizon : {1, 2, 3, 4}) {
    const Scenario three(kThree, horizon, 0.05, kSensor);
    matches_oracle(three, solve_sccp(three).policy);
    matches_oracle(three, multi_channel_policy(three, std::vector<double>(horizon, 0.8)).policy);
  }
}

TEST_CASE("single-slot reference values") {
  const Scenario sc({kSingle}, 1, 0.05, kSensor);
  const auto policy = solve_sccp(sc).policy;
  const double eps = epsilon_for_delta(kSensor, 0.05).epsilon;
  CHECK(exact_su_value(sc, policy) == doctest::Approx(0.1 / 0.9 * (1.0 - eps)).epsilon(1e-14));
  CHECK(std::abs(exact_pu_throughput(sc, policy)[0] - benchmark_throughput(kSingle, 0.05)) < 1e-12);
}

TEST_CASE("solver value equals evaluated value") {
  const Scenario sc(kThree, 5, 0.05, kSensor);
  const auto sol = solve_sccp(sc);
  CHECK(exact_su_value(sc, sol.policy) == doctest::Approx(sol.value).epsilon(1e-13));
}

TEST_CASE("lput stays under the secondary upper bound") {
  for (double zeta : {0.05, 0.1}) {
    for (std::size_t horizon = 1; horizon <= 8; ++horizon) {
      const Scenario sc({kSingle}, horizon, zeta, kSensor);
      const auto r = evaluate_exact(sc, multi_channel_policy(sc, std::vector<double>(horizon, 0.8)).policy);
      CHECK(r.su_normalized <= su_upper_bound(kSingle, zeta));
      CHECK(std::abs(r.pu_normalized[0] - r.benchmark[0]) < 1e-9);
    }
  }
}

TEST_CASE("upper bound reference values") {
  CHECK(std::abs(su_upper_bound(kSingle, 0.1) - 0.2) < 1e-12);
  CHECK(std::abs(su_upper_bound(kSingle, 0.0) - (1.0 - 0.8 / 0.9)) < 1e-12);
  CHECK(su_upper_bound(kSingle, 0.05) == doctest::Approx(0.15556).epsilon(1e-4));
}

TEST_CASE("never-sensed channels earn no secondary share") {
  const Scenario sc(kThree, 4, 0.05, kSensor);
  const auto r = evaluate_exact(sc, solve_sccp(sc).policy);
  CHECK(r.su_share[0] == 0.0);
  CHECK(r.pu_normalized[0] == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("pu throughput is affine in the starting row") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const ChannelParams p = oracle::random_channel(rng);
    const std::size_t horizon = 1 + static_cast<std::size_t>(i % 6);
    const Scenario sc({p}, horizon, 0.1, kSensor);
    PolicySchedule sched(horizon, 1);
    for (std::size_t t = 0; t < horizon; ++t) sched.at(t, 0) = ChannelAction{{u(rng) * 0.3, u(rng)}, {0.0, 1.0}};
    const Policy policy{"sccp", sched, SensingPolicyTree::constant(0, horizon)};
    const auto x = oracle::random_row(rng), y = oracle::random_row(rng);
    const double w = u(rng);
    BeliefRow mix{};
    for (std::size_t j = 0; j < 4; ++j) mix[j] = w * x[j] + (1.0 - w) * y[j];
    const double gx = evaluate_exact(sc, policy, BeliefMatrix({x})).pu_normalized[0];
    const double gy = evaluate_exact(sc, policy, BeliefMatrix({y})).pu_normalized[0];
    const double gm = evaluate_exact(sc, policy, BeliefMatrix({mix})).pu_normalized[0];
    CHECK(std::abs(gm - (w * gx + (1.0 - w) * gy)) < 1e-12);
  }
}

TEST_CASE("monte carlo with no access earns nothing") {
  const Scenario sc({kSingle}, 5, 0.0, kSensor);
  const auto policy = solve_sccp(sc).policy;
  const auto r = monte_carlo(sc, policy, 2000, 7);
  CHECK(r.su_normalized == 0.0);
  CHECK(r.su_normalized_se.value() == 0.0);
}

TEST_CASE("monte carlo keeps single-episode traces") {
  const Scenario sc({kSingle}, 5, 0.1, kSensor);
  const auto policy = solve_sccp(sc).policy;
  const auto r = monte_carlo(sc, policy, 1, 3);
  REQUIRE(r.episode_su.size() == 1);
  CHECK(r.episode_su[0] == r.su_normalized);
  CHECK_FALSE(r.su_normalized_se.has_value());
  CHECK(monte_carlo(sc, policy, 100, 3).episode_su.empty());
}

TEST_CASE("monte carlo is reproducible and thread-independent") {
  const Scenario sc(kThree, 4, 0.05, kSensor);
  const auto policy = solve_sccp(sc).policy;
  const auto a = monte_carlo(sc, policy, 5000, 42, 1);
  const auto b = monte_carlo(sc, policy, 5000, 42, 4);
  CHECK(a.su_normalized == b.su_normalized);
  CHECK(a.pu_normalized == b.pu_normalized);
  CHECK(a.su_normalized_se == b.su_normalized_se);
  const auto c = monte_carlo(sc, policy, 5000, 43, 1);
  CHECK(a.su_normalized != c.su_normalized);
}

TEST_CASE("monte carlo agrees with exact evaluation") {
  const Scenario sc({kSingle}, 5, 0.05, kSensor);
  const auto sccp = solve_sccp(sc).policy;
  const auto verdict = compare_reports(evaluate_exact(sc, sccp), monte_carlo(sc, sccp, 100000, 2024));
  CHECK(verdict.consistent);
  const auto lput = multi_channel_policy(sc, std::vector<double>(5, 0.8)).policy;
  const auto mc = monte_carlo(sc, lput, 100000, 2025);
  CHECK(std::abs(mc.pu_normalized[0] - benchmark_throughput(kSingle, 0.05)) < 4.0 * mc.pu_normalized_se[0].value());
}

TEST_CASE("report comparison") {
  EvaluationReport e, m;
  e.su_normalized = 0.5;
  e.su_share = {0.5};
  e.pu_normalized = {0.8};
  m = e;
  m.su_normalized_se = 0.01;
  m.su_share_se = {0.01};
  m.pu_normalized_se = {0.0};
  m.su_normalized = 0.52;
  m.su_share = {0.52};
  auto v = compare_reports(e, m);
  CHECK(v.consistent);
  CHECK(v.max_z == doctest::Approx(2.0));
  m.pu_normalized = {0.81};
  CHECK_FALSE(compare_reports(e, m).consistent);
}
