#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "osa/belief.hpp"
#include "osa/errors.hpp"

using namespace osa;

namespace {

const ChannelParams kTable(0.5, 0.5, 0.9, 0.9);

ChannelAction act(double eps, double delta, double f0, double f1) { return {{eps, delta}, {f0, f1}}; }

double max_gap(const BeliefRow& a, const std::array<double, 4>& b) {
  double g = 0.0;
  for (std::size_t j = 0; j < 4; ++j) g = std::max(g, std::abs(a[j] - b[j]));
  return g;
}

void on_simplex(const BeliefRow& r) {
  double s = 0.0;
  for (double v : r) {
    CHECK(v >= -1e-15);
    CHECK(v <= 1.0 + 1e-15);
    s += v;
  }
  CHECK(std::abs(s - 1.0) < 1e-12);
}

}  // namespace

TEST_CASE("access probabilities") {
  CHECK(access_prob_idle(act(0.5, 0.5, 0.0, 0.5)) == doctest::Approx(0.25));
  CHECK(access_prob_idle(act(0.5, 0.5, 0.0, 0.6)) == doctest::Approx(0.3));
  CHECK(access_prob_idle(act(0.37, 0.2, 1.0, 1.0)) == doctest::Approx(1.0));
  CHECK(access_prob_busy(act(0.5, 0.5, 0.0, 0.5)) == doctest::Approx(0.25));
  CHECK(access_prob_busy(act(0.5, 0.5, 0.0, 0.0)) == 0.0);
  CHECK(access_prob_busy(act(0.1, 0.07, 0.0, 1.0)) == doctest::Approx(0.07));
}

TEST_CASE("observation probabilities") {
  const auto a = act(0.5, 0.5, 0.0, 0.5);
  CHECK(observation_prob(a, PuState::BusyL0, Feedback::Success) == 0.0);
  CHECK(observation_prob(a, PuState::IdleL1, Feedback::Success) == doctest::Approx(0.25));
  for (PuState s : kAllStates) {
    CHECK(observation_prob(a, s, Feedback::Success) + observation_prob(a, s, Feedback::Failure) ==
          doctest::Approx(1.0));
  }
}

TEST_CASE("unselected update") {
  const ChannelParams p(0.1, 0.2, 0.9, 0.95);
  CHECK(max_gap(update_unselected({1, 0, 0, 0}, p), {0.9, 0.1, 0.0, 0.0}) < 1e-15);
  const ChannelParams flat = reduce_to_nonreactive(p);
  const BeliefRow start = initial_row(flat);
  CHECK(max_gap(update_unselected(start, flat), start) < 1e-15);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) on_simplex(update_unselected(oracle::random_row(rng), oracle::random_channel(rng)));
}

TEST_CASE("selected update: reference posteriors") {
  const BeliefRow start{0.5, 0.5, 0.0, 0.0};
  const auto post = update_selected(start, kTable, act(0.5, 0.5, 0.0, 0.5), Feedback::Failure);
  CHECK(max_gap(post, {0.42857142857142855, 0.42857142857142855, 0.014285714285714285, 0.12857142857142856}) <
        1e-12);

  const ChannelParams p(0.1, 0.2, 0.9, 0.95);
  const auto idle = update_selected({0, 1, 0, 0}, p, act(0.3, 0.1, 0.0, 1.0), Feedback::Success);
  CHECK(max_gap(idle, {0.8, 0.2, 0.0, 0.0}) < 1e-15);
}

TEST_CASE("selected update rejects impossible feedback") {
  CHECK_THROWS_AS(update_selected({1, 0, 0, 0}, kTable, act(0.5, 0.5, 0.0, 1.0), Feedback::Success),
                  ImpossibleObservation);
  CHECK_THROWS_AS(update_selected({0.5, 0.5, 0, 0}, kTable, act(1.0, 0.0, 0.0, 1.0), Feedback::Success),
                  ImpossibleObservation);
}

TEST_CASE("product-form Bayes update equals joint enumeration") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const ChannelParams p = oracle::random_channel(rng);
    const BeliefRow row = oracle::random_row(rng);
    const ChannelAction a = act(u(rng), u(rng), u(rng), u(rng));
    for (Feedback k : kFeedbacks) {
      if (observation_likelihood(row, a, k) < 1e-9) continue;
      const auto got = update_selected(row, p, a, k);
      const auto want = oracle::bayes(row, oracle::raw(p), oracle::raw(a), static_cast<int>(k));
      CHECK(max_gap(got, want) < 1e-12);
      on_simplex(got);
      if (k == Feedback::Success) {
        // a success is only possible from an idle state, which never collides
        const auto from_idle = update_selected({0, row[1] / (row[1] + row[3]), 0, row[3] / (row[1] + row[3])}, p, a, k);
        CHECK(max_gap(got, from_idle) < 1e-12);
      }
    }
  }
}

TEST_CASE("beliefs stay on the simplex along random trajectories") {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int run = 0; run < 1000; ++run) {
    const ChannelParams p = oracle::random_channel(rng);
    BeliefRow row = initial_row(p);
    for (int t = 0; t < 8; ++t) {
      const ChannelAction a = act(u(rng), u(rng), 0.0, 1.0);
      const Feedback k = u(rng) < observation_likelihood(row, a, Feedback::Success) ? Feedback::Success : Feedback::Failure;
      row = observation_likelihood(row, a, k) > 1e-12 ? update_selected(row, p, a, k) : update_unselected(row, p);
      on_simplex(row);
    }
  }
}

TEST_CASE("unselected update is linear in the row") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const ChannelParams p = oracle::random_channel(rng);
    const auto x = oracle::random_row(rng), y = oracle::random_row(rng);
    const double w = u(rng);
    BeliefRow mix{};
    for (std::size_t j = 0; j < 4; ++j) mix[j] = w * x[j] + (1.0 - w) * y[j];
    const auto ux = update_unselected(x, p), uy = update_unselected(y, p);
    std::array<double, 4> want{};
    for (std::size_t j = 0; j < 4; ++j) want[j] = w * ux[j] + (1.0 - w) * uy[j];
    CHECK(max_gap(update_unselected(mix, p), want) < 1e-12);
  }
}

TEST_CASE("expected rewards") {
  CHECK(expected_su_reward({0.5, 0.5, 0, 0}, act(0.5, 0.5, 0.0, 0.5)) == doctest::Approx(0.125));
  CHECK(expected_su_reward({0.5, 0.5, 0, 0}, act(1.0, 0.0, 0.0, 1.0)) == 0.0);
  CHECK(expected_su_reward({0.6, 0, 0.4, 0}, act(0.0, 1.0, 1.0, 1.0)) == 0.0);
  CHECK(expected_pu_reward_slot({0.3, 0.2, 0.4, 0.1}, 0.0) == doctest::Approx(0.7));
  CHECK(expected_pu_reward_slot({1, 0, 0, 0}, 0.05) == doctest::Approx(0.95));
}

TEST_CASE("belief matrix construction and advance") {
  const std::vector<ChannelParams> chs{ChannelParams(0.1, 0.2, 0.9, 0.95), kTable};
  const BeliefMatrix b = BeliefMatrix::initial(chs);
  CHECK(b.size() == 2);
  CHECK(b.row(1)[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(BeliefMatrix({{0.5, 0.6, 0.0, 0.0}}), InvalidParameters);
  CHECK_THROWS_AS(BeliefMatrix(std::vector<BeliefRow>{}), InvalidParameters);
  const auto next = advance(b, chs, ActionTriple{1, act(0.5, 0.5, 0.0, 0.5)}, Feedback::Failure);
  CHECK(max_gap(next.row(0), update_unselected(b.row(0), chs[0])) == 0.0);
  CHECK(max_gap(next.row(1), update_selected(b.row(1), chs[1], act(0.5, 0.5, 0.0, 0.5), Feedback::Failure)) == 0.0);
}
