#include "osa/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "osa/errors.hpp"

namespace osa {

std::string to_string(EvaluationMethod method) {
  return method == EvaluationMethod::Exact ? "exact" : "monte-carlo";
}

namespace {

void check_policy(const Scenario& scenario, const Policy& policy) {
  if (policy.schedule.horizon() != scenario.horizon() || policy.schedule.channels() != scenario.channel_count()) {
    throw InvalidParameters("policy schedule does not match the scenario dimensions");
  }
}

void fill_common(EvaluationReport& r, const Scenario& scenario) {
  r.horizon = scenario.horizon();
  r.benchmark = scenario.benchmarks();
  r.upper_bound.clear();
  for (double b : r.benchmark) r.upper_bound.push_back(1.0 - b);
  r.sum_throughput.resize(r.su_share.size());
  for (std::size_t n = 0; n < r.su_share.size(); ++n) r.sum_throughput[n] = r.su_share[n] + r.pu_normalized[n];
}

std::size_t channel_at(const SensingPolicyTree& tree, std::int64_t node) {
  return node == SensingPolicyTree::kNone || tree.empty() ? 0 : tree.node(static_cast<std::size_t>(node)).channel;
}

std::int64_t child_of(const SensingPolicyTree& tree, std::int64_t node, Feedback k) {
  if (node == SensingPolicyTree::kNone || tree.empty()) return SensingPolicyTree::kNone;
  return tree.node(static_cast<std::size_t>(node)).next[static_cast<int>(k)];
}

class ExactWalk {
 public:
  ExactWalk(const Scenario& scenario, const Policy& policy)
      : scenario_(scenario), policy_(policy), su_(scenario.channel_count(), 0.0), pu_(scenario.channel_count(), 0.0) {}

  void visit(const BeliefMatrix& belief, double prob, std::size_t slot, std::int64_t node) {
    const std::size_t a = channel_at(policy_.sensing, node);
    const ChannelAction& action = policy_.schedule.at(slot, a);
    su_[a] += prob * expected_su_reward(belief.row(a), action);
    for (std::size_t n = 0; n < belief.size(); ++n) {
      pu_[n] += prob * expected_pu_reward_slot(belief.row(n), sccp_sigma_of(action, n, a));
    }
    if (slot + 1 == scenario_.horizon()) {
      ++leaves_;
      mass_ += prob;
      return;
    }
    const ActionTriple triple{a, action};
    for (Feedback k : kFeedbacks) {
      const double p = observation_likelihood(belief.row(a), action, k);
      if (p < kBranchPruneProbability) continue;
      visit(advance(belief, scenario_.channels(), triple, k), prob * p, slot + 1, child_of(policy_.sensing, node, k));
    }
  }

  EvaluationReport report() const {
    EvaluationReport r;
    r.method = EvaluationMethod::Exact;
    const double t = static_cast<double>(scenario_.horizon());
    for (double v : su_) {
      r.su_total += v;
      r.su_share.push_back(v / t);
    }
    r.su_normalized = r.su_total / t;
    for (double v : pu_) r.pu_normalized.push_back(v / t);
    r.branch_count = leaves_;
    r.probability_mass = mass_;
    fill_common(r, scenario_);
    return r;
  }

 private:
  static double sccp_sigma_of(const ChannelAction& action, std::size_t n, std::size_t a) noexcept {
    return n == a ? access_prob_busy(action) : 0.0;
  }

  const Scenario& scenario_;
  const Policy& policy_;
  std::vector<double> su_;
  std::vector<double> pu_;
  std::uint64_t leaves_ = 0;
  double mass_ = 0.0;
};

// Counter-based generator: one independent stream per (seed, episode).
class SplitMix64 {
 public:
  SplitMix64(std::uint64_t seed, std::uint64_t episode) : state_(mix(seed ^ mix(episode + 0x9E3779B97F4A7C15ULL))) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

PuState sample(const StateDistribution& dist, double u) noexcept {
  double acc = 0.0;
  for (PuState s : kAllStates) {
    acc += dist[index(s)];
    if (u < acc) return s;
  }
  // rounding left u above the cumulative sum: take the last state with mass
  for (std::size_t j = 4; j-- > 0;) {
    if (dist[j] > 0.0) return kAllStates[j];
  }
  return PuState::BusyL0;
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double v) noexcept {
    sum += v;
    sum_sq += v * v;
  }
  void merge(const Moments& o) noexcept {
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
};

// Per-block moments: su, then su_share per channel, then pu per channel.
struct Block {
  std::vector<Moments> stats;
  std::vector<double> trace;
};

constexpr std::uint64_t kBlockEpisodes = 1024;

class Simulator {
 public:
  Simulator(const Scenario& scenario, const Policy& policy) : scenario_(scenario), policy_(policy) {
    for (const auto& c : scenario.channels()) initial_.push_back(initial_row(c));
  }

  // Fills su_share and pu with per-channel totals for one episode.
  void episode(std::uint64_t seed, std::uint64_t e, std::vector<double>& su_share, std::vector<double>& pu) const {
    const std::size_t n_ch = scenario_.channel_count();
    SplitMix64 rng(seed, e);
    std::vector<PuState> state(n_ch);
    for (std::size_t n = 0; n < n_ch; ++n) state[n] = sample(initial_[n], rng.uniform());
    std::fill(su_share.begin(), su_share.end(), 0.0);
    std::fill(pu.begin(), pu.end(), 0.0);

    std::int64_t node = policy_.sensing.empty() ? SensingPolicyTree::kNone : 0;
    for (std::size_t t = 0; t < scenario_.horizon(); ++t) {
      const std::size_t a = channel_at(policy_.sensing, node);
      const ChannelAction& action = policy_.schedule.at(t, a);
      const bool idle = is_idle(state[a]);
      // sensing result: idle declared busy w.p. epsilon, busy declared idle w.p. delta
      const double u_sense = rng.uniform();
      const bool declared_idle = idle ? u_sense >= action.point.epsilon : u_sense < action.point.delta;
      const double f = declared_idle ? action.access.f1 : action.access.f0;
      const bool access = rng.uniform() < f;
      const bool success = access && idle;
      const bool collision = access && !idle;
      if (success) su_share[a] += 1.0;
      for (std::size_t n = 0; n < n_ch; ++n) {
        if (is_busy(state[n]) && !(n == a && collision)) pu[n] += 1.0;
      }
      for (std::size_t n = 0; n < n_ch; ++n) {
        const ChannelParams& p = scenario_.channel(n);
        const auto row = n == a ? transition_row_sensed(p, state[n], collision ? 1.0 : 0.0)
                                : transition_row_unsensed(p, state[n]);
        state[n] = sample(row, rng.uniform());
      }
      node = child_of(policy_.sensing, node, success ? Feedback::Success : Feedback::Failure);
    }
  }

  Block run_block(std::uint64_t seed, std::uint64_t first, std::uint64_t last, bool keep_trace) const {
    const std::size_t n_ch = scenario_.channel_count();
    const double t = static_cast<double>(scenario_.horizon());
    Block block;
    block.stats.resize(1 + 2 * n_ch);
    std::vector<double> su_share(n_ch), pu(n_ch);
    for (std::uint64_t e = first; e < last; ++e) {
      episode(seed, e, su_share, pu);
      double su = 0.0;
      for (std::size_t n = 0; n < n_ch; ++n) {
        su += su_share[n];
        block.stats[1 + n].add(su_share[n] / t);
        block.stats[1 + n_ch + n].add(pu[n] / t);
      }
      block.stats[0].add(su / t);
      if (keep_trace) block.trace.push_back(su / t);
    }
    return block;
  }

 private:
  const Scenario& scenario_;
  const Policy& policy_;
  std::vector<StateDistribution> initial_;
};

std::optional<double> standard_error(const Moments& m, std::uint64_t n) {
  if (n < 2) return std::nullopt;
  const double count = static_cast<double>(n);
  const double mean = m.sum / count;
  const double var = std::max(0.0, (m.sum_sq - count * mean * mean) / (count - 1.0));
  return std::sqrt(var / count);
}

}  // namespace

EvaluationReport evaluate_exact(const Scenario& scenario, const Policy& policy, std::uint64_t node_budget) {
  return evaluate_exact(scenario, policy, BeliefMatrix::initial(scenario.channels()), node_budget);
}

EvaluationReport evaluate_exact(const Scenario& scenario, const Policy& policy, const BeliefMatrix& start,
                                std::uint64_t node_budget) {
  check_policy(scenario, policy);
  if (start.size() != scenario.channel_count()) throw InvalidParameters("start belief does not match the scenario");
  // one branch per feedback history: a binary tree whatever N is
  const std::uint64_t need = required_nodes(1, scenario.horizon());
  if (need > node_budget) throw BudgetExceeded(need, node_budget);
  ExactWalk walk(scenario, policy);
  walk.visit(start, 1.0, 0, policy.sensing.empty() ? SensingPolicyTree::kNone : 0);
  return walk.report();
}

double exact_su_value(const Scenario& scenario, const Policy& policy, std::uint64_t node_budget) {
  return evaluate_exact(scenario, policy, node_budget).su_total;
}

std::vector<double> exact_pu_throughput(const Scenario& scenario, const Policy& policy, std::uint64_t node_budget) {
  return evaluate_exact(scenario, policy, node_budget).pu_normalized;
}

EvaluationReport monte_carlo(const Scenario& scenario, const Policy& policy, std::uint64_t episodes,
                             std::uint64_t seed, unsigned threads) {
  check_policy(scenario, policy);
  if (episodes < 1) throw InvalidParameters("episodes must be >= 1");
  const Simulator sim(scenario, policy);
  const bool keep_trace = episodes <= kEpisodeTraceLimit;
  const std::uint64_t n_blocks = (episodes + kBlockEpisodes - 1) / kBlockEpisodes;
  std::vector<Block> blocks(n_blocks);

  unsigned workers = threads != 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_blocks));
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
      const std::uint64_t first = b * kBlockEpisodes;
      blocks[b] = sim.run_block(seed, first, std::min(episodes, first + kBlockEpisodes), keep_trace);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  const std::size_t n_ch = scenario.channel_count();
  std::vector<Moments> total(1 + 2 * n_ch);
  EvaluationReport r;
  for (const auto& block : blocks) {
    for (std::size_t i = 0; i < total.size(); ++i) total[i].merge(block.stats[i]);
    r.episode_su.insert(r.episode_su.end(), block.trace.begin(), block.trace.end());
  }

  const double count = static_cast<double>(episodes);
  r.method = EvaluationMethod::MonteCarlo;
  r.episodes = episodes;
  r.seed = seed;
  r.su_normalized = total[0].sum / count;
  r.su_total = r.su_normalized * static_cast<double>(scenario.horizon());
  r.su_normalized_se = standard_error(total[0], episodes);
  for (std::size_t n = 0; n < n_ch; ++n) {
    r.su_share.push_back(total[1 + n].sum / count);
    r.su_share_se.push_back(standard_error(total[1 + n], episodes));
    r.pu_normalized.push_back(total[1 + n_ch + n].sum / count);
    r.pu_normalized_se.push_back(standard_error(total[1 + n_ch + n], episodes));
  }
  fill_common(r, scenario);
  return r;
}

double su_upper_bound(const ChannelParams& params, double zeta) { return 1.0 - benchmark_throughput(params, zeta); }

ConsistencyVerdict compare_reports(const EvaluationReport& exact, const EvaluationReport& mc, double sigmas) {
  if (exact.su_share.size() != mc.su_share.size()) throw InvalidParameters("reports cover different channel counts");
  ConsistencyVerdict verdict;
  auto check = [&](double e, double m, const std::optional<double>& se) {
    const double diff = std::abs(e - m);
    if (!se || *se == 0.0) {
      if (diff > 1e-12) verdict.consistent = false;
      return;
    }
    const double z = diff / *se;
    verdict.max_z = std::max(verdict.max_z, z);
    if (z > sigmas) verdict.consistent = false;
  };
  check(exact.su_normalized, mc.su_normalized, mc.su_normalized_se);
  for (std::size_t n = 0; n < exact.su_share.size(); ++n) {
    check(exact.su_share[n], mc.su_share[n], mc.su_share_se[n]);
    check(exact.pu_normalized[n], mc.pu_normalized[n], mc.pu_normalized_se[n]);
  }
  return verdict;
}

}  // namespace osa
