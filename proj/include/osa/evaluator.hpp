#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osa/belief.hpp"
#include "osa/policy.hpp"
#include "osa/scenario.hpp"

namespace osa {

enum class EvaluationMethod { Exact, MonteCarlo };

std::string to_string(EvaluationMethod method);

struct EvaluationReport {
  EvaluationMethod method = EvaluationMethod::Exact;
  std::size_t horizon = 0;

  double su_total = 0.0;       ///< expected SU reward over the horizon
  double su_normalized = 0.0;  ///< su_total / T
  std::vector<double> su_share;       ///< normalized SU reward earned on each channel
  std::vector<double> pu_normalized;  ///< normalized PU throughput per channel
  std::vector<double> sum_throughput; ///< su_share + pu_normalized per channel
  std::vector<double> benchmark;
  std::vector<double> upper_bound;    ///< 1 - benchmark

  // exact only
  std::uint64_t branch_count = 0;
  double probability_mass = 0.0;

  // monte carlo only
  std::uint64_t episodes = 0;
  std::uint64_t seed = 0;
  std::optional<double> su_normalized_se;
  std::vector<std::optional<double>> su_share_se;
  std::vector<std::optional<double>> pu_normalized_se;
  /// Per-episode normalized SU reward, kept for small runs.
  std::vector<double> episode_su;
};

/// Expected rewards by enumerating the policy's belief tree. Throws
/// BudgetExceeded when the tree would exceed `node_budget` nodes.
EvaluationReport evaluate_exact(const Scenario& scenario, const Policy& policy,
                                std::uint64_t node_budget = kDefaultNodeBudget);

/// Same, starting from an arbitrary belief instead of the stationary one.
EvaluationReport evaluate_exact(const Scenario& scenario, const Policy& policy, const BeliefMatrix& start,
                                std::uint64_t node_budget = kDefaultNodeBudget);

/// Expected SU reward summed over the horizon.
double exact_su_value(const Scenario& scenario, const Policy& policy,
                      std::uint64_t node_budget = kDefaultNodeBudget);

/// Normalized PU throughput per channel.
std::vector<double> exact_pu_throughput(const Scenario& scenario, const Policy& policy,
                                        std::uint64_t node_budget = kDefaultNodeBudget);

inline constexpr std::size_t kEpisodeTraceLimit = 16;

/// Seeded simulation of the true PU chains under the policy. Episode e draws
/// from its own stream derived from (seed, e), so the report does not depend
/// on `threads` (0 picks the hardware count).
EvaluationReport monte_carlo(const Scenario& scenario, const Policy& policy, std::uint64_t episodes,
                             std::uint64_t seed, unsigned threads = 0);

/// 1 - benchmark throughput: the SU ceiling when the PU keeps its benchmark.
double su_upper_bound(const ChannelParams& params, double zeta);

struct ConsistencyVerdict {
  bool consistent = true;
  double max_z = 0.0;  ///< largest |mc - exact| / se over all estimates
};

/// Compares every Monte Carlo estimate against the exact value at `sigmas`
/// standard errors. Estimates with zero standard error must match exactly.
ConsistencyVerdict compare_reports(const EvaluationReport& exact, const EvaluationReport& mc,
                                   double sigmas = 4.0);

}  // namespace osa
