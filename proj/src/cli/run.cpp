#include "osa/cli/run.hpp"

#include <string>

#include "osa/sccp.hpp"

namespace osa::cli {

namespace {

// Slack for the "benchmark met" flag, matching the LPUT equality tolerance.
constexpr double kProtectionSlack = 1e-9;

}  // namespace

SolvedPolicy solve_config(const ScenarioConfig& config, const SolverOptions& options) {
  const Scenario scenario = config.scenario();
  if (config.constraint == Constraint::Sccp) {
    SccpSolution s = solve_sccp(scenario, options);
    return SolvedPolicy{std::move(s.policy), {}, s.value};
  }
  MultiChannelPolicy m = multi_channel_policy(scenario, config.psi, options);
  return SolvedPolicy{std::move(m.policy), std::move(m.schedules), m.sensing.value};
}

EvaluationReport evaluate_config(const ScenarioConfig& config, const Policy& policy, std::uint64_t node_budget,
                                 unsigned threads) {
  const Scenario scenario = config.scenario();
  if (config.eval.method == EvaluationMethod::Exact) return evaluate_exact(scenario, policy, node_budget);
  return monte_carlo(scenario, policy, config.eval.episodes, config.eval.seed, threads);
}

CsvTable summary_table(const ScenarioConfig& config, const SolvedPolicy& solved, const EvaluationReport& report) {
  CsvTable table;
  table.header = {"constraint", "horizon", "method", "su_value", "su_normalized"};
  const std::size_t n = report.pu_normalized.size();
  for (std::size_t c = 1; c <= n; ++c) {
    const std::string s = std::to_string(c);
    for (const char* col : {"pu_normalized_ch", "benchmark_ch", "upper_bound_ch", "protected_ch"}) {
      table.header.push_back(col + s);
    }
  }
  std::vector<std::string> row{to_string(config.constraint), std::to_string(config.horizon), to_string(report.method),
                               format_double(solved.value), format_double(report.su_normalized)};
  for (std::size_t c = 0; c < n; ++c) {
    row.push_back(format_double(report.pu_normalized[c]));
    row.push_back(format_double(report.benchmark[c]));
    row.push_back(format_double(report.upper_bound[c]));
    row.push_back(report.pu_normalized[c] >= report.benchmark[c] - kProtectionSlack ? "1" : "0");
  }
  table.add_row(std::move(row));
  return table;
}

}  // namespace osa::cli
