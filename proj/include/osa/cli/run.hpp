#pragma once

#include <vector>

#include "osa/cli/config.hpp"
#include "osa/cli/csv.hpp"
#include "osa/evaluator.hpp"
#include "osa/lput.hpp"
#include "osa/sensing.hpp"

namespace osa::cli {

struct SolvedPolicy {
  Policy policy;
  std::vector<LputSchedule> lput;  ///< empty under sccp
  double value = 0.0;              ///< optimal SU reward over the horizon
};

/// Dispatches on the configured constraint.
SolvedPolicy solve_config(const ScenarioConfig& config, const SolverOptions& options);

/// Evaluation with the configured method.
EvaluationReport evaluate_config(const ScenarioConfig& config, const Policy& policy, std::uint64_t node_budget,
                                 unsigned threads = 0);

/// One-row summary: values, per-channel PU throughput, benchmark, bound and
/// whether the benchmark is met.
CsvTable summary_table(const ScenarioConfig& config, const SolvedPolicy& solved, const EvaluationReport& report);

}  // namespace osa::cli
