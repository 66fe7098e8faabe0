#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "osa/evaluator.hpp"
#include "osa/lput.hpp"
#include "osa/policy.hpp"

namespace osa::cli {

/// Sensing tree as nested nodes: {"slot", "channel", "next": {"0": ..., "1": ...}}.
nlohmann::json sensing_tree_to_json(const SensingPolicyTree& tree);

/// Policy artifact; `lput` adds the per-channel schedule records.
nlohmann::json policy_to_json(const Policy& policy, const std::vector<LputSchedule>& lput = {});

nlohmann::json report_to_json(const EvaluationReport& report);

}  // namespace osa::cli
