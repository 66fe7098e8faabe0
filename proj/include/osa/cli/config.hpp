#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "osa/evaluator.hpp"
#include "osa/scenario.hpp"

namespace osa::cli {

enum class Constraint { Sccp, Lput };

std::string to_string(Constraint c);

struct EvalSettings {
  EvaluationMethod method = EvaluationMethod::Exact;
  std::uint64_t episodes = 100'000;
  std::uint64_t seed = 1;
};

/// Parsed and validated scenario document. Sensor powers are linear.
struct ScenarioConfig {
  std::vector<ChannelParams> channels;
  std::size_t horizon = 1;
  double zeta = 0.0;
  Constraint constraint = Constraint::Sccp;
  std::vector<double> psi;  ///< one entry per slot (lput)
  EnergyDetectorParams sensor;
  EvalSettings eval;
  std::uint64_t node_budget = kDefaultNodeBudget;

  Scenario scenario() const;
};

/// A schema or model-constraint violation located by JSON pointer.
struct Diagnostic {
  std::string pointer;
  std::string message;
};

class ConfigParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigValidationError : public std::runtime_error {
 public:
  explicit ConfigValidationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Throws ConfigParseError on malformed JSON.
nlohmann::json parse_json(std::string_view text);

/// Every violation in the document; empty when valid.
std::vector<Diagnostic> validate_config(const nlohmann::json& doc);

/// Validates then converts. Throws ConfigValidationError.
ScenarioConfig config_from_json(const nlohmann::json& doc);

ScenarioConfig load_config(const std::filesystem::path& path);

/// Budget after the OSA_NODE_BUDGET environment override, if set.
std::uint64_t effective_node_budget(std::uint64_t configured);

}  // namespace osa::cli
