#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "osa/cli/config.hpp"
#include "osa/cli/csv.hpp"
#include "osa/cli/reproduce.hpp"
#include "osa/cli/run.hpp"
#include "osa/cli/serialize.hpp"
#include "osa/errors.hpp"

namespace fs = std::filesystem;
using namespace osa;
using namespace osa::cli;

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kUsage = 2, kInvalid = 3, kBudget = 4 };

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int cmd_validate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return kUsage;
  }
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto doc = parse_json(text);
  const auto diagnostics = validate_config(doc);
  if (diagnostics.empty()) {
    std::cout << path << ": valid\n";
    return kOk;
  }
  for (const auto& d : diagnostics) {
    std::cout << (d.pointer.empty() ? "/" : d.pointer) << ": " << d.message << "\n";
  }
  return kInvalid;
}

SolverOptions solver_options(const ScenarioConfig& cfg, unsigned threads) {
  return SolverOptions{effective_node_budget(cfg.node_budget), threads};
}

int cmd_solve(const std::string& path, const fs::path& out_dir, unsigned threads) {
  const ScenarioConfig cfg = load_config(path);
  const SolverOptions options = solver_options(cfg, threads);
  const SolvedPolicy solved = solve_config(cfg, options);
  const EvaluationReport report = evaluate_config(cfg, solved.policy, options.node_budget, threads);
  const CsvTable summary = summary_table(cfg, solved, report);
  write_file(out_dir / "policy.json", policy_to_json(solved.policy, solved.lput).dump(2) + "\n");
  write_file(out_dir / "summary.csv", to_csv(summary));
  std::cout << to_csv(summary);
  return kOk;
}

int cmd_reproduce(const std::string& id, const fs::path& out_dir, std::size_t max_horizon) {
  std::vector<std::string> ids;
  if (id == "all") {
    ids = figure_ids();
  } else {
    ids = {id};
  }
  for (const auto& fig : ids) {
    const FigureResult result = reproduce(fig, max_horizon);
    const fs::path file = out_dir / (fig + ".csv");
    write_file(file, to_csv(result.table));
    std::cout << "wrote " << file.string() << "\n";
    for (const auto& obs : result.observations) std::cout << "  " << fig << ": " << obs << "\n";
  }
  return kOk;
}

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> episodes;
  std::optional<std::uint64_t> seed;
  bool cross_check = false;
  unsigned threads = 0;
  std::string out;
};

int cmd_simulate(const SimulateArgs& args) {
  ScenarioConfig cfg = load_config(args.config);
  if (args.episodes) cfg.eval.episodes = *args.episodes;
  if (args.seed) cfg.eval.seed = *args.seed;
  if (cfg.eval.episodes < 1) throw ConfigValidationError(std::vector<Diagnostic>{Diagnostic{"--episodes", "must be >= 1"}});
  const SolverOptions options = solver_options(cfg, args.threads);
  const SolvedPolicy solved = solve_config(cfg, options);
  const Scenario scenario = cfg.scenario();
  const EvaluationReport mc = monte_carlo(scenario, solved.policy, cfg.eval.episodes, cfg.eval.seed, args.threads);
  nlohmann::json doc = report_to_json(mc);
  doc["constraint"] = to_string(cfg.constraint);
  if (args.cross_check) {
    const EvaluationReport exact = evaluate_exact(scenario, solved.policy, options.node_budget);
    const ConsistencyVerdict verdict = compare_reports(exact, mc, 4.0);
    doc["cross_check"] = {{"sigmas", 4.0},
                          {"consistent", verdict.consistent},
                          {"max_z", verdict.max_z},
                          {"exact", report_to_json(exact)}};
    std::cerr << "cross-check: " << (verdict.consistent ? "consistent" : "INCONSISTENT")
              << " within 4 standard errors (max |z| = " << verdict.max_z << ")\n";
  }
  const std::string text = doc.dump(2) + "\n";
  if (args.out.empty()) {
    std::cout << text;
  } else {
    write_file(args.out, text);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum access policies for a secondary user sharing reactive primary channels"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = ".";
  unsigned threads = 0;

  auto* validate = app.add_subcommand("validate", "Check a scenario config");
  validate->add_option("config", config, "Scenario JSON")->required();

  auto* solve = app.add_subcommand("solve", "Solve a scenario and write policy.json and summary.csv");
  solve->add_option("config", config, "Scenario JSON")->required();
  solve->add_option("--out", out_dir, "Output directory");
  solve->add_option("--threads", threads, "Worker threads (0 = hardware count)");

  std::string figure;
  std::size_t max_horizon = 8;
  auto* repro = app.add_subcommand("reproduce", "Emit a reproduction table as CSV");
  repro->add_option("id", figure, "table1, fig4 .. fig11, or all")->required();
  repro->add_option("--out", out_dir, "Output directory");
  repro->add_option("--max-horizon", max_horizon, "Largest T on the horizon axis")->check(CLI::Range(1, 12));

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo evaluation of the solved policy");
  simulate->add_option("config", sim.config, "Scenario JSON")->required();
  simulate->add_option("--episodes", sim.episodes, "Episode count (default from config)");
  simulate->add_option("--seed", sim.seed, "Base seed (default from config)");
  simulate->add_flag("--cross-check", sim.cross_check, "Compare against the exact evaluator at 4 standard errors");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = hardware count)");
  simulate->add_option("--out", sim.out, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(config);
    if (*solve) return cmd_solve(config, out_dir, threads);
    if (*repro) return cmd_reproduce(figure, out_dir, max_horizon);
    if (*simulate) return cmd_simulate(sim);
  } catch (const ConfigParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownFigure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const InvalidParameters& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
