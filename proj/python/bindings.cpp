#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "osa/cli/config.hpp"
#include "osa/cli/csv.hpp"
#include "osa/cli/reproduce.hpp"
#include "osa/cli/run.hpp"
#include "osa/cli/serialize.hpp"
#include "osa/errors.hpp"
#include "osa/pu_model.hpp"
#include "osa/sensor_roc.hpp"

namespace py = pybind11;
using namespace osa;

namespace {

cli::ScenarioConfig load(const std::string& text) { return cli::config_from_json(cli::parse_json(text)); }

SolverOptions options_for(const cli::ScenarioConfig& cfg) {
  return SolverOptions{cli::effective_node_budget(cfg.node_budget), 1};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectrum access policies for reactive primary users";

  py::register_exception<InvalidParameters>(m, "InvalidParameters", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<InfeasibleRequirement>(m, "InfeasibleRequirement", PyExc_RuntimeError);
  py::register_exception<cli::ConfigParseError>(m, "ConfigParseError", PyExc_ValueError);
  py::register_exception<cli::ConfigValidationError>(m, "ConfigValidationError", PyExc_ValueError);

  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init<double, double, double, double>(), py::arg("alpha0"), py::arg("beta0"), py::arg("alpha1"),
           py::arg("beta1"))
      .def_property_readonly("alpha0", &ChannelParams::alpha0)
      .def_property_readonly("beta0", &ChannelParams::beta0)
      .def_property_readonly("alpha1", &ChannelParams::alpha1)
      .def_property_readonly("beta1", &ChannelParams::beta1)
      .def("__repr__", [](const ChannelParams& p) {
        return "ChannelParams(" + std::to_string(p.alpha0()) + ", " + std::to_string(p.beta0()) + ", " +
               std::to_string(p.alpha1()) + ", " + std::to_string(p.beta1()) + ")";
      });

  m.def("benchmark_throughput", &benchmark_throughput, py::arg("params"), py::arg("zeta"));
  m.def(
      "stationary_busy", [](const ChannelParams& p) { return stationary_level0(p).busy; }, py::arg("params"));
  m.def("regularized_lower_gamma", &regularized_lower_gamma, py::arg("a"), py::arg("x"));
  m.def(
      "epsilon_for_delta",
      [](double delta, int m_samples, double noise_db, double signal_db) {
        return epsilon_for_delta(EnergyDetectorParams::from_db(m_samples, noise_db, signal_db), delta).epsilon;
      },
      py::arg("delta"), py::arg("m_samples") = 30, py::arg("noise_power_db") = 0.0,
      py::arg("signal_power_db") = 5.0);

  m.def(
      "validate_config",
      [](const std::string& text) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& d : cli::validate_config(cli::parse_json(text))) out.emplace_back(d.pointer, d.message);
        return out;
      },
      py::arg("config_json"));

  m.def(
      "solve",
      [](const std::string& text) {
        const auto cfg = load(text);
        py::gil_scoped_release release;
        const auto solved = cli::solve_config(cfg, options_for(cfg));
        return cli::policy_to_json(solved.policy, solved.lput).dump();
      },
      py::arg("config_json"), "Policy document as JSON text.");

  m.def(
      "evaluate",
      [](const std::string& text) {
        const auto cfg = load(text);
        py::gil_scoped_release release;
        const auto opts = options_for(cfg);
        const auto solved = cli::solve_config(cfg, opts);
        return cli::report_to_json(cli::evaluate_config(cfg, solved.policy, opts.node_budget)).dump();
      },
      py::arg("config_json"), "Evaluation report of the solved policy as JSON text.");

  m.def(
      "simulate",
      [](const std::string& text, std::uint64_t episodes, std::uint64_t seed, unsigned threads) {
        const auto cfg = load(text);
        py::gil_scoped_release release;
        const auto solved = cli::solve_config(cfg, options_for(cfg));
        return cli::report_to_json(monte_carlo(cfg.scenario(), solved.policy, episodes, seed, threads)).dump();
      },
      py::arg("config_json"), py::arg("episodes"), py::arg("seed"), py::arg("threads") = 0);

  m.def(
      "reproduce",
      [](const std::string& id, std::size_t max_horizon) {
        py::gil_scoped_release release;
        return cli::to_csv(cli::reproduce(id, max_horizon).table);
      },
      py::arg("figure"), py::arg("max_horizon") = 8, "Reproduction table as CSV text.");

  m.def("figure_ids", &cli::figure_ids);
}
