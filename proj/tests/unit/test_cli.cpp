#include <doctest.h>

#include <cstdlib>

#include "osa/cli/config.hpp"
#include "osa/cli/csv.hpp"
#include "osa/cli/presets.hpp"
#include "osa/cli/reproduce.hpp"
#include "osa/cli/run.hpp"
#include "osa/cli/serialize.hpp"
#include "osa/sccp.hpp"

using namespace osa;
using namespace osa::cli;
using nlohmann::json;

namespace {

json single() { return parse_json(preset_json("single_channel")); }

bool has_pointer(const std::vector<Diagnostic>& ds, const std::string& pointer) {
  for (const auto& d : ds) {
    if (d.pointer == pointer) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("bundled presets are valid") {
  const auto names = preset_names();
  CHECK(names.size() == 3);
  for (const auto& n : names) {
    CAPTURE(n);
    CHECK(validate_config(parse_json(preset_json(n))).empty());
  }
  CHECK_THROWS_AS(preset_json("nope"), std::out_of_range);
}

TEST_CASE("config conversion") {
  const auto cfg = config_from_json(single());
  CHECK(cfg.channels.size() == 1);
  CHECK(cfg.horizon == 5);
  CHECK(cfg.constraint == Constraint::Sccp);
  CHECK(cfg.sensor.noise_power == 1.0);
  CHECK(cfg.sensor.signal_power == doctest::Approx(3.16228).epsilon(1e-6));
  CHECK(cfg.psi.empty());

  const auto multi = config_from_json(parse_json(preset_json("multi_channel")));
  CHECK(multi.constraint == Constraint::Lput);
  CHECK(multi.psi == std::vector<double>(5, 0.8));
  const auto bench = multi.scenario().benchmarks();
  CHECK(std::abs(bench[0] - 0.855) < 1e-12);
  CHECK(std::abs(bench[1] - 0.8 / 0.9 * 0.95) < 1e-12);
  CHECK(std::abs(bench[2] - 0.8 / 0.9 * 0.95) < 1e-12);
}

TEST_CASE("config violations carry json pointers") {
  auto doc = single();
  doc["channels"][0]["alpha1"] = 0.05;
  CHECK(has_pointer(validate_config(doc), "/channels/0/alpha1"));

  doc = single();
  doc.erase("horizon");
  CHECK(has_pointer(validate_config(doc), "/horizon"));

  doc = single();
  doc["psi"] = 0.5;
  CHECK(has_pointer(validate_config(doc), "/psi"));

  doc = single();
  doc["constraint"] = "lput";
  doc["psi"] = {0.1, 0.2};
  CHECK(has_pointer(validate_config(doc), "/psi"));

  doc = single();
  doc["extra"] = 1;
  doc["sensor"]["m_samples"] = 0;
  doc["zeta"] = 1.5;
  doc["eval"]["method"] = "fast";
  const auto ds = validate_config(doc);
  CHECK(has_pointer(ds, "/extra"));
  CHECK(has_pointer(ds, "/sensor/m_samples"));
  CHECK(has_pointer(ds, "/zeta"));
  CHECK(has_pointer(ds, "/eval/method"));
  CHECK_THROWS_AS(config_from_json(doc), ConfigValidationError);

  CHECK_THROWS_AS(parse_json("{not json"), ConfigParseError);
}

TEST_CASE("node budget environment override") {
  ::unsetenv("OSA_NODE_BUDGET");
  CHECK(effective_node_budget(77) == 77);
  ::setenv("OSA_NODE_BUDGET", "1234", 1);
  CHECK(effective_node_budget(77) == 1234);
  ::setenv("OSA_NODE_BUDGET", "12x", 1);
  CHECK_THROWS_AS(effective_node_budget(77), ConfigValidationError);
  ::unsetenv("OSA_NODE_BUDGET");
}

TEST_CASE("csv formatting and round trip") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CsvTable t;
  t.header = {"x", "series", "value"};
  t.add_row({"1", "a", format_double(0.675)});
  t.add_row({"2", "b", format_double(1.0 / 3.0)});
  CHECK_THROWS(t.add_row({"3"}));
  const std::string text = to_csv(t);
  CHECK(text.back() == '\n');
  CHECK(to_csv(parse_csv(text)) == text);
  CHECK(std::stod(parse_csv(text).rows[1][2]) == 1.0 / 3.0);
  CHECK_THROWS(parse_csv("a,b\n1\n"));
}

TEST_CASE("reproduction targets") {
  const auto table = reproduce("table1");
  REQUIRE(table.table.rows.size() == 3);
  const double want[]{0.675, 0.71, 0.662};
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(std::stod(table.table.rows[i][2]) - want[i]) < 5e-4);
  CHECK_THROWS_AS(reproduce("fig99"), UnknownFigure);

  for (const auto& id : figure_ids()) {
    CAPTURE(id);
    const auto r = reproduce(id, 3);
    CHECK_FALSE(r.table.rows.empty());
    const std::string text = to_csv(r.table);
    CHECK(to_csv(parse_csv(text)) == text);
  }

  const auto fig9 = reproduce("fig9", 4);
  for (const auto& obs : fig9.observations) CHECK(obs.find("does not hold") == std::string::npos);
}

TEST_CASE("policy and report serialization") {
  const auto cfg = config_from_json(parse_json(preset_json("multi_channel")));
  const auto solved = solve_config(cfg, SolverOptions{});
  const json doc = policy_to_json(solved.policy, solved.lput);
  CHECK(doc["constraint"] == "lput");
  CHECK(doc["actions"].size() == 5);
  CHECK(doc["actions"][0].size() == 3);
  CHECK(doc["lput"].size() == 3);
  CHECK(doc["sensing"]["slot"] == 0);
  CHECK(doc["sensing"]["next"]["0"]["slot"] == 1);

  const auto report = evaluate_config(cfg, solved.policy, kDefaultNodeBudget);
  const json r = report_to_json(report);
  CHECK(r["method"] == "exact");
  CHECK(r["pu_normalized"].size() == 3);

  const auto summary = summary_table(cfg, solved, report);
  CHECK(summary.rows.size() == 1);
  CHECK(summary.header.size() == 5 + 4 * 3);
  CHECK(summary.rows[0].back() == "1");
}
