#include "osa/cli/reproduce.hpp"

#include <cstdio>
#include <functional>
#include <map>
#include <tuple>
#include <utility>

#include "osa/cli/config.hpp"
#include "osa/cli/presets.hpp"
#include "osa/evaluator.hpp"
#include "osa/lput.hpp"
#include "osa/sccp.hpp"

namespace osa::cli {

namespace {

constexpr double kSingleChannelZetas[]{0.05, 0.1};

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Scenario preset_scenario(std::string_view name) { return config_from_json(parse_json(preset_json(name))).scenario(); }

// Exact reports for one preset, cached per (constraint, zeta, T).
class Runs {
 public:
  explicit Runs(Scenario base) : base_(std::move(base)) {}

  const EvaluationReport& sccp(double zeta, std::size_t horizon, bool reactive = true) {
    return get({0, zeta, horizon, reactive}, [&] {
      Scenario sc = base_.with_zeta(zeta).with_horizon(horizon);
      if (!reactive) sc = sc.nonreactive();
      return evaluate_exact(sc, solve_sccp(sc).policy);
    });
  }

  const EvaluationReport& lput(double zeta, std::size_t horizon) {
    return get({1, zeta, horizon, true}, [&] {
      const Scenario sc = base_.with_zeta(zeta).with_horizon(horizon);
      const std::vector<double> psi(horizon, kDefaultPsi);
      return evaluate_exact(sc, multi_channel_policy(sc, psi).policy);
    });
  }

  std::size_t channels() const { return base_.channel_count(); }

 private:
  using Key = std::tuple<int, double, std::size_t, bool>;

  const EvaluationReport& get(const Key& key, const std::function<EvaluationReport()>& make) {
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, make()).first;
    return it->second;
  }

  Scenario base_;
  std::map<Key, EvaluationReport> cache_;
};

struct Builder {
  FigureResult result;

  Builder() { result.table.header = {"x", "series", "value"}; }

  void add(const std::string& x, const std::string& series, double value) {
    result.table.add_row({x, series, format_double(value)});
  }

  void observe(bool holds, const std::string& what) {
    result.observations.push_back(what + (holds ? ": holds" : ": does not hold"));
  }
};

std::string ch(std::size_t n) { return "ch" + std::to_string(n + 1); }

FigureResult table1() {
  const Scenario sc = preset_scenario("table1");
  struct Case {
    const char* name;
    double f1, epsilon, delta;
  };
  constexpr Case cases[]{{"case1", 0.5, 0.5, 0.5}, {"case2", 0.6, 0.5, 0.5}, {"case3", 0.6, 0.5, 0.1}};
  // second slot: error-free sensing with access after "idle"
  PolicySchedule continuation(sc.horizon(), 1, ChannelAction{PerfectSensorRoc().point_for_delta(1.0), {0.0, 1.0}});
  const auto future = optimal_continuation(sc.channels(), continuation, 0);
  const BeliefMatrix start = BeliefMatrix::initial(sc.channels());
  Builder b;
  for (const auto& c : cases) {
    const ActionTriple action{0, ChannelAction{{c.epsilon, c.delta}, {0.0, c.f1}}};
    b.add(c.name, "q", q_value(start, sc.channels(), action, future, 0, sc.horizon()));
  }
  return std::move(b.result);
}

FigureResult single_channel(const std::string& id, std::size_t max_t) {
  Runs runs(preset_scenario("single_channel"));
  Builder b;
  for (double z : kSingleChannelZetas) {
    const std::string zs = "_zeta" + label(z);
    for (std::size_t t = 1; t <= max_t; ++t) {
      const std::string x = std::to_string(t);
      const auto& s = runs.sccp(z, t);
      if (id == "fig4") {
        const auto& nr = runs.sccp(z, t, false);
        b.add(x, "sccp_reactive" + zs, s.su_normalized);
        b.add(x, "sccp_nonreactive" + zs, nr.su_normalized);
        if (t >= 2) b.observe(s.su_normalized > nr.su_normalized, "T=" + x + zs + " reactive su > nonreactive su");
        continue;
      }
      const auto& l = runs.lput(z, t);
      if (id == "fig5") {
        b.add(x, "sccp" + zs, s.pu_normalized[0]);
        b.add(x, "lput" + zs, l.pu_normalized[0]);
        b.add(x, "benchmark" + zs, s.benchmark[0]);
      } else if (id == "fig6") {
        b.add(x, "sccp" + zs, s.su_normalized);
        b.add(x, "lput" + zs, l.su_normalized);
        b.add(x, "upper_bound" + zs, s.upper_bound[0]);
        b.observe(s.su_normalized >= l.su_normalized, "T=" + x + zs + " sccp su >= lput su");
        b.observe(l.su_normalized <= l.upper_bound[0], "T=" + x + zs + " lput su <= upper bound");
      } else {
        b.add(x, "sccp" + zs, s.sum_throughput[0]);
        b.add(x, "lput" + zs, l.sum_throughput[0]);
        b.observe(l.sum_throughput[0] >= s.sum_throughput[0], "T=" + x + zs + " lput sum >= sccp sum");
      }
    }
  }
  return std::move(b.result);
}

FigureResult multi_channel(const std::string& id, std::size_t max_t) {
  Runs runs(preset_scenario("multi_channel"));
  constexpr double z = 0.05;
  Builder b;
  for (std::size_t t = 1; t <= max_t; ++t) {
    const std::string x = std::to_string(t);
    const auto& s = runs.sccp(z, t);
    const auto& l = runs.lput(z, t);
    if (id == "fig8" || id == "fig9") {
      const auto& r = id == "fig8" ? s : l;
      for (std::size_t n = 0; n < runs.channels(); ++n) {
        b.add(x, "pu_" + ch(n), r.pu_normalized[n]);
        b.add(x, "benchmark_" + ch(n), r.benchmark[n]);
        b.observe(r.pu_normalized[n] >= r.benchmark[n] - 1e-9, "T=" + x + " " + ch(n) + " pu >= benchmark");
      }
    } else if (id == "fig10") {
      b.add(x, "sccp", s.su_normalized);
      b.add(x, "lput", l.su_normalized);
      b.observe(s.su_normalized >= l.su_normalized, "T=" + x + " sccp su >= lput su");
    } else {
      for (std::size_t n = 0; n < runs.channels(); ++n) {
        b.add(x, "sccp_" + ch(n), s.sum_throughput[n]);
        b.add(x, "lput_" + ch(n), l.sum_throughput[n]);
        const bool contested = s.su_share[n] > 0.0 || l.su_share[n] > 0.0;
        if (contested) {
          b.observe(l.sum_throughput[n] >= s.sum_throughput[n], "T=" + x + " " + ch(n) + " lput sum >= sccp sum");
        }
      }
    }
  }
  return std::move(b.result);
}

}  // namespace

std::vector<std::string> figure_ids() {
  return {"table1", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11"};
}

FigureResult reproduce(const std::string& id, std::size_t max_horizon) {
  if (max_horizon < 1) throw std::invalid_argument("max_horizon must be >= 1");
  if (id == "table1") return table1();
  if (id == "fig4" || id == "fig5" || id == "fig6" || id == "fig7") return single_channel(id, max_horizon);
  if (id == "fig8" || id == "fig9" || id == "fig10" || id == "fig11") return multi_channel(id, max_horizon);
  throw UnknownFigure("unknown figure id: " + id);
}

}  // namespace osa::cli
