#include "osa/cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "osa/errors.hpp"
#include "osa/lput.hpp"

namespace osa::cli {

using nlohmann::json;

std::string to_string(Constraint c) { return c == Constraint::Sccp ? "sccp" : "lput"; }

Scenario ScenarioConfig::scenario() const { return Scenario(channels, horizon, zeta, sensor); }

namespace {

constexpr std::uint64_t kMaxSamples = 1'000'000;

std::string join_messages(const std::vector<Diagnostic>& diagnostics) {
  std::string out = "invalid scenario config";
  for (const auto& d : diagnostics) out += "\n  " + (d.pointer.empty() ? std::string("/") : d.pointer) + ": " + d.message;
  return out;
}

class Checker {
 public:
  void fail(std::string pointer, std::string message) { out_.push_back({std::move(pointer), std::move(message)}); }

  bool number(const json& v, const std::string& at) {
    if (v.is_number()) return true;
    fail(at, "expected a number");
    return false;
  }

  bool probability(const json& v, const std::string& at) {
    if (!number(v, at)) return false;
    const double x = v.get<double>();
    if (x >= 0.0 && x <= 1.0) return true;
    fail(at, "must lie in [0, 1]");
    return false;
  }

  bool positive_integer(const json& v, const std::string& at, std::uint64_t min = 1) {
    if (v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      if (v.get<std::uint64_t>() >= min) return true;
      fail(at, "must be >= " + std::to_string(min));
      return false;
    }
    fail(at, "expected a non-negative integer");
    return false;
  }

  void unknown_keys(const json& obj, const std::string& at, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.contains(key)) fail(at + "/" + key, "unknown key");
    }
  }

  bool require(const json& obj, const std::string& at, const char* key) {
    if (obj.contains(key)) return true;
    fail(at + "/" + key, "required key is missing");
    return false;
  }

  std::vector<Diagnostic> take() { return std::move(out_); }

 private:
  std::vector<Diagnostic> out_;
};

void check_channel(Checker& c, const json& ch, const std::string& at) {
  if (!ch.is_object()) {
    c.fail(at, "expected an object with alpha0, beta0, alpha1, beta1");
    return;
  }
  c.unknown_keys(ch, at, {"alpha0", "beta0", "alpha1", "beta1"});
  bool ok = true;
  for (const char* key : {"alpha0", "beta0", "alpha1", "beta1"}) {
    ok = c.require(ch, at, key) && c.probability(ch[key], at + "/" + key) && ok;
  }
  if (!ok) return;
  const double a0 = ch["alpha0"].get<double>(), b0 = ch["beta0"].get<double>();
  const double a1 = ch["alpha1"].get<double>(), b1 = ch["beta1"].get<double>();
  if (a1 < a0) c.fail(at + "/alpha1", "alpha1 must be >= alpha0");
  if (b1 < b0) c.fail(at + "/beta1", "beta1 must be >= beta0");
  if (1.0 + a0 - b0 == 0.0) c.fail(at, "degenerate level-0 chain (alpha0 = 0 and beta0 = 1)");
}

}  // namespace

ConfigValidationError::ConfigValidationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_messages(diagnostics)), diagnostics_(std::move(diagnostics)) {}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigParseError(e.what());
  }
}

std::vector<Diagnostic> validate_config(const json& doc) {
  Checker c;
  if (!doc.is_object()) {
    c.fail("", "top level must be an object");
    return c.take();
  }
  c.unknown_keys(doc, "", {"channels", "horizon", "zeta", "constraint", "psi", "sensor", "eval", "node_budget"});

  if (c.require(doc, "", "channels")) {
    const json& chs = doc["channels"];
    if (!chs.is_array() || chs.empty()) {
      c.fail("/channels", "expected a non-empty array");
    } else {
      for (std::size_t i = 0; i < chs.size(); ++i) check_channel(c, chs[i], "/channels/" + std::to_string(i));
    }
  }

  std::optional<std::uint64_t> horizon;
  if (c.require(doc, "", "horizon") && c.positive_integer(doc["horizon"], "/horizon")) {
    horizon = doc["horizon"].get<std::uint64_t>();
  }
  if (c.require(doc, "", "zeta")) c.probability(doc["zeta"], "/zeta");

  std::optional<std::string> constraint;
  if (c.require(doc, "", "constraint")) {
    const json& v = doc["constraint"];
    if (v.is_string() && (v == "sccp" || v == "lput")) {
      constraint = v.get<std::string>();
    } else {
      c.fail("/constraint", "expected \"sccp\" or \"lput\"");
    }
  }

  if (doc.contains("psi")) {
    const json& psi = doc["psi"];
    if (constraint && *constraint != "lput") c.fail("/psi", "psi applies only to the lput constraint");
    if (psi.is_array()) {
      if (horizon && psi.size() != *horizon) {
        c.fail("/psi", "expected " + std::to_string(*horizon) + " entries, one per slot");
      }
      for (std::size_t i = 0; i < psi.size(); ++i) c.probability(psi[i], "/psi/" + std::to_string(i));
    } else {
      c.probability(psi, "/psi");
    }
  }

  if (c.require(doc, "", "sensor")) {
    const json& s = doc["sensor"];
    if (!s.is_object()) {
      c.fail("/sensor", "expected an object");
    } else {
      c.unknown_keys(s, "/sensor", {"m_samples", "noise_power_db", "signal_power_db"});
      if (c.require(s, "/sensor", "m_samples") && c.positive_integer(s["m_samples"], "/sensor/m_samples") &&
          s["m_samples"].get<std::uint64_t>() > kMaxSamples) {
        c.fail("/sensor/m_samples", "must be <= " + std::to_string(kMaxSamples));
      }
      for (const char* key : {"noise_power_db", "signal_power_db"}) {
        if (c.require(s, "/sensor", key) && c.number(s[key], std::string("/sensor/") + key) &&
            !std::isfinite(db_to_linear(s[key].get<double>()))) {
          c.fail(std::string("/sensor/") + key, "power out of range");
        }
      }
    }
  }

  if (doc.contains("eval")) {
    const json& e = doc["eval"];
    if (!e.is_object()) {
      c.fail("/eval", "expected an object");
    } else {
      c.unknown_keys(e, "/eval", {"method", "episodes", "seed"});
      if (e.contains("method") && !(e["method"] == "exact" || e["method"] == "mc")) {
        c.fail("/eval/method", "expected \"exact\" or \"mc\"");
      }
      if (e.contains("episodes")) c.positive_integer(e["episodes"], "/eval/episodes");
      if (e.contains("seed")) c.positive_integer(e["seed"], "/eval/seed", 0);
    }
  }

  if (doc.contains("node_budget")) c.positive_integer(doc["node_budget"], "/node_budget");
  return c.take();
}

ScenarioConfig config_from_json(const json& doc) {
  auto diagnostics = validate_config(doc);
  if (!diagnostics.empty()) throw ConfigValidationError(std::move(diagnostics));

  ScenarioConfig cfg;
  for (const auto& ch : doc["channels"]) {
    cfg.channels.emplace_back(ch["alpha0"].get<double>(), ch["beta0"].get<double>(), ch["alpha1"].get<double>(),
                              ch["beta1"].get<double>());
  }
  cfg.horizon = doc["horizon"].get<std::size_t>();
  cfg.zeta = doc["zeta"].get<double>();
  cfg.constraint = doc["constraint"] == "lput" ? Constraint::Lput : Constraint::Sccp;
  if (cfg.constraint == Constraint::Lput) {
    if (!doc.contains("psi")) {
      cfg.psi.assign(cfg.horizon, kDefaultPsi);
    } else if (doc["psi"].is_array()) {
      cfg.psi = doc["psi"].get<std::vector<double>>();
    } else {
      cfg.psi.assign(cfg.horizon, doc["psi"].get<double>());
    }
  }
  const json& s = doc["sensor"];
  cfg.sensor = EnergyDetectorParams::from_db(s["m_samples"].get<int>(), s["noise_power_db"].get<double>(),
                                             s["signal_power_db"].get<double>());
  if (doc.contains("eval")) {
    const json& e = doc["eval"];
    if (e.contains("method")) cfg.eval.method = e["method"] == "mc" ? EvaluationMethod::MonteCarlo : EvaluationMethod::Exact;
    if (e.contains("episodes")) cfg.eval.episodes = e["episodes"].get<std::uint64_t>();
    if (e.contains("seed")) cfg.eval.seed = e["seed"].get<std::uint64_t>();
  }
  if (doc.contains("node_budget")) cfg.node_budget = doc["node_budget"].get<std::uint64_t>();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(parse_json(buf.str()));
}

std::uint64_t effective_node_budget(std::uint64_t configured) {
  const char* env = std::getenv("OSA_NODE_BUDGET");
  if (env == nullptr || *env == '\0') return configured;
  const std::string text(env);
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value == 0 || text.front() == '-') {
    throw ConfigValidationError({{"OSA_NODE_BUDGET", "expected a positive integer, got \"" + text + "\""}});
  }
  return value;
}

}  // namespace osa::cli
