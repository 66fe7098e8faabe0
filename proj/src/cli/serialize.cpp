#include "osa/cli/serialize.hpp"

namespace osa::cli {

using nlohmann::json;

namespace {

json tree_node(const SensingPolicyTree& tree, std::size_t at, std::size_t slot) {
  const auto& node = tree.node(at);
  json out{{"slot", slot}, {"channel", node.channel}};
  json next = json::object();
  for (int k = 0; k < 2; ++k) {
    if (node.next[k] != SensingPolicyTree::kNone) {
      next[std::to_string(k)] = tree_node(tree, static_cast<std::size_t>(node.next[k]), slot + 1);
    }
  }
  if (!next.empty()) out["next"] = std::move(next);
  return out;
}

json optional_value(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json sensing_tree_to_json(const SensingPolicyTree& tree) {
  if (tree.empty()) return nullptr;
  return tree_node(tree, 0, 0);
}

json policy_to_json(const Policy& policy, const std::vector<LputSchedule>& lput) {
  json actions = json::array();
  for (std::size_t t = 0; t < policy.schedule.horizon(); ++t) {
    json slot = json::array();
    for (std::size_t n = 0; n < policy.schedule.channels(); ++n) {
      const ChannelAction& a = policy.schedule.at(t, n);
      slot.push_back({{"epsilon", a.point.epsilon},
                      {"delta", a.point.delta},
                      {"f0", a.access.f0},
                      {"f1", a.access.f1}});
    }
    actions.push_back(std::move(slot));
  }
  json out{{"constraint", policy.constraint},
           {"horizon", policy.schedule.horizon()},
           {"channels", policy.schedule.channels()},
           {"actions", std::move(actions)},
           {"sensing", sensing_tree_to_json(policy.sensing)}};
  if (!lput.empty()) {
    json schedules = json::array();
    for (const auto& s : lput) {
      json slots = json::array();
      for (const auto& slot : s.slots) {
        slots.push_back({{"requirement", slot.requirement},
                         {"omega", slot.omega},
                         {"delta_low", slot.delta_low},
                         {"delta_high", slot.delta_high},
                         {"psi", slot.psi},
                         {"delta_star", slot.delta_star},
                         {"epsilon_star", slot.epsilon_star},
                         {"pu_reward", slot.pu_reward}});
      }
      schedules.push_back({{"upsilon", s.upsilon}, {"slots", std::move(slots)}});
    }
    out["lput"] = std::move(schedules);
  }
  return out;
}

json report_to_json(const EvaluationReport& r) {
  json out{{"method", to_string(r.method)},
           {"horizon", r.horizon},
           {"su_total", r.su_total},
           {"su_normalized", r.su_normalized},
           {"su_share", r.su_share},
           {"pu_normalized", r.pu_normalized},
           {"sum_throughput", r.sum_throughput},
           {"benchmark", r.benchmark},
           {"upper_bound", r.upper_bound}};
  if (r.method == EvaluationMethod::Exact) {
    out["branch_count"] = r.branch_count;
    out["probability_mass"] = r.probability_mass;
    return out;
  }
  out["episodes"] = r.episodes;
  out["seed"] = r.seed;
  out["su_normalized_se"] = optional_value(r.su_normalized_se);
  json su_se = json::array(), pu_se = json::array();
  for (const auto& v : r.su_share_se) su_se.push_back(optional_value(v));
  for (const auto& v : r.pu_normalized_se) pu_se.push_back(optional_value(v));
  out["su_share_se"] = std::move(su_se);
  out["pu_normalized_se"] = std::move(pu_se);
  out["episode_su"] = r.episode_su;
  return out;
}

}  // namespace osa::cli
