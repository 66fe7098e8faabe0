#include "osa/sensing.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <future>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "osa/errors.hpp"

namespace osa {

namespace {

// Subtree rooted at index 0 with local child indices.
struct Subtree {
  double value = 0.0;
  std::vector<SensingPolicyTree::Node> nodes;
};

struct Branch {
  double prob = 0.0;
  Subtree sub;
};

class Solver {
 public:
  Solver(std::span<const ChannelParams> channels, const PolicySchedule& schedule, bool build_tree)
      : channels_(channels), schedule_(schedule), build_tree_(build_tree) {}

  Subtree solve(const BeliefMatrix& belief, std::size_t slot, unsigned threads) {
    expanded_.fetch_add(1, std::memory_order_relaxed);
    const std::size_t n_channels = channels_.size();
    const bool last = slot + 1 == schedule_.horizon();

    // children[a][k] for every candidate channel
    std::vector<std::array<Branch, 2>> children(n_channels);
    if (!last) {
      if (threads > 1) {
        std::vector<std::future<Subtree>> jobs;
        std::vector<std::pair<std::size_t, int>> where;
        for (std::size_t a = 0; a < n_channels; ++a) {
          for (Feedback k : kFeedbacks) {
            auto next = child(belief, slot, a, k, children[a][static_cast<int>(k)].prob);
            if (!next) continue;
            jobs.push_back(std::async(std::launch::async, [this, b = std::move(*next), slot] {
              return solve(b, slot + 1, 1);
            }));
            where.emplace_back(a, static_cast<int>(k));
          }
        }
        for (std::size_t j = 0; j < jobs.size(); ++j) {
          children[where[j].first][where[j].second].sub = jobs[j].get();
        }
      } else {
        for (std::size_t a = 0; a < n_channels; ++a) {
          for (Feedback k : kFeedbacks) {
            auto& br = children[a][static_cast<int>(k)];
            auto next = child(belief, slot, a, k, br.prob);
            if (next) br.sub = solve(*next, slot + 1, 1);
          }
        }
      }
    }

    std::size_t best = 0;
    double best_q = 0.0;
    for (std::size_t a = 0; a < n_channels; ++a) {
      const ChannelAction& action = schedule_.at(slot, a);
      double q = expected_su_reward(belief.row(a), action);
      if (!last) {
        for (Feedback k : kFeedbacks) {
          const auto& br = children[a][static_cast<int>(k)];
          if (br.prob > 0.0) q += br.prob * br.sub.value;
        }
      }
      if (a == 0 || q > best_q + kTieTolerance) {
        best = a;
        best_q = q;
      }
    }

    Subtree out;
    out.value = best_q;
    if (build_tree_) {
      out.nodes.push_back(SensingPolicyTree::Node{best, {SensingPolicyTree::kNone, SensingPolicyTree::kNone}});
      if (!last) {
        for (int k = 0; k < 2; ++k) {
          auto& br = children[best][k];
          if (!(br.prob > 0.0)) continue;
          const auto offset = static_cast<std::int64_t>(out.nodes.size());
          out.nodes[0].next[k] = offset;
          for (auto node : br.sub.nodes) {
            for (auto& c : node.next) {
              if (c != SensingPolicyTree::kNone) c += offset;
            }
            out.nodes.push_back(node);
          }
        }
      }
    }
    return out;
  }

  std::uint64_t expanded() const noexcept { return expanded_.load(); }

 private:
  // Belief after sensing `a` and seeing k, or nothing for a negligible branch.
  // Writes the branch probability (0 when pruned).
  std::optional<BeliefMatrix> child(const BeliefMatrix& belief, std::size_t slot, std::size_t a, Feedback k,
                                    double& prob) const {
    const ActionTriple action{a, schedule_.at(slot, a)};
    const double p = observation_likelihood(belief.row(a), action.action, k);
    if (p < kBranchPruneProbability) {
      prob = 0.0;
      return std::nullopt;
    }
    prob = p;
    return advance(belief, channels_, action, k);
  }

  std::span<const ChannelParams> channels_;
  const PolicySchedule& schedule_;
  bool build_tree_;
  std::atomic<std::uint64_t> expanded_{0};
};

void check_inputs(std::span<const ChannelParams> channels, const PolicySchedule& schedule,
                  const BeliefMatrix& belief, std::size_t first_slot, const SolverOptions& options) {
  if (channels.empty()) throw InvalidParameters("no channels");
  if (schedule.channels() != channels.size() || belief.size() != channels.size()) {
    throw InvalidParameters("schedule, belief and channel counts differ");
  }
  if (first_slot >= schedule.horizon()) throw InvalidParameters("first slot beyond the horizon");
  const std::uint64_t need = required_nodes(channels.size(), schedule.horizon() - first_slot);
  if (need > options.node_budget) throw BudgetExceeded(need, options.node_budget);
}

unsigned worker_count(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace

SensingSolution solve_sensing(std::span<const ChannelParams> channels, const PolicySchedule& schedule,
                              const BeliefMatrix& belief, std::size_t first_slot,
                              const SolverOptions& options) {
  check_inputs(channels, schedule, belief, first_slot, options);
  Solver solver(channels, schedule, true);
  Subtree root = solver.solve(belief, first_slot, worker_count(options.threads));
  SensingSolution out;
  out.value = root.value;
  for (const auto& node : root.nodes) {
    const std::size_t i = out.tree.add(node.channel);
    out.tree.node(i).next = node.next;
  }
  out.nodes_expanded = solver.expanded();
  return out;
}

double optimal_value(std::span<const ChannelParams> channels, const PolicySchedule& schedule,
                     const BeliefMatrix& belief, std::size_t first_slot, const SolverOptions& options) {
  check_inputs(channels, schedule, belief, first_slot, options);
  Solver solver(channels, schedule, false);
  return solver.solve(belief, first_slot, worker_count(options.threads)).value;
}

}  // namespace osa
