#include "osa/policy.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include "osa/errors.hpp"

namespace osa {

PolicySchedule::PolicySchedule(std::size_t horizon, std::size_t channels, ChannelAction fill)
    : horizon_(horizon), channels_(channels), actions_(horizon * channels, fill) {
  if (horizon == 0 || channels == 0) throw InvalidParameters("policy schedule needs T >= 1 and N >= 1");
}

const ChannelAction& PolicySchedule::at(std::size_t slot, std::size_t channel) const {
  if (slot >= horizon_ || channel >= channels_) throw std::out_of_range("policy schedule index");
  return actions_[slot * channels_ + channel];
}

ChannelAction& PolicySchedule::at(std::size_t slot, std::size_t channel) {
  if (slot >= horizon_ || channel >= channels_) throw std::out_of_range("policy schedule index");
  return actions_[slot * channels_ + channel];
}

SensingPolicyTree SensingPolicyTree::constant(std::size_t channel, std::size_t horizon) {
  SensingPolicyTree tree;
  if (horizon == 0) return tree;
  tree.add(channel);
  // breadth-first: every node above the last level gets two children
  std::vector<std::size_t> level{0};
  for (std::size_t t = 1; t < horizon; ++t) {
    std::vector<std::size_t> next;
    next.reserve(level.size() * 2);
    for (std::size_t parent : level) {
      for (int k = 0; k < 2; ++k) {
        const std::size_t child = tree.add(channel);
        tree.nodes_[parent].next[k] = static_cast<std::int64_t>(child);
        next.push_back(child);
      }
    }
    level = std::move(next);
  }
  return tree;
}

std::size_t SensingPolicyTree::add(std::size_t channel) {
  nodes_.push_back(Node{channel, {kNone, kNone}});
  return nodes_.size() - 1;
}

std::optional<std::size_t> SensingPolicyTree::find(std::span<const Feedback> history) const {
  if (nodes_.empty()) return std::nullopt;
  std::size_t at = 0;
  for (Feedback k : history) {
    const std::int64_t next = nodes_[at].next[static_cast<int>(k)];
    if (next == kNone) return std::nullopt;
    at = static_cast<std::size_t>(next);
  }
  return at;
}

std::size_t SensingPolicyTree::channel_for(std::span<const Feedback> history) const {
  const auto at = find(history);
  return at ? nodes_[*at].channel : 0;
}

std::size_t SensingPolicyTree::depth() const {
  if (nodes_.empty()) return 0;
  std::size_t best = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 1}};
  while (!stack.empty()) {
    const auto [at, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    for (std::int64_t child : nodes_[at].next) {
      if (child != kNone) stack.emplace_back(static_cast<std::size_t>(child), d + 1);
    }
  }
  return best;
}

std::uint64_t required_nodes(std::size_t channels, std::size_t horizon) noexcept {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t branching = 2 * static_cast<std::uint64_t>(channels);
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (std::size_t t = 0; t < horizon; ++t) {
    if (total > kMax - level) return kMax;
    total += level;
    if (t + 1 < horizon) {
      if (branching != 0 && level > kMax / branching) return kMax;
      level *= branching;
    }
  }
  return total;
}

}  // namespace osa
