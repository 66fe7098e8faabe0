#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osa/belief.hpp"

namespace osa {

/// Per-slot, per-channel action used whenever that channel is the one sensed.
class PolicySchedule {
 public:
  PolicySchedule(std::size_t horizon, std::size_t channels, ChannelAction fill = {});

  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t channels() const noexcept { return channels_; }

  const ChannelAction& at(std::size_t slot, std::size_t channel) const;
  ChannelAction& at(std::size_t slot, std::size_t channel);

 private:
  std::size_t horizon_;
  std::size_t channels_;
  std::vector<ChannelAction> actions_;
};

/// Sensing rule as a tree over feedback histories. Node 0 is slot 0; the
/// children of a node at slot t are the nodes for slot t + 1 after feedback 0
/// and 1. Branches with negligible probability carry no child.
class SensingPolicyTree {
 public:
  static constexpr std::int64_t kNone = -1;

  struct Node {
    std::size_t channel = 0;
    std::array<std::int64_t, 2> next{kNone, kNone};
  };

  SensingPolicyTree() = default;

  /// Always sense `channel`; a full binary tree of the given depth.
  static SensingPolicyTree constant(std::size_t channel, std::size_t horizon);

  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  const Node& node(std::size_t i) const { return nodes_.at(i); }
  Node& node(std::size_t i) { return nodes_.at(i); }
  std::span<const Node> nodes() const noexcept { return nodes_; }

  std::size_t add(std::size_t channel);

  /// Node reached by a feedback history, if present.
  std::optional<std::size_t> find(std::span<const Feedback> history) const;

  /// Channel chosen after `history`; falls back to channel 0 on pruned branches.
  std::size_t channel_for(std::span<const Feedback> history) const;

  /// Longest root-to-leaf path in nodes.
  std::size_t depth() const;

 private:
  std::vector<Node> nodes_;
};

/// Complete SU policy: actions per slot and channel plus the sensing rule.
struct Policy {
  std::string constraint;  ///< "sccp" or "lput"
  PolicySchedule schedule;
  SensingPolicyTree sensing;
};

/// Sum over t = 1..T of (2N)^(t-1), saturating at UINT64_MAX.
std::uint64_t required_nodes(std::size_t channels, std::size_t horizon) noexcept;

inline constexpr std::uint64_t kDefaultNodeBudget = 5'000'000;

/// Below this probability a belief branch is dropped from exact enumeration.
inline constexpr double kBranchPruneProbability = 1e-15;

/// Q values closer than this are ties; the lowest channel index wins.
inline constexpr double kTieTolerance = 1e-12;

}  // namespace osa
