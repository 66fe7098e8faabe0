#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "osa/pu_model.hpp"
#include "osa/sensor_roc.hpp"

namespace osa {

/// One SU sharing N reactive PU channels over a horizon of T slots with
/// collision cap zeta.
class Scenario {
 public:
  Scenario(std::vector<ChannelParams> channels, std::size_t horizon, double zeta,
           EnergyDetectorParams sensor);

  /// Same scenario seen through a synthetic ROC curve.
  Scenario(std::vector<ChannelParams> channels, std::size_t horizon, double zeta,
           std::shared_ptr<const RocCurve> roc);

  std::span<const ChannelParams> channels() const noexcept { return channels_; }
  const ChannelParams& channel(std::size_t n) const { return channels_.at(n); }
  std::size_t channel_count() const noexcept { return channels_.size(); }
  std::size_t horizon() const noexcept { return horizon_; }
  double zeta() const noexcept { return zeta_; }
  const RocCurve& roc() const noexcept { return *roc_; }
  std::shared_ptr<const RocCurve> shared_roc() const noexcept { return roc_; }

  Scenario with_horizon(std::size_t horizon) const;
  Scenario with_zeta(double zeta) const;
  /// Every channel replaced by its non-reactive reduction.
  Scenario nonreactive() const;

  /// Per-channel benchmark throughput.
  std::vector<double> benchmarks() const;

 private:
  void validate() const;

  std::vector<ChannelParams> channels_;
  std::size_t horizon_;
  double zeta_;
  std::shared_ptr<const RocCurve> roc_;
};

}  // namespace osa
