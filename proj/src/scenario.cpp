#include "osa/scenario.hpp"

#include <string>
#include <utility>

#include "osa/errors.hpp"

namespace osa {

Scenario::Scenario(std::vector<ChannelParams> channels, std::size_t horizon, double zeta,
                   EnergyDetectorParams sensor)
    : Scenario(std::move(channels), horizon, zeta, std::make_shared<EnergyDetectorRoc>(sensor)) {}

Scenario::Scenario(std::vector<ChannelParams> channels, std::size_t horizon, double zeta,
                   std::shared_ptr<const RocCurve> roc)
    : channels_(std::move(channels)), horizon_(horizon), zeta_(zeta), roc_(std::move(roc)) {
  validate();
}

void Scenario::validate() const {
  if (channels_.empty()) throw InvalidParameters("scenario needs at least one channel");
  if (horizon_ < 1) throw InvalidParameters("horizon must be >= 1");
  if (!(zeta_ >= 0.0 && zeta_ <= 1.0)) throw InvalidParameters("zeta must lie in [0, 1]");
  if (!roc_) throw InvalidParameters("scenario needs a ROC curve");
  for (std::size_t n = 0; n < channels_.size(); ++n) {
    if (channels_[n].degenerate()) {
      throw InvalidParameters("channel " + std::to_string(n + 1) +
                              ": degenerate level-0 chain (1 + alpha0 - beta0 = 0)");
    }
  }
}

Scenario Scenario::with_horizon(std::size_t horizon) const { return {channels_, horizon, zeta_, roc_}; }

Scenario Scenario::with_zeta(double zeta) const { return {channels_, horizon_, zeta, roc_}; }

Scenario Scenario::nonreactive() const {
  std::vector<ChannelParams> reduced;
  reduced.reserve(channels_.size());
  for (const auto& c : channels_) reduced.push_back(reduce_to_nonreactive(c));
  return {std::move(reduced), horizon_, zeta_, roc_};
}

std::vector<double> Scenario::benchmarks() const {
  std::vector<double> out;
  out.reserve(channels_.size());
  for (const auto& c : channels_) out.push_back(benchmark_throughput(c, zeta_));
  return out;
}

}  // namespace osa
