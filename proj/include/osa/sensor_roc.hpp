#pragma once

#include <string>

namespace osa {

/// Regularized lower incomplete gamma P(a, x). Throws std::invalid_argument
/// for a <= 0, x < 0 or NaN inputs.
double regularized_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), evaluated
/// directly so that small tails keep their relative accuracy.
double regularized_upper_gamma(double a, double x);

/// Sensor operating point: false-alarm probability epsilon (idle declared
/// busy) and mis-detection probability delta (busy declared idle).
struct OperatingPoint {
  double epsilon = 1.0;
  double delta = 0.0;
};

/// Energy detector over M real Gaussian samples with linear-scale noise and
/// received PU signal powers.
struct EnergyDetectorParams {
  int m_samples = 30;
  double noise_power = 1.0;
  double signal_power = 1.0;

  /// Throws InvalidParameters unless m_samples >= 1 and both powers > 0.
  void validate() const;

  static EnergyDetectorParams from_db(int m_samples, double noise_power_db, double signal_power_db);
};

double db_to_linear(double db) noexcept;

/// (epsilon, delta) reached by the detector at decision threshold `eta`.
OperatingPoint operating_point_from_threshold(const EnergyDetectorParams& params, double eta);

struct RocInversion {
  double epsilon;
  double eta;  ///< infinity for delta_target == 1
};

/// Threshold and false-alarm probability at which the detector's
/// mis-detection probability equals `delta_target`.
RocInversion epsilon_for_delta(const EnergyDetectorParams& params, double delta_target);

/// Smallest mis-detection probability achievable at false-alarm `epsilon`.
double delta_for_epsilon(const EnergyDetectorParams& params, double epsilon);

/// Tolerance applied to the ROC and diagonal tests in is_feasible.
inline constexpr double kRocTolerance = 1e-9;

/// True iff the point lies on or above the optimal ROC curve and satisfies
/// 1 - delta >= epsilon.
bool is_feasible(const EnergyDetectorParams& params, const OperatingPoint& point);

/// Optimal ROC curve seen by the policies. The energy detector is the
/// production implementation; tests inject synthetic curves.
class RocCurve {
 public:
  virtual ~RocCurve() = default;

  virtual double epsilon_for_delta(double delta) const = 0;
  virtual double delta_for_epsilon(double epsilon) const = 0;
  virtual std::string name() const = 0;

  OperatingPoint point_for_delta(double delta) const { return {epsilon_for_delta(delta), delta}; }
  bool is_feasible(const OperatingPoint& point) const;
};

class EnergyDetectorRoc final : public RocCurve {
 public:
  explicit EnergyDetectorRoc(EnergyDetectorParams params);

  double epsilon_for_delta(double delta) const override;
  double delta_for_epsilon(double epsilon) const override;
  std::string name() const override { return "energy-detector"; }

  const EnergyDetectorParams& params() const noexcept { return params_; }

 private:
  EnergyDetectorParams params_;
};

/// Error-free sensor: epsilon = 0 at every mis-detection level.
class PerfectSensorRoc final : public RocCurve {
 public:
  double epsilon_for_delta(double delta) const override;
  double delta_for_epsilon(double epsilon) const override;
  std::string name() const override { return "perfect"; }
};

}  // namespace osa
