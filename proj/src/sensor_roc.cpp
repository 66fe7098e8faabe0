#include "osa/sensor_roc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "osa/errors.hpp"

namespace osa {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxTerms = 100'000;

void check_gamma_domain(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("incomplete gamma: a must be positive");
  if (!(x >= 0.0)) throw std::invalid_argument("incomplete gamma: x must be non-negative");
}

// exp(-x + a ln x - ln Gamma(a))
double gamma_prefactor(double a, double x) { return std::exp(-x + a * std::log(x) - std::lgamma(a)); }

// P(a, x) by its power series; converges fast for x < a + 1.
double lower_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxTerms; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) return sum * gamma_prefactor(a, x);
  }
  throw std::runtime_error("incomplete gamma series did not converge");
}

// Q(a, x) by the Legendre continued fraction (modified Lentz); for x >= a + 1.
double upper_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h * gamma_prefactor(a, x);
  }
  throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameters(std::string(what) + " must lie in [0, 1]");
}

// Bisection for the threshold where a monotone function of eta crosses
// `target`. `below(eta)` is true while eta is still left of the crossing.
template <typename Below>
double bisect_threshold(double hi, Below below) {
  int guard = 0;
  while (below(hi)) {
    hi *= 2.0;
    if (++guard > 1100) throw std::runtime_error("ROC inversion: threshold bracket overflow");
  }
  double lo = 0.0;
  for (int i = 0; i < 400; ++i) {
    if (hi - lo <= std::max(1e-12, 4.0 * kEps * hi)) break;
    const double mid = 0.5 * (lo + hi);
    if (below(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double regularized_lower_gamma(double a, double x) {
  check_gamma_domain(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return lower_series(a, x);
  return 1.0 - upper_fraction(a, x);
}

double regularized_upper_gamma(double a, double x) {
  check_gamma_domain(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - lower_series(a, x);
  return upper_fraction(a, x);
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

void EnergyDetectorParams::validate() const {
  if (m_samples < 1) throw InvalidParameters("m_samples must be >= 1");
  if (!(noise_power > 0.0) || !std::isfinite(noise_power)) throw InvalidParameters("noise_power must be > 0");
  if (!(signal_power > 0.0) || !std::isfinite(signal_power)) throw InvalidParameters("signal_power must be > 0");
}

EnergyDetectorParams EnergyDetectorParams::from_db(int m_samples, double noise_power_db,
                                                   double signal_power_db) {
  EnergyDetectorParams p{m_samples, db_to_linear(noise_power_db), db_to_linear(signal_power_db)};
  p.validate();
  return p;
}

OperatingPoint operating_point_from_threshold(const EnergyDetectorParams& params, double eta) {
  params.validate();
  if (!(eta >= 0.0)) throw std::invalid_argument("threshold must be non-negative");
  const double a = 0.5 * params.m_samples;
  const double busy_scale = 2.0 * (params.noise_power + params.signal_power);
  const double idle_scale = 2.0 * params.noise_power;
  return {regularized_upper_gamma(a, eta / idle_scale), regularized_lower_gamma(a, eta / busy_scale)};
}

RocInversion epsilon_for_delta(const EnergyDetectorParams& params, double delta_target) {
  params.validate();
  require_probability(delta_target, "delta");
  if (delta_target == 0.0) return {1.0, 0.0};
  if (delta_target == 1.0) return {0.0, std::numeric_limits<double>::infinity()};

  const double a = 0.5 * params.m_samples;
  const double busy_scale = 2.0 * (params.noise_power + params.signal_power);
  const double eta = bisect_threshold(busy_scale * params.m_samples, [&](double e) {
    return regularized_lower_gamma(a, e / busy_scale) < delta_target;
  });
  return {regularized_upper_gamma(a, eta / (2.0 * params.noise_power)), eta};
}

double delta_for_epsilon(const EnergyDetectorParams& params, double epsilon) {
  params.validate();
  require_probability(epsilon, "epsilon");
  if (epsilon == 1.0) return 0.0;
  if (epsilon == 0.0) return 1.0;

  const double a = 0.5 * params.m_samples;
  const double idle_scale = 2.0 * params.noise_power;
  const double eta = bisect_threshold(idle_scale * params.m_samples, [&](double e) {
    return regularized_upper_gamma(a, e / idle_scale) > epsilon;
  });
  return regularized_lower_gamma(a, eta / (2.0 * (params.noise_power + params.signal_power)));
}

namespace {

bool feasible_against(double optimal_delta, const OperatingPoint& point) {
  return point.delta >= optimal_delta - kRocTolerance && 1.0 - point.delta >= point.epsilon - kRocTolerance;
}

bool in_unit_square(const OperatingPoint& p) {
  return p.epsilon >= 0.0 && p.epsilon <= 1.0 && p.delta >= 0.0 && p.delta <= 1.0;
}

}  // namespace

bool is_feasible(const EnergyDetectorParams& params, const OperatingPoint& point) {
  if (!in_unit_square(point)) return false;
  return feasible_against(delta_for_epsilon(params, point.epsilon), point);
}

bool RocCurve::is_feasible(const OperatingPoint& point) const {
  if (!in_unit_square(point)) return false;
  return feasible_against(delta_for_epsilon(point.epsilon), point);
}

EnergyDetectorRoc::EnergyDetectorRoc(EnergyDetectorParams params) : params_(params) { params_.validate(); }

double EnergyDetectorRoc::epsilon_for_delta(double delta) const {
  return osa::epsilon_for_delta(params_, delta).epsilon;
}

double EnergyDetectorRoc::delta_for_epsilon(double epsilon) const {
  return osa::delta_for_epsilon(params_, epsilon);
}

double PerfectSensorRoc::epsilon_for_delta(double delta) const {
  require_probability(delta, "delta");
  return 0.0;
}

double PerfectSensorRoc::delta_for_epsilon(double epsilon) const {
  require_probability(epsilon, "epsilon");
  return 0.0;
}

}  // namespace osa
