#include "fluctwell/closed_form.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fluctwell/constants.hpp"
#include "fluctwell/errors.hpp"

namespace fluctwell {

using constants::pi;

namespace {

void require_q(int q) {
  if (q == 0) throw DomainError("A_q approximation needs q != 0");
}

RegimeValidity regime(double sigma, double omega_t) {
  RegimeValidity r;
  r.sigma = sigma;
  r.omega_t = omega_t;
  r.late_time = std::abs(omega_t) >= 1.0;
  r.neglected_phase = 3.0 * sigma * sigma * std::abs(omega_t);
  r.higher_order_negligible = r.neglected_phase < 0.1;
  return r;
}

// √(π/θ) = σ√(2π); stays finite (zero) in the fixed-boundary limit.
double gaussian_norm(const NoiseModel& noise) { return noise.sigma() * std::sqrt(2.0 * pi); }

}  // namespace

RegimeValidity assess_regime(const SuperpositionSpec& spec, EvalPoint point, const NoiseModel& noise,
                             const WellConfig& cfg) {
  return regime(noise.sigma(), bohr_frequency(spec, cfg.a_bar(), cfg) * point.t);
}

Approximated<double> approx_eigen_density(int n, EvalPoint point, const NoiseModel& noise,
                                          const WellConfig& cfg, EigenApproximation form) {
  if (n < 1) throw DomainError("eigenstate index must be >= 1, got " + std::to_string(n));
  const double a_bar = cfg.a_bar();
  const double omega_t = angular_frequency(n, a_bar, cfg) * point.t;
  Approximated<double> out{0.0, regime(noise.sigma(), omega_t)};
  if (form == EigenApproximation::unperturbed) {
    const double amp = eigen_amplitude(n, point.x, a_bar);
    out.value = amp * amp;
    return out;
  }
  const double k = n * pi * point.x / a_bar;
  const double sigma = noise.sigma();
  out.value = (1.0 - std::cos(2.0 * k) * std::exp(-2.0 * k * k * sigma * sigma)) / a_bar;
  return out;
}

Approximated<Complex> a_q_approx(int q, Sign sign, EvalPoint point, double omega_bar,
                                 const NoiseModel& noise, const WellConfig& cfg) {
  require_q(q);
  const double a_bar = cfg.a_bar();
  const double s = sign_value(sign);
  const double omega_t = omega_bar * point.t;
  const double sigma = noise.sigma();
  const double phase = q * pi * point.x / a_bar + s * omega_t;
  const double shift = q * pi * point.x / a_bar + 2.0 * s * omega_t;
  // q²π²/(4θā²)·(x ± 2āω̄t/qπ)² = σ²/2·(qπx/ā ± 2ω̄t)².
  const double damping = std::exp(-0.5 * sigma * sigma * shift * shift);
  return {gaussian_norm(noise) * damping * std::polar(1.0, phase), regime(sigma, omega_t)};
}

Approximated<Complex> a_q_late(int q, Sign sign, EvalPoint point, double omega_bar,
                               const NoiseModel& noise, const WellConfig& cfg) {
  require_q(q);
  const double a_bar = cfg.a_bar();
  const double s = sign_value(sign);
  const double omega_t = omega_bar * point.t;
  const double sigma = noise.sigma();
  const double gamma = 2.0 * omega_bar * omega_bar * sigma * sigma;
  const double phase = q * pi * point.x / a_bar + s * omega_t;
  const double damping = std::exp(-gamma * point.t * point.t);
  return {gaussian_norm(noise) * damping * std::polar(1.0, phase), regime(sigma, omega_t)};
}

double interference_bracket(const SuperpositionSpec& spec, double x, const WellConfig& cfg) {
  const double u = pi * x / cfg.a_bar();
  return (std::cos(spec.difference_index() * u) - std::cos(spec.sum_index() * u)) / cfg.a_bar();
}

Approximated<double> approx_interference(const SuperpositionSpec& spec, EvalPoint point,
                                         const NoiseModel& noise, const WellConfig& cfg) {
  const DecayParameters decay = decay_parameters(spec, noise, cfg);
  const double omega_t = decay.omega_bar * point.t;
  const double value = interference_bracket(spec, point.x, cfg) *
                       std::cos(omega_t - spec.relative_phase()) *
                       std::exp(-decay.gamma * point.t * point.t);
  return {value, regime(noise.sigma(), omega_t)};
}

Approximated<double> approx_density(const SuperpositionSpec& spec, EvalPoint point,
                                    const NoiseModel& noise, const WellConfig& cfg) {
  Approximated<double> out = approx_interference(spec, point, noise, cfg);
  out.value = mixture_density(spec, point.x, cfg.a_bar()) + spec.cross_weight() * out.value;
  return out;
}

double predicted_envelope(const SuperpositionSpec& spec, double x, double t, const NoiseModel& noise,
                          const WellConfig& cfg) {
  const DecayParameters decay = decay_parameters(spec, noise, cfg);
  return spec.cross_weight() * std::abs(interference_bracket(spec, x, cfg)) *
         std::exp(-decay.gamma * t * t);
}

DecayParameters decay_parameters(const SuperpositionSpec& spec, const NoiseModel& noise,
                                 const WellConfig& cfg) {
  DecayParameters d;
  d.omega_bar = bohr_frequency(spec, cfg.a_bar(), cfg);
  const double sigma = noise.sigma();
  d.gamma = 2.0 * d.omega_bar * d.omega_bar * sigma * sigma;
  d.t_onset = 1.0 / d.omega_bar;
  d.t_decay = noise.is_fixed() ? std::numeric_limits<double>::infinity()
                               : d.t_onset / (std::sqrt(2.0) * sigma);
  return d;
}

double boundary_width_estimate(double mass, double omega0, const WellConfig& cfg) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("boundary mass must be positive");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw DomainError("boundary oscillator frequency must be positive");
  }
  return std::sqrt(cfg.hbar() / (2.0 * mass * omega0));
}

double sigma_from_boundary_width(double delta_x, const WellConfig& cfg) {
  return delta_x / cfg.a_bar();
}

}  // namespace fluctwell
