#include "fluctwell/ensemble.hpp"

#include <cmath>
#include <string>

#include "fluctwell/constants.hpp"
#include "fluctwell/errors.hpp"

namespace fluctwell {

namespace {

constexpr double imaginary_tolerance = 1e-9;

double lower_cut(double x, const WellConfig& cfg) { return x / cfg.a_bar() - 1.0; }

}  // namespace

double averaged_eigen_density(int n, EvalPoint point, const NoiseModel& noise,
                              const QuadratureSpec& quad, const WellConfig& cfg) {
  const double a_bar = cfg.a_bar();
  auto member = [&](double eps) {
    if (1.0 + eps <= 0.0) return 0.0;
    const double amp = eigen_amplitude(n, point.x, a_bar * (1.0 + eps));
    return amp * amp;
  };
  return expectation(member, noise, quad, lower_cut(point.x, cfg)).value;
}

namespace {

// √(θ/π)·A_q^±, i.e. the expectation of the A_q integrand. Finite in the
// fixed-boundary limit where A_q itself vanishes.
Complex normalized_a_q(int q, Sign sign, EvalPoint point, double omega_bar, const NoiseModel& noise,
                       const QuadratureSpec& quad, const WellConfig& cfg, double phase) {
  const double a_bar = cfg.a_bar();
  const double sv = sign_value(sign);
  const double spatial = q * constants::pi * point.x / a_bar;
  const double temporal = omega_bar * point.t;
  auto member = [&](double eps) -> Complex {
    const double stretch = 1.0 + eps;
    if (stretch <= 0.0 || point.x < 0.0 || point.x > a_bar * stretch) return {0.0, 0.0};
    return std::polar(1.0 / stretch, spatial / stretch + sv * (temporal / (stretch * stretch) - phase));
  };
  return expectation(member, noise, quad, lower_cut(point.x, cfg)).value;
}

}  // namespace

Complex a_q_exact(int q, Sign sign, EvalPoint point, double omega_bar, const NoiseModel& noise,
                  const QuadratureSpec& quad, const WellConfig& cfg, double phase) {
  if (q == 0) throw DomainError("A_q needs q != 0");
  return std::sqrt(constants::pi / noise.theta()) *
         normalized_a_q(q, sign, point, omega_bar, noise, quad, cfg, phase);
}

double averaged_interference(const SuperpositionSpec& spec, EvalPoint point, const NoiseModel& noise,
                             const QuadratureSpec& quad, const WellConfig& cfg) {
  if (point.x < 0.0) return 0.0;
  const double omega_bar = bohr_frequency(spec, cfg.a_bar(), cfg);
  const double phase = spec.relative_phase();
  auto a = [&](int q, Sign sign) {
    return normalized_a_q(q, sign, point, omega_bar, noise, quad, cfg, phase);
  };
  const int d = spec.difference_index();
  const int s = spec.sum_index();

  Complex sum{0.0, 0.0};
  for (Sign sign : {Sign::plus, Sign::minus}) {
    sum += a(d, sign) + a(-d, sign);
    sum -= a(s, sign) + a(-s, sign);
  }
  const Complex value = sum / (4.0 * cfg.a_bar());
  if (!(std::abs(value.imag()) <= imaginary_tolerance)) {
    throw ConsistencyError("interference combination kept an imaginary part of " +
                           std::to_string(value.imag()));
  }
  return value.real();
}

double averaged_density(const SuperpositionSpec& spec, EvalPoint point, const NoiseModel& noise,
                        const QuadratureSpec& quad, const WellConfig& cfg) {
  double density = std::norm(spec.c_lo()) * averaged_eigen_density(spec.n_lo(), point, noise, quad, cfg) +
                   std::norm(spec.c_hi()) * averaged_eigen_density(spec.n_hi(), point, noise, quad, cfg);
  const double weight = spec.cross_weight();
  if (weight != 0.0) density += weight * averaged_interference(spec, point, noise, quad, cfg);
  return density;
}

double averaged_density_direct(const SuperpositionSpec& spec, EvalPoint point,
                               const NoiseModel& noise, const QuadratureSpec& quad,
                               const WellConfig& cfg) {
  const double a_bar = cfg.a_bar();
  auto member = [&](double eps) {
    if (1.0 + eps <= 0.0) return 0.0;
    return fixed_density(spec, point, a_bar * (1.0 + eps), cfg);
  };
  return expectation(member, noise, quad, lower_cut(point.x, cfg)).value;
}

}  // namespace fluctwell
