#include "fluctwell/well.hpp"

#include <cmath>
#include <string>

#include "fluctwell/constants.hpp"
#include "fluctwell/errors.hpp"

namespace fluctwell {

namespace {

void require_width(double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw DomainError("well width must be positive and finite, got " + std::to_string(width));
  }
}

void require_index(int n) {
  if (n < 1) throw DomainError("eigenstate index must be >= 1, got " + std::to_string(n));
}

}  // namespace

WellConfig WellConfig::physical(double a_bar_m, double mass_kg, double hbar_js) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(a_bar_m)) throw DomainError("a_bar must be positive");
  if (!positive(mass_kg)) throw DomainError("mass must be positive");
  if (!positive(hbar_js)) throw DomainError("hbar must be positive");
  WellConfig cfg;
  cfg.mode_ = UnitMode::physical;
  cfg.a_bar_ = a_bar_m;
  cfg.mass_ = mass_kg;
  cfg.hbar_ = hbar_js;
  return cfg;
}

WellConfig WellConfig::electron(double a_bar_m) {
  return physical(a_bar_m, constants::electron_mass, constants::hbar);
}

SuperpositionSpec::SuperpositionSpec() noexcept
    : n_lo_(1), n_hi_(2), c_lo_(1.0 / std::sqrt(2.0)), c_hi_(1.0 / std::sqrt(2.0)) {}

SuperpositionSpec::SuperpositionSpec(int n_lo, int n_hi, Complex c_lo, Complex c_hi)
    : n_lo_(n_lo), n_hi_(n_hi), c_lo_(c_lo), c_hi_(c_hi) {
  if (n_lo < 1 || n_hi <= n_lo) {
    throw DomainError("superposition indices must satisfy 1 <= n_lo < n_hi, got (" +
                      std::to_string(n_lo) + ", " + std::to_string(n_hi) + ")");
  }
  const double norm = std::norm(c_lo) + std::norm(c_hi);
  if (!(std::abs(norm - 1.0) <= 1e-12)) {
    throw DomainError("superposition amplitudes must satisfy |c_lo|^2 + |c_hi|^2 = 1, got " +
                      std::to_string(norm));
  }
}

double SuperpositionSpec::cross_weight() const noexcept {
  return 2.0 * std::abs(c_lo_) * std::abs(c_hi_);
}

double SuperpositionSpec::relative_phase() const noexcept {
  if (c_lo_ == 0.0 || c_hi_ == 0.0) return 0.0;
  return std::arg(c_hi_) - std::arg(c_lo_);
}

double eigen_amplitude(int n, double x, double width) {
  require_index(n);
  require_width(width);
  if (x < 0.0 || x > width) return 0.0;
  return std::sqrt(2.0 / width) * std::sin(n * constants::pi * x / width);
}

Complex eigenfunction(int n, EvalPoint point, double width, const WellConfig& cfg) {
  const double amplitude = eigen_amplitude(n, point.x, width);
  if (amplitude == 0.0) return {0.0, 0.0};
  return amplitude * std::polar(1.0, -angular_frequency(n, width, cfg) * point.t);
}

double angular_frequency(int n, double width, const WellConfig& cfg) {
  require_index(n);
  require_width(width);
  const double k = n * constants::pi / width;
  return cfg.hbar() * k * k / (2.0 * cfg.mass());
}

double bohr_frequency(const SuperpositionSpec& spec, double width, const WellConfig& cfg) {
  require_width(width);
  const double dn2 = double(spec.n_hi()) * spec.n_hi() - double(spec.n_lo()) * spec.n_lo();
  const double k = constants::pi / width;
  return dn2 * cfg.hbar() * k * k / (2.0 * cfg.mass());
}

double fixed_density(const SuperpositionSpec& spec, EvalPoint point, double width,
                     const WellConfig& cfg) {
  const Complex psi = spec.c_lo() * eigenfunction(spec.n_lo(), point, width, cfg) +
                      spec.c_hi() * eigenfunction(spec.n_hi(), point, width, cfg);
  return std::norm(psi);
}

double mixture_density(const SuperpositionSpec& spec, double x, double width) {
  const double lo = eigen_amplitude(spec.n_lo(), x, width);
  const double hi = eigen_amplitude(spec.n_hi(), x, width);
  return std::norm(spec.c_lo()) * lo * lo + std::norm(spec.c_hi()) * hi * hi;
}

double fixed_interference(const SuperpositionSpec& spec, EvalPoint point, double width,
                          const WellConfig& cfg) {
  const double lo = eigen_amplitude(spec.n_lo(), point.x, width);
  const double hi = eigen_amplitude(spec.n_hi(), point.x, width);
  const double omega = bohr_frequency(spec, width, cfg);
  return spec.cross_weight() * lo * hi * std::cos(omega * point.t - spec.relative_phase());
}

}  // namespace fluctwell
