#pragma once

// Fixed-boundary quantum mechanics of the one-dimensional infinite well.

#include <complex>

namespace fluctwell {

using Complex = std::complex<double>;

enum class UnitMode { dimensionless, physical };

/// Unit system plus the mean width ā, particle mass and ħ.
/// Dimensionless mode pins all three to 1.
class WellConfig {
 public:
  /// ħ = m = ā = 1.
  static WellConfig dimensionless() noexcept { return WellConfig{}; }

  /// SI units. Throws DomainError unless every argument is positive and finite.
  static WellConfig physical(double a_bar_m, double mass_kg, double hbar_js);

  /// Electron in a well of the given mean width, CODATA constants.
  static WellConfig electron(double a_bar_m);

  UnitMode unit_mode() const noexcept { return mode_; }
  double a_bar() const noexcept { return a_bar_; }
  double mass() const noexcept { return mass_; }
  double hbar() const noexcept { return hbar_; }

 private:
  WellConfig() = default;

  UnitMode mode_ = UnitMode::dimensionless;
  double a_bar_ = 1.0;
  double mass_ = 1.0;
  double hbar_ = 1.0;
};

/// Two-level superposition c_lo ψ_{n_lo} + c_hi ψ_{n_hi}.
class SuperpositionSpec {
 public:
  /// (1, 2, 1/√2, 1/√2).
  SuperpositionSpec() noexcept;

  /// Throws DomainError unless 1 ≤ n_lo < n_hi and |c_lo|² + |c_hi|² = 1
  /// within 1e-12.
  SuperpositionSpec(int n_lo, int n_hi, Complex c_lo, Complex c_hi);

  int n_lo() const noexcept { return n_lo_; }
  int n_hi() const noexcept { return n_hi_; }
  Complex c_lo() const noexcept { return c_lo_; }
  Complex c_hi() const noexcept { return c_hi_; }

  /// 2|c_lo||c_hi|, the weight of the cross term in |ψ|².
  double cross_weight() const noexcept;
  /// arg c_hi − arg c_lo; the cross term oscillates as cos(ωt − phase).
  double relative_phase() const noexcept;
  /// n_hi − n_lo and n_hi + n_lo: the spatial wavenumbers (in units of π/a)
  /// of the interference bracket cos(dπx/a) − cos(sπx/a).
  int difference_index() const noexcept { return n_hi_ - n_lo_; }
  int sum_index() const noexcept { return n_hi_ + n_lo_; }

 private:
  int n_lo_;
  int n_hi_;
  Complex c_lo_;
  Complex c_hi_;
};

/// Branch of the e^{±iω̄t} factor in the conjugate-pair integrals.
enum class Sign { plus = 1, minus = -1 };

inline constexpr double sign_value(Sign s) noexcept { return s == Sign::plus ? 1.0 : -1.0; }

/// Lab-frame position and time.
struct EvalPoint {
  double x = 0.0;
  double t = 0.0;
};

/// ψ_n(x, t) for a well of the given width; exactly 0 outside [0, width].
Complex eigenfunction(int n, EvalPoint point, double width, const WellConfig& cfg);

/// Spatial part √(2/width)·sin(nπx/width), 0 outside the well.
double eigen_amplitude(int n, double x, double width);

/// ω_n = n²π²ħ / (2m·width²).
double angular_frequency(int n, double width, const WellConfig& cfg);

/// ω_{n_hi} − ω_{n_lo} at the given width.
double bohr_frequency(const SuperpositionSpec& spec, double width, const WellConfig& cfg);

/// |c_lo ψ_lo + c_hi ψ_hi|² evaluated from the complex amplitudes.
double fixed_density(const SuperpositionSpec& spec, EvalPoint point, double width,
                     const WellConfig& cfg);

/// |c_lo|²|ψ_lo|² + |c_hi|²|ψ_hi|²: the density with the cross term removed.
double mixture_density(const SuperpositionSpec& spec, double x, double width);

/// Signed cross term 2 Re(c_lo* c_hi ψ_lo* ψ_hi).
double fixed_interference(const SuperpositionSpec& spec, EvalPoint point, double width,
                          const WellConfig& cfg);

}  // namespace fluctwell
