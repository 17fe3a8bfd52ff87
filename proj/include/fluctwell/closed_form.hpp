#pragma once

// Small-σ analytic approximations of the ensemble averages, decoherence
// timescales and physical-unit estimates.

#include "fluctwell/noise.hpp"
#include "fluctwell/well.hpp"

namespace fluctwell {

/// Where an approximate value was evaluated, relative to the regimes the
/// expansions assume. Attached instead of raising so that comparisons can
/// probe the edges.
struct RegimeValidity {
  double sigma = 0.0;
  double omega_t = 0.0;
  /// ω̄t ≥ 1: the late-time form has dropped the x-dependent Gaussian factor.
  bool late_time = false;
  /// 3σ²ω̄t, the mean phase drift the first-order expansion neglects.
  double neglected_phase = 0.0;
  bool higher_order_negligible = true;  // neglected_phase < 0.1
};

template <class T>
struct Approximated {
  T value{};
  RegimeValidity validity;
};

struct DecayParameters {
  double gamma = 0.0;      // Γ = 2ω̄²σ²
  double t_onset = 0.0;    // 1/ω̄
  double t_decay = 0.0;    // 1/√Γ = t_onset/(√2σ)
  double omega_bar = 0.0;
};

enum class EigenApproximation {
  damped,       // 1/ā − (1/ā)cos(2nπx/ā)·exp(−2n²π²σ²x²/ā²)
  unperturbed,  // (2/ā)sin²(nπx/ā), valid for πσx/ā ≪ 1
};

RegimeValidity assess_regime(const SuperpositionSpec& spec, EvalPoint point, const NoiseModel& noise,
                             const WellConfig& cfg);

Approximated<double> approx_eigen_density(int n, EvalPoint point, const NoiseModel& noise,
                                          const WellConfig& cfg,
                                          EigenApproximation form = EigenApproximation::damped);

/// First-order-in-exponent approximation of A_q^±:
/// √(π/θ)·exp[iqπ/ā(x ± āω̄t/qπ)]·exp[−q²π²/(4θā²)(x ± 2āω̄t/qπ)²].
/// Throws DomainError for q = 0.
Approximated<Complex> a_q_approx(int q, Sign sign, EvalPoint point, double omega_bar,
                                 const NoiseModel& noise, const WellConfig& cfg);

/// Late-time form: the x-dependence of the real exponent replaced by e^{−Γt²}.
Approximated<Complex> a_q_late(int q, Sign sign, EvalPoint point, double omega_bar,
                               const NoiseModel& noise, const WellConfig& cfg);

/// (1/ā)[cos(dπx/ā) − cos(sπx/ā)]·cos(ω̄t − φ)·e^{−Γt²} with d, s the
/// difference and sum of the eigenindices.
Approximated<double> approx_interference(const SuperpositionSpec& spec, EvalPoint point,
                                         const NoiseModel& noise, const WellConfig& cfg);

/// Fixed-width mixture plus 2|c_lo||c_hi|·approx_interference.
Approximated<double> approx_density(const SuperpositionSpec& spec, EvalPoint point,
                                    const NoiseModel& noise, const WellConfig& cfg);

/// The envelope |bracket|·e^{−Γt²}/ā times the cross weight: the largest
/// magnitude the approximate cross term can reach at time t.
double predicted_envelope(const SuperpositionSpec& spec, double x, double t, const NoiseModel& noise,
                          const WellConfig& cfg);

/// (1/ā)[cos(dπx/ā) − cos(sπx/ā)] at the mean width.
double interference_bracket(const SuperpositionSpec& spec, double x, const WellConfig& cfg);

DecayParameters decay_parameters(const SuperpositionSpec& spec, const NoiseModel& noise,
                                 const WellConfig& cfg);

/// Ground-state width √(ħ/(2Mω₀)) of a boundary oscillator of mass M.
double boundary_width_estimate(double mass, double omega0, const WellConfig& cfg);

/// Δx/ā.
double sigma_from_boundary_width(double delta_x, const WellConfig& cfg);

}  // namespace fluctwell
