#pragma once

// Ensemble averages over Gaussian width fluctuations, evaluated by quadrature.

#include "fluctwell/noise.hpp"
#include "fluctwell/quadrature.hpp"
#include "fluctwell/well.hpp"

namespace fluctwell {

/// ⟨|ψ_n|²⟩ at lab-frame x. Members whose well does not reach x contribute 0.
double averaged_eigen_density(int n, EvalPoint point, const NoiseModel& noise,
                              const QuadratureSpec& quad, const WellConfig& cfg);

/// A_q^± = ∫ (1+ε)^{-1} exp[iqπx/(ā(1+ε)) ± i(ω̄t/(1+ε)² − phase) − θε²] dε,
/// with the integrand zeroed where x > ā(1+ε).
Complex a_q_exact(int q, Sign sign, EvalPoint point, double omega_bar, const NoiseModel& noise,
                  const QuadratureSpec& quad, const WellConfig& cfg, double phase = 0.0);

/// ⟨(2/a) sin(n_lo πx/a) sin(n_hi πx/a) cos(ω_a t − φ)⟩ from the eight A_q^±
/// integrals. For the default pair this is the signed ⟨|ψ₁||ψ₂| cos ωt⟩.
/// Throws ConsistencyError if the combination keeps an imaginary part above 1e-9.
double averaged_interference(const SuperpositionSpec& spec, EvalPoint point, const NoiseModel& noise,
                             const QuadratureSpec& quad, const WellConfig& cfg);

/// |c_lo|²⟨|ψ_lo|²⟩ + |c_hi|²⟨|ψ_hi|²⟩ + 2|c_lo||c_hi|·averaged_interference.
double averaged_density(const SuperpositionSpec& spec, EvalPoint point, const NoiseModel& noise,
                        const QuadratureSpec& quad, const WellConfig& cfg);

/// Same average taken directly over fixed_density(·, ā(1+ε)) in one
/// quadrature. Independent of the A_q^± decomposition.
double averaged_density_direct(const SuperpositionSpec& spec, EvalPoint point,
                               const NoiseModel& noise, const QuadratureSpec& quad,
                               const WellConfig& cfg);

}  // namespace fluctwell
