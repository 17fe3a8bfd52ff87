#pragma once

// Envelope extraction, decay-rate fitting and cross-path deviation reports.

#include <span>
#include <vector>

#include "fluctwell/closed_form.hpp"
#include "fluctwell/kernels.hpp"
#include "fluctwell/noise.hpp"
#include "fluctwell/well.hpp"

namespace fluctwell {

/// |interference| at a cosine extremum ω̄t = kπ.
struct EnvelopeSample {
  double t = 0.0;
  double magnitude = 0.0;
  int k = 0;
};

struct FitResult {
  double gamma_fit = 0.0;
  double amplitude_fit = 0.0;
  double residual_rms = 0.0;  // in ln(magnitude)
  int samples_used = 0;
};

/// Magnitudes at or below this are dropped before taking logs.
inline constexpr double envelope_floor = 1e-12;

/// Exact averaged_interference magnitudes at ω̄t = kπ, k = 0..k_max.
/// Throws DomainError if x is an interference node (|bracket| ≤ 1e-6) or
/// k_max < 4.
std::vector<EnvelopeSample> extract_envelope(const SuperpositionSpec& spec, double x,
                                             const NoiseModel& noise, const QuadratureSpec& quad,
                                             const WellConfig& cfg, int k_max, int threads = 0);

/// Smallest k_max whose window covers t ≤ 2·t_d.
int default_envelope_k_max(const SuperpositionSpec& spec, const NoiseModel& noise,
                           const WellConfig& cfg);

/// OLS of ln(magnitude) on t²: slope −Γ, intercept ln(amplitude).
/// Throws InsufficientDataError with fewer than 4 usable samples.
FitResult fit_gamma(std::span<const EnvelopeSample> samples);

struct ComparisonRecord {
  DensityRecord density;
  double fixed = 0.0;    // fixed-boundary density at ā
  double z_score = 0.0;  // (mc_mean − exact)/mc_stderr
  RegimeValidity regime;
};

struct DeviationReport {
  std::vector<ComparisonRecord> records;  // grid order
  double max_abs_exact_minus_approx = 0.0;
  double rms_exact_minus_approx = 0.0;
  double max_abs_z = 0.0;
  double max_abs_exact_minus_fixed = 0.0;
  /// Agreement expected between the exact and approximate paths.
  double approx_tolerance = 1e-2;
};

/// x/ā ∈ {0.2, 0.5, 0.7} × ω̄t ∈ {0, 10, 50, 100, 200}, converted to EvalPoints.
std::vector<EvalPoint> standard_grid(const SuperpositionSpec& spec, const WellConfig& cfg);

DeviationReport compare_paths(const SuperpositionSpec& spec, std::span<const EvalPoint> grid,
                              const NoiseModel& noise, const QuadratureSpec& quad,
                              const MonteCarloSpec& mc, const WellConfig& cfg, int threads = 0);

}  // namespace fluctwell
