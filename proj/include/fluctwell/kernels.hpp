#pragma once

// Grid evaluation kernels. Every kernel has an OpenMP version and a serial
// reference; outputs are ordered by input index and identical between the two.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "fluctwell/noise.hpp"
#include "fluctwell/well.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fluctwell {

/// One (x, t) evaluation across all paths. Densities are in units of 1/ā,
/// time is reported as ω̄t.
struct DensityRecord {
  double x = 0.0;
  double omega_t = 0.0;
  double exact = 0.0;               // quadrature ensemble average
  double approx = 0.0;              // closed-form small-σ density
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  double interference_exact = 0.0;  // cross term as it enters `exact`
  double envelope_predicted = 0.0;  // cross weight·|bracket|·e^{−Γt²}
};

struct EvaluationOptions {
  QuadratureSpec quad;
  MonteCarloSpec mc;
  bool monte_carlo = true;  // false leaves mc_mean/mc_stderr at 0
};

/// Calls fn(i) for i in [0, count) on an OpenMP team; the first exception by
/// index is rethrown after the loop.
template <class Fn>
void parallel_for_index(std::size_t count, Fn&& fn, int threads = 0) {
  std::vector<std::exception_ptr> errors(count);
#ifdef _OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#else
  const int team = 1;
  (void)threads;
#endif
#pragma omp parallel for schedule(dynamic, 1) num_threads(team) if (team > 1 && count > 1)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(count); ++i) {
    try {
      fn(std::size_t(i));
    } catch (...) {
      errors[std::size_t(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

DensityRecord evaluate_record(const SuperpositionSpec& spec, EvalPoint point, const NoiseModel& noise,
                              const EvaluationOptions& opts, const WellConfig& cfg, int mc_threads = 0);

std::vector<DensityRecord> evaluate_records(const SuperpositionSpec& spec,
                                            std::span<const EvalPoint> points,
                                            const NoiseModel& noise, const EvaluationOptions& opts,
                                            const WellConfig& cfg, int threads = 0);

std::vector<DensityRecord> evaluate_records_serial(const SuperpositionSpec& spec,
                                                   std::span<const EvalPoint> points,
                                                   const NoiseModel& noise,
                                                   const EvaluationOptions& opts,
                                                   const WellConfig& cfg);

/// averaged_interference at each point.
std::vector<double> interference_series(const SuperpositionSpec& spec,
                                        std::span<const EvalPoint> points, const NoiseModel& noise,
                                        const QuadratureSpec& quad, const WellConfig& cfg,
                                        int threads = 0);

std::vector<double> interference_series_serial(const SuperpositionSpec& spec,
                                               std::span<const EvalPoint> points,
                                               const NoiseModel& noise, const QuadratureSpec& quad,
                                               const WellConfig& cfg);

}  // namespace fluctwell
