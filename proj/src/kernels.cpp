#include "fluctwell/kernels.hpp"

#include "fluctwell/closed_form.hpp"
#include "fluctwell/ensemble.hpp"
#include "fluctwell/montecarlo.hpp"

namespace fluctwell {

DensityRecord evaluate_record(const SuperpositionSpec& spec, EvalPoint point, const NoiseModel& noise,
                              const EvaluationOptions& opts, const WellConfig& cfg, int mc_threads) {
  DensityRecord r;
  r.x = point.x;
  r.omega_t = bohr_frequency(spec, cfg.a_bar(), cfg) * point.t;

  const double weight = spec.cross_weight();
  const double mixture =
      std::norm(spec.c_lo()) * averaged_eigen_density(spec.n_lo(), point, noise, opts.quad, cfg) +
      std::norm(spec.c_hi()) * averaged_eigen_density(spec.n_hi(), point, noise, opts.quad, cfg);
  r.interference_exact =
      weight != 0.0 ? weight * averaged_interference(spec, point, noise, opts.quad, cfg) : 0.0;
  r.exact = mixture + r.interference_exact;
  r.approx = approx_density(spec, point, noise, cfg).value;
  r.envelope_predicted = predicted_envelope(spec, point.x, point.t, noise, cfg);

  if (opts.monte_carlo) {
    const MonteCarloEstimate mc = mc_averaged_density(spec, point, noise, opts.mc, cfg, mc_threads);
    r.mc_mean = mc.mean;
    r.mc_stderr = mc.std_error;
  }
  return r;
}

std::vector<DensityRecord> evaluate_records(const SuperpositionSpec& spec,
                                            std::span<const EvalPoint> points,
                                            const NoiseModel& noise, const EvaluationOptions& opts,
                                            const WellConfig& cfg, int threads) {
  std::vector<DensityRecord> out(points.size());
  // Points are the parallel axis; each record's Monte-Carlo runs on one thread.
  parallel_for_index(
      points.size(),
      [&](std::size_t i) { out[i] = evaluate_record(spec, points[i], noise, opts, cfg, 1); },
      threads);
  return out;
}

std::vector<DensityRecord> evaluate_records_serial(const SuperpositionSpec& spec,
                                                   std::span<const EvalPoint> points,
                                                   const NoiseModel& noise,
                                                   const EvaluationOptions& opts,
                                                   const WellConfig& cfg) {
  std::vector<DensityRecord> out;
  out.reserve(points.size());
  for (const EvalPoint& p : points) out.push_back(evaluate_record(spec, p, noise, opts, cfg, 1));
  return out;
}

std::vector<double> interference_series(const SuperpositionSpec& spec,
                                        std::span<const EvalPoint> points, const NoiseModel& noise,
                                        const QuadratureSpec& quad, const WellConfig& cfg,
                                        int threads) {
  std::vector<double> out(points.size());
  parallel_for_index(
      points.size(),
      [&](std::size_t i) { out[i] = averaged_interference(spec, points[i], noise, quad, cfg); },
      threads);
  return out;
}

std::vector<double> interference_series_serial(const SuperpositionSpec& spec,
                                               std::span<const EvalPoint> points,
                                               const NoiseModel& noise, const QuadratureSpec& quad,
                                               const WellConfig& cfg) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const EvalPoint& p : points) out.push_back(averaged_interference(spec, p, noise, quad, cfg));
  return out;
}

}  // namespace fluctwell
