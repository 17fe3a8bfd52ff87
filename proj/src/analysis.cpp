#include "fluctwell/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fluctwell/constants.hpp"
#include "fluctwell/errors.hpp"

namespace fluctwell {

std::vector<EnvelopeSample> extract_envelope(const SuperpositionSpec& spec, double x,
                                             const NoiseModel& noise, const QuadratureSpec& quad,
                                             const WellConfig& cfg, int k_max, int threads) {
  if (k_max < 4) throw DomainError("envelope needs k_max >= 4, got " + std::to_string(k_max));
  const double bracket = interference_bracket(spec, x, cfg);
  if (!(std::abs(bracket) * cfg.a_bar() > 1e-6)) {
    throw DomainError("x/a_bar = " + std::to_string(x / cfg.a_bar()) +
                      " is an interference node: |cos(d*pi*x/a) - cos(s*pi*x/a)| <= 1e-6");
  }
  const double omega_bar = bohr_frequency(spec, cfg.a_bar(), cfg);
  std::vector<EvalPoint> points(std::size_t(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) points[std::size_t(k)] = {x, k * constants::pi / omega_bar};

  const std::vector<double> values = interference_series(spec, points, noise, quad, cfg, threads);
  std::vector<EnvelopeSample> out(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    out[k] = {points[k].t, std::abs(values[k]), int(k)};
  }
  return out;
}

int default_envelope_k_max(const SuperpositionSpec& spec, const NoiseModel& noise,
                           const WellConfig& cfg) {
  const DecayParameters d = decay_parameters(spec, noise, cfg);
  if (!std::isfinite(d.t_decay)) return 64;
  return std::max(4, int(std::ceil(2.0 * d.omega_bar * d.t_decay / constants::pi)));
}

FitResult fit_gamma(std::span<const EnvelopeSample> samples) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const EnvelopeSample& s : samples) {
    if (s.magnitude > envelope_floor && std::isfinite(s.magnitude)) {
      xs.push_back(s.t * s.t);
      ys.push_back(std::log(s.magnitude));
    }
  }
  if (xs.size() < 4) {
    throw InsufficientDataError("decay fit needs at least 4 samples above " +
                                std::to_string(envelope_floor) + ", got " +
                                std::to_string(xs.size()));
  }
  const double n = double(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("decay fit needs samples at distinct times");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;

  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss += r * r;
  }
  FitResult fit;
  fit.gamma_fit = -slope;
  fit.amplitude_fit = std::exp(intercept);
  fit.residual_rms = std::sqrt(ss / n);
  fit.samples_used = int(xs.size());
  return fit;
}

std::vector<EvalPoint> standard_grid(const SuperpositionSpec& spec, const WellConfig& cfg) {
  const double omega_bar = bohr_frequency(spec, cfg.a_bar(), cfg);
  std::vector<EvalPoint> grid;
  for (double x : {0.2, 0.5, 0.7}) {
    for (double wt : {0.0, 10.0, 50.0, 100.0, 200.0}) {
      grid.push_back({x * cfg.a_bar(), wt / omega_bar});
    }
  }
  return grid;
}

DeviationReport compare_paths(const SuperpositionSpec& spec, std::span<const EvalPoint> grid,
                              const NoiseModel& noise, const QuadratureSpec& quad,
                              const MonteCarloSpec& mc, const WellConfig& cfg, int threads) {
  EvaluationOptions opts;
  opts.quad = quad;
  opts.mc = mc;
  const std::vector<DensityRecord> densities = evaluate_records(spec, grid, noise, opts, cfg, threads);

  DeviationReport report;
  report.records.reserve(densities.size());
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < densities.size(); ++i) {
    ComparisonRecord rec;
    rec.density = densities[i];
    rec.fixed = fixed_density(spec, grid[i], cfg.a_bar(), cfg);
    rec.regime = assess_regime(spec, grid[i], noise, cfg);
    const double diff = rec.density.mc_mean - rec.density.exact;
    if (rec.density.mc_stderr > 0.0) {
      rec.z_score = diff / rec.density.mc_stderr;
    } else {
      // Degenerate ensemble: any disagreement beyond rounding is infinitely significant.
      rec.z_score = std::abs(diff) <= 1e-12 ? 0.0 : std::copysign(HUGE_VAL, diff);
    }
    const double dev = std::abs(rec.density.exact - rec.density.approx);
    report.max_abs_exact_minus_approx = std::max(report.max_abs_exact_minus_approx, dev);
    report.max_abs_exact_minus_fixed =
        std::max(report.max_abs_exact_minus_fixed, std::abs(rec.density.exact - rec.fixed));
    report.max_abs_z = std::max(report.max_abs_z, std::abs(rec.z_score));
    sum_sq += dev * dev;
    report.records.push_back(rec);
  }
  if (!report.records.empty()) {
    report.rms_exact_minus_approx = std::sqrt(sum_sq / double(report.records.size()));
  }
  return report;
}

}  // namespace fluctwell
