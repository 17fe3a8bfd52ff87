#include "fluctwell/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fluctwell/constants.hpp"
#include "fluctwell/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fluctwell {

namespace {

constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint32_t max_attempts = 64;
constexpr std::uint32_t counters_per_index = 2 * max_attempts;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform on (0, 1), never 0.
double to_open_unit(std::uint64_t bits) noexcept {
  return (double(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Welford accumulator; blocks are merged with Chan's update.
struct Partial {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t rejected = 0;

  void add(double v) noexcept {
    ++n;
    const double delta = v - mean;
    mean += delta / double(n);
    m2 += delta * (v - mean);
  }

  void merge(const Partial& o) noexcept {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = double(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * double(o.n) / total;
    m2 += o.m2 + delta * delta * double(n) * double(o.n) / total;
    n += o.n;
    rejected += o.rejected;
  }
};

struct Sampler {
  const SuperpositionSpec& spec;
  EvalPoint point;
  double sigma;
  std::uint64_t seed;
  const WellConfig& cfg;

  Partial block(std::int64_t b, std::int64_t total) const {
    Partial p;
    const std::int64_t begin = b * mc_block_size;
    const std::int64_t end = std::min(total, begin + mc_block_size);
    for (std::int64_t i = begin; i < end; ++i) {
      double eps = 0.0;
      for (std::uint32_t attempt = 0;; ++attempt) {
        eps = sigma * counter_normal(seed, std::uint64_t(i), attempt);
        if (1.0 + eps > 0.0) break;
        ++p.rejected;
        // Degenerate draw stream; pin to the mean width so the kernel stays total.
        if (attempt + 1 == max_attempts) {
          eps = 0.0;
          break;
        }
      }
      p.add(fixed_density(spec, point, cfg.a_bar() * (1.0 + eps), cfg));
    }
    return p;
  }
};

MonteCarloEstimate finish(const Partial& total, std::int64_t samples) {
  require_physical_draw_rate(total.rejected, samples);
  MonteCarloEstimate out;
  out.mean = total.mean;
  out.samples = total.n;
  out.rejected = total.rejected;
  const double variance = total.n > 1 ? total.m2 / double(total.n - 1) : 0.0;
  out.std_error = std::sqrt(std::max(variance, 0.0) / double(total.n));
  return out;
}

std::int64_t block_count(std::int64_t samples) {
  return (samples + mc_block_size - 1) / mc_block_size;
}

}  // namespace

void require_physical_draw_rate(std::int64_t rejected, std::int64_t samples) {
  if (double(rejected) > 1e-6 * double(samples)) {
    throw RegimeError("noise model out of regime: " + std::to_string(rejected) +
                      " unphysical width draws in " + std::to_string(samples) + " samples");
  }
}

double counter_normal(std::uint64_t seed, std::uint64_t index, std::uint32_t attempt) noexcept {
  const std::uint64_t base = mix64(seed);
  const std::uint64_t counter = index * counters_per_index + 2ULL * attempt;
  const double u1 = to_open_unit(mix64(base + (counter + 1) * golden_gamma));
  const double u2 = to_open_unit(mix64(base + (counter + 2) * golden_gamma));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * constants::pi * u2);
}

MonteCarloEstimate mc_averaged_density(const SuperpositionSpec& spec, EvalPoint point,
                                       const NoiseModel& noise, const MonteCarloSpec& mc,
                                       const WellConfig& cfg, int threads) {
  mc.validate();
  const Sampler sampler{spec, point, noise.sigma(), mc.seed, cfg};
  const std::int64_t blocks = block_count(mc.samples);
  std::vector<Partial> partials(static_cast<std::size_t>(blocks));

#ifdef _OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#else
  const int team = 1;
  (void)threads;
#endif
#pragma omp parallel for schedule(static) num_threads(team) if (team > 1 && blocks > 1)
  for (std::int64_t b = 0; b < blocks; ++b) {
    partials[std::size_t(b)] = sampler.block(b, mc.samples);
  }

  Partial total;
  for (const Partial& p : partials) total.merge(p);
  return finish(total, mc.samples);
}

MonteCarloEstimate mc_averaged_density_serial(const SuperpositionSpec& spec, EvalPoint point,
                                              const NoiseModel& noise, const MonteCarloSpec& mc,
                                              const WellConfig& cfg) {
  mc.validate();
  const Sampler sampler{spec, point, noise.sigma(), mc.seed, cfg};
  Partial total;
  const std::int64_t blocks = block_count(mc.samples);
  for (std::int64_t b = 0; b < blocks; ++b) total.merge(sampler.block(b, mc.samples));
  return finish(total, mc.samples);
}

}  // namespace fluctwell
