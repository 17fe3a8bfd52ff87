#pragma once

// Monte-Carlo ensemble averages. Sample i draws its noise from (seed, i)
// alone, and partial sums are reduced in a fixed block order, so results are
// bit-identical for any thread count.

#include <cstdint>

#include "fluctwell/noise.hpp"
#include "fluctwell/well.hpp"

namespace fluctwell {

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::int64_t rejected = 0;  // draws with 1+ε ≤ 0 that were redrawn
};

/// Standard normal variate for (seed, index, attempt): SplitMix64 at a fixed
/// counter position, then Box–Muller.
double counter_normal(std::uint64_t seed, std::uint64_t index, std::uint32_t attempt) noexcept;

/// Throws RegimeError when more than samples·1e-6 draws had 1+ε ≤ 0.
void require_physical_draw_rate(std::int64_t rejected, std::int64_t samples);

/// Samples per reduction block.
inline constexpr std::int64_t mc_block_size = 4096;

/// Sample mean and standard error of fixed_density(spec, point, ā(1+ε_i)).
/// Unphysical draws are redrawn; more than samples·1e-6 of them raises
/// RegimeError. `threads` = 0 uses the OpenMP default.
MonteCarloEstimate mc_averaged_density(const SuperpositionSpec& spec, EvalPoint point,
                                       const NoiseModel& noise, const MonteCarloSpec& mc,
                                       const WellConfig& cfg, int threads = 0);

/// Single-threaded reference with the same block decomposition; must match
/// mc_averaged_density bit for bit.
MonteCarloEstimate mc_averaged_density_serial(const SuperpositionSpec& spec, EvalPoint point,
                                              const NoiseModel& noise, const MonteCarloSpec& mc,
                                              const WellConfig& cfg);

}  // namespace fluctwell
