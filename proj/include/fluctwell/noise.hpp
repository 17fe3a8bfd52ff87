#pragma once

#include <cstdint>

namespace fluctwell {

/// Relative width fluctuation a = ā(1+ε), ε ~ Normal(0, σ²), θ = 1/(2σ²).
/// σ = 0 is the fixed-boundary limit (θ = ∞, all mass at ε = 0).
class NoiseModel {
 public:
  static constexpr double max_sigma = 0.05;

  /// Throws DomainError unless 0 ≤ sigma ≤ max_sigma.
  explicit NoiseModel(double sigma);

  static NoiseModel fixed() { return NoiseModel(0.0); }

  double sigma() const noexcept { return sigma_; }
  double theta() const noexcept { return theta_; }
  bool is_fixed() const noexcept { return sigma_ == 0.0; }

 private:
  double sigma_;
  double theta_;
};

/// f(ε) = √(θ/π) e^{−θε²}.
double noise_pdf(double eps, const NoiseModel& noise);

struct QuadratureSpec {
  int nodes = 128;
  double convergence_rtol = 1e-10;

  /// Throws DomainError if nodes < 16 or rtol is not positive.
  void validate() const;
};

struct MonteCarloSpec {
  std::int64_t samples = 100000;
  std::uint64_t seed = 0x5eed'f1c7'0a11'2011ULL;

  /// Throws DomainError if samples < 100.
  void validate() const;
};

}  // namespace fluctwell
