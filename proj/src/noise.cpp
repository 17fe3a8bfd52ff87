#include "fluctwell/noise.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fluctwell/constants.hpp"
#include "fluctwell/errors.hpp"

namespace fluctwell {

NoiseModel::NoiseModel(double sigma) : sigma_(sigma) {
  if (!(sigma >= 0.0) || !(sigma <= max_sigma)) {
    throw DomainError("sigma must lie in [0, 0.05], got " + std::to_string(sigma));
  }
  theta_ = sigma == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / (2.0 * sigma * sigma);
}

double noise_pdf(double eps, const NoiseModel& noise) {
  if (noise.is_fixed()) {
    return eps == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  const double theta = noise.theta();
  return std::sqrt(theta / constants::pi) * std::exp(-theta * eps * eps);
}

void QuadratureSpec::validate() const {
  if (nodes < 16) throw DomainError("quadrature nodes must be >= 16, got " + std::to_string(nodes));
  if (!(convergence_rtol > 0.0)) throw DomainError("convergence_rtol must be positive");
}

void MonteCarloSpec::validate() const {
  if (samples < 100) throw DomainError("Monte-Carlo samples must be >= 100, got " + std::to_string(samples));
}

}  // namespace fluctwell
