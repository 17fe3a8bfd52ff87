#pragma once

// Probability-weighted quadrature rules for Gaussian expectations over ε.

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "fluctwell/errors.hpp"
#include "fluctwell/noise.hpp"

namespace fluctwell {

/// Nodes and weights. For Gauss–Hermite the weight function is e^{−u²};
/// for Gauss–Legendre it is 1 on [−1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Hermite rule (physicists' weight e^{−u²}). Cached; the
/// returned reference stays valid for the life of the program.
const QuadratureRule& gauss_hermite(int n);

/// n-point Gauss–Legendre rule on [−1, 1]. Cached like gauss_hermite.
const QuadratureRule& gauss_legendre(int n);

/// Half-width, in units of σ, beyond which the Gaussian weight is treated as
/// zero by the truncated rule (e^{−72} ≈ 5e−32).
inline constexpr double gaussian_cutoff_sigmas = 12.0;

/// Rule over ε whose weights already include f(ε): Σ w_i G(ε_i) ≈ ⟨G⟩.
/// Mass below `lower_cut` (and at 1+ε ≤ 0) is excluded. Gauss–Hermite is used
/// unless the cut sits within the cutoff window, where a composite
/// Gauss–Legendre rule on [lower_cut, 12σ] takes over so the kink at the cut
/// is an endpoint.
QuadratureRule noise_rule(const NoiseModel& noise, int nodes, double lower_cut);

template <class T>
struct Expectation {
  T value{};
  int nodes = 0;           // node count of the accepted estimate
  double difference = 0;   // |fine − coarse| of the accepted comparison
  bool converged = false;
};

namespace detail {

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
double real_part(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return v;
  } else {
    return v.real();
  }
}

}  // namespace detail

/// ⟨G⟩ = ∫ G(ε) f(ε) dε with G zero below `lower_cut`.
///
/// Each estimate is compared against the half-node-count rule; the
/// difference must not exceed convergence_rtol times ⟨|G|⟩. On failure the
/// node count doubles, up to 4× quad.nodes, after which ConvergenceError is
/// thrown with the last two estimates (real parts for complex G).
template <class G>
auto expectation(G&& g, const NoiseModel& noise, const QuadratureSpec& quad,
                 double lower_cut = -std::numeric_limits<double>::infinity())
    -> Expectation<std::decay_t<std::invoke_result_t<G&, double>>> {
  using T = std::decay_t<std::invoke_result_t<G&, double>>;
  quad.validate();

  if (noise.is_fixed()) {
    Expectation<T> out;
    out.value = (0.0 >= lower_cut) ? g(0.0) : T{};
    out.nodes = 1;
    out.converged = true;
    return out;
  }

  auto integrate = [&](int n, double* scale) {
    const QuadratureRule rule = noise_rule(noise, n, lower_cut);
    T sum{};
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const T v = g(rule.nodes[i]);
      sum += rule.weights[i] * v;
      abs_sum += rule.weights[i] * detail::magnitude(v);
    }
    if (scale) *scale = abs_sum;
    return sum;
  };

  int n = quad.nodes;
  T coarse = integrate(n / 2, nullptr);
  for (;;) {
    double scale = 0.0;
    const T fine = integrate(n, &scale);
    const double diff = detail::magnitude(fine - coarse);
    if (diff <= quad.convergence_rtol * scale) {
      return Expectation<T>{fine, n, diff, true};
    }
    if (2 * n > 4 * quad.nodes) {
      throw ConvergenceError("Gaussian quadrature did not converge with " + std::to_string(n) +
                                 " nodes (difference " + std::to_string(diff) + ")",
                             detail::real_part(fine), detail::real_part(coarse));
    }
    coarse = fine;
    n *= 2;
  }
}

}  // namespace fluctwell
