#include "fluctwell/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "fluctwell/constants.hpp"

namespace fluctwell {

namespace {

using constants::pi;

// Golub–Welsch on the symmetric Jacobi matrix of the Hermite recurrence,
// then Newton on the orthonormal polynomial to recover full relative
// accuracy in nodes and (non-underflowing) weights.
QuadratureRule build_gauss_hermite(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n - 1);
  for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(0.5 * k);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi_quarter = std::pow(pi, -0.25);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    double w = std::sqrt(pi) * solver.eigenvectors()(0, i) * solver.eigenvectors()(0, i);
    for (int iter = 0; iter < 8; ++iter) {
      double p_prev = 0.0;
      double p = pi_quarter;
      for (int j = 0; j < n; ++j) {
        const double p_next = x * std::sqrt(2.0 / (j + 1)) * p - std::sqrt(double(j) / (j + 1)) * p_prev;
        p_prev = p;
        p = p_next;
      }
      const double dp = std::sqrt(2.0 * n) * p_prev;
      if (!std::isfinite(p) || !std::isfinite(dp) || dp == 0.0) break;
      const double step = p / dp;
      x -= step;
      const double w_newton = 2.0 / (dp * dp);
      if (std::isfinite(w_newton)) w = w_newton;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = w;
  }
  // Exact symmetry about the origin.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule build_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double step = p0 / dp;
      x -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  return rule;
}

template <class Build>
const QuadratureRule& cached(std::map<int, std::unique_ptr<QuadratureRule>>& cache, std::mutex& m,
                             int n, Build build) {
  std::lock_guard lock(m);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule>(build(n));
  return *slot;
}

constexpr int legendre_panel_points = 8;

}  // namespace

const QuadratureRule& gauss_hermite(int n) {
  if (n < 1) throw DomainError("Gauss-Hermite rule needs at least one node");
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex m;
  if (n == 1) {
    return cached(cache, m, n, [](int) { return QuadratureRule{{0.0}, {std::sqrt(pi)}}; });
  }
  return cached(cache, m, n, build_gauss_hermite);
}

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex m;
  return cached(cache, m, n, build_gauss_legendre);
}

QuadratureRule noise_rule(const NoiseModel& noise, int nodes, double lower_cut) {
  QuadratureRule out;
  if (noise.is_fixed()) {
    if (0.0 >= lower_cut) {
      out.nodes.push_back(0.0);
      out.weights.push_back(1.0);
    }
    return out;
  }

  const double sigma = noise.sigma();
  const double window = gaussian_cutoff_sigmas * sigma;
  // Unphysical widths 1+ε ≤ 0 never contribute.
  const double cut = std::max(lower_cut, -1.0);

  if (cut <= -window) {
    const QuadratureRule& gh = gauss_hermite(nodes);
    const double scale = std::sqrt(2.0) * sigma;
    const double norm = 1.0 / std::sqrt(pi);
    out.nodes.reserve(gh.nodes.size());
    out.weights.reserve(gh.nodes.size());
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
      const double eps = scale * gh.nodes[i];
      if (eps < cut || 1.0 + eps <= 0.0) continue;
      out.nodes.push_back(eps);
      out.weights.push_back(norm * gh.weights[i]);
    }
    return out;
  }

  const double lo = cut;
  const double hi = window;
  if (lo >= hi) return out;
  const int panels = std::max(1, nodes / legendre_panel_points);
  const QuadratureRule& gl = gauss_legendre(legendre_panel_points);
  const double h = (hi - lo) / panels;
  out.nodes.reserve(std::size_t(panels) * legendre_panel_points);
  out.weights.reserve(out.nodes.capacity());
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (int i = 0; i < legendre_panel_points; ++i) {
      const double eps = mid + 0.5 * h * gl.nodes[i];
      out.nodes.push_back(eps);
      out.weights.push_back(0.5 * h * gl.weights[i] * noise_pdf(eps, noise));
    }
  }
  return out;
}

}  // namespace fluctwell
