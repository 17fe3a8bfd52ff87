#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fluctwell/closed_form.hpp"
#include "fluctwell/constants.hpp"
#include "fluctwell/ensemble.hpp"
#include "fluctwell/errors.hpp"

using namespace fluctwell;
using std::numbers::pi;

namespace {

const WellConfig unit = WellConfig::dimensionless();
const SuperpositionSpec def;
const QuadratureSpec quad;
const double omega_bar = 1.5 * pi * pi;

EvalPoint at(double x, double omega_t) { return {x, omega_t / omega_bar}; }

}  // namespace

TEST_CASE("approx eigen density") {
  const NoiseModel noise(0.01);
  CHECK(approx_eigen_density(1, {0.0, 0.0}, noise, unit).value == 0.0);
  CHECK(approx_eigen_density(1, {0.0, 0.0}, NoiseModel(0.05), unit).value == 0.0);

  const double wall = approx_eigen_density(2, {1.0, 0.0}, noise, unit).value;
  CHECK(wall == doctest::Approx(1.0 - std::exp(-8 * pi * pi * 1e-4)).epsilon(1e-13));
  CHECK(wall == doctest::Approx(0.007864594488602883).epsilon(1e-12));

  const Approximated<double> flat =
      approx_eigen_density(1, {0.5, 0.0}, noise, unit, EigenApproximation::unperturbed);
  CHECK(flat.value == doctest::Approx(2.0).epsilon(1e-15));

  CHECK_THROWS_AS(approx_eigen_density(0, {0.5, 0.0}, noise, unit), DomainError);
}

TEST_CASE("approx eigen density against quadrature") {
  // The first-order expansion misses an O(2nπxσ²) term, so the gap grows
  // towards the wall. Measured gaps are pinned here.
  const NoiseModel noise(0.01);
  auto gap = [&](int n, double x) {
    return std::abs(approx_eigen_density(n, {x, 0.0}, noise, unit).value -
                    averaged_eigen_density(n, {x, 0.0}, noise, quad, unit));
  };
  CHECK(gap(1, 0.3) <= 1e-3);
  CHECK(gap(2, 0.7) == doctest::Approx(1.2e-3).epsilon(0.1));
  CHECK(gap(2, 1.0) == doctest::Approx(0.007864594488602883 - 0.00375170581104690316).epsilon(1e-8));
}

TEST_CASE("a_q_approx examples") {
  const NoiseModel noise(0.01);
  const double norm = std::sqrt(pi / noise.theta());
  const Complex origin = a_q_approx(1, Sign::plus, {0.0, 0.0}, omega_bar, noise, unit).value;
  CHECK(origin.real() == doctest::Approx(norm).epsilon(1e-15));
  CHECK(origin.imag() == 0.0);
  CHECK(norm == doctest::Approx(0.01 * std::sqrt(2 * pi)).epsilon(1e-15));

  CHECK_THROWS_AS(a_q_approx(0, Sign::plus, at(0.5, 1.0), omega_bar, noise, unit), DomainError);
  CHECK_THROWS_AS(a_q_late(0, Sign::plus, at(0.5, 1.0), omega_bar, noise, unit), DomainError);

  // Large t: |A| follows √(π/θ) e^{−Γt²} up to the x-dependent factor
  // e^{σ²(q²π²x²/2 + 2qπxω̄t)}, which is exactly 1 at x = 0.
  const double gamma = 2 * omega_bar * omega_bar * 1e-4;
  for (double wt : {20.0, 80.0, 150.0}) {
    const EvalPoint p = at(0.0, wt);
    const double mag = std::abs(a_q_approx(1, Sign::plus, p, omega_bar, noise, unit).value);
    CHECK(mag == doctest::Approx(norm * std::exp(-gamma * p.t * p.t)).epsilon(1e-12));
  }
}

TEST_CASE("a_q_approx against exact quadrature") {
  const NoiseModel noise(0.01);
  const EvalPoint p = at(0.7, 5.0);
  const Complex approx = a_q_approx(3, Sign::minus, p, omega_bar, noise, unit).value;
  const Complex exact = a_q_exact(3, Sign::minus, p, omega_bar, noise, quad, unit);
  // 30-digit reference values.
  CHECK(exact.real() == doctest::Approx(-6.35494719990e-4).epsilon(1e-8));
  CHECK(exact.imag() == doctest::Approx(0.0250461531576290).epsilon(1e-11));
  CHECK(approx.real() == doctest::Approx(-6.65002582320e-4).epsilon(1e-10));
  CHECK(approx.imag() == doctest::Approx(0.0250429481499868).epsilon(1e-12));

  const double rel = std::abs(approx - exact) / std::abs(exact);
  CHECK(rel == doctest::Approx(1.18468727e-3).epsilon(1e-6));
}

TEST_CASE("a_q_approx within 1e-3 relative at q=3, x=0.7, wt=5" * doctest::should_fail()) {
  // Claimed tolerance; the measured relative gap is 1.185e-3.
  const NoiseModel noise(0.01);
  const EvalPoint p = at(0.7, 5.0);
  const Complex approx = a_q_approx(3, Sign::minus, p, omega_bar, noise, unit).value;
  const Complex exact = a_q_exact(3, Sign::minus, p, omega_bar, noise, quad, unit);
  CHECK(std::abs(approx - exact) / std::abs(exact) <= 1e-3);
}

TEST_CASE("a_q_late examples") {
  const NoiseModel noise(0.01);
  const double norm = std::sqrt(pi / noise.theta());
  CHECK(a_q_late(1, Sign::plus, {0.0, 0.0}, omega_bar, noise, unit).value.real() ==
        doctest::Approx(norm).epsilon(1e-15));

  // |late/approx| = exp(σ²q²π²x²/2 ± 2σ²qπxω̄t).
  const EvalPoint p = at(0.7, 50.0);
  auto ratio = [&](int q, Sign s) {
    return std::abs(a_q_late(q, s, p, omega_bar, noise, unit).value) /
           std::abs(a_q_approx(q, s, p, omega_bar, noise, unit).value);
  };
  CHECK(ratio(1, Sign::plus) == doctest::Approx(1.02248194786882).epsilon(1e-12));
  CHECK(ratio(1, Sign::minus) == doctest::Approx(0.978485468285719).epsilon(1e-12));
  CHECK(ratio(3, Sign::plus) == doctest::Approx(1.07052554719666).epsilon(1e-12));
  CHECK(ratio(3, Sign::minus) == doctest::Approx(0.938195248153659).epsilon(1e-12));
  for (int q : {1, -1, 3, -3}) {
    for (Sign s : {Sign::plus, Sign::minus}) {
      const double sv = sign_value(s);
      const double expect =
          std::exp(1e-4 * (0.5 * q * q * pi * pi * 0.49 + 2 * sv * q * pi * 0.7 * 50.0));
      CHECK(ratio(q, s) == doctest::Approx(expect).epsilon(1e-12));
    }
  }

  const NoiseModel fixed = NoiseModel::fixed();
  for (double wt : {0.0, 100.0, 1e4}) {
    CHECK(std::abs(a_q_late(3, Sign::minus, at(0.4, wt), omega_bar, fixed, unit).value) == 0.0);
    CHECK(std::abs(a_q_late(1, Sign::plus, at(0.4, wt), omega_bar, NoiseModel(1e-9), unit).value) ==
          doctest::Approx(1e-9 * std::sqrt(2 * pi)).epsilon(1e-9));
  }
}

TEST_CASE("late/approx ratio within 2e-2 at x=0.7, wt=50" * doctest::should_fail()) {
  // Claimed tolerance; the q = 1 minus branch sits at 0.9785.
  const NoiseModel noise(0.01);
  const EvalPoint p = at(0.7, 50.0);
  for (int q : {1, -1}) {
    for (Sign s : {Sign::plus, Sign::minus}) {
      const double r = std::abs(a_q_late(q, s, p, omega_bar, noise, unit).value) /
                       std::abs(a_q_approx(q, s, p, omega_bar, noise, unit).value);
      CHECK(std::abs(r - 1.0) <= 2e-2);
    }
  }
}

TEST_CASE("approx interference examples") {
  const NoiseModel noise(0.01);
  const double start = approx_interference(def, at(0.7, 0.0), noise, unit).value;
  CHECK(start == doctest::Approx(std::cos(0.7 * pi) - std::cos(2.1 * pi)).epsilon(1e-15));
  CHECK(start == doctest::Approx(-1.5389).epsilon(1e-4));
  CHECK(start == doctest::Approx(fixed_interference(def, at(0.7, 0.0), 1.0, unit)).epsilon(1e-13));

  const Approximated<double> late = approx_interference(def, at(0.7, 200.0), noise, unit);
  CHECK(late.value == doctest::Approx(start * std::cos(200.0) * std::exp(-8.0)).epsilon(1e-12));
  CHECK(std::abs(late.value) <= 5.2e-4);
  CHECK(late.validity.late_time);
  CHECK(late.validity.neglected_phase == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(late.validity.higher_order_negligible);

  for (double wt : {0.0, 1.0, 17.0, 300.0}) {
    CHECK(std::abs(approx_interference(def, at(0.5, wt), noise, unit).value) < 1e-15);
  }
  CHECK_FALSE(approx_interference(def, at(0.7, 0.5), noise, unit).validity.late_time);
  CHECK_FALSE(approx_interference(def, at(0.7, 200.0), NoiseModel(0.05), unit)
                  .validity.higher_order_negligible);
}

TEST_CASE("approx density examples") {
  const NoiseModel noise(0.01);
  CHECK(approx_density(def, at(0.7, 0.0), noise, unit).value == doctest::Approx(0.0201).epsilon(1e-2));
  CHECK(approx_density(def, at(0.7, 0.0), noise, unit).value ==
        doctest::Approx(0.020175225787320675).epsilon(1e-12));
  CHECK(std::abs(approx_density(def, at(0.7, 300.0), noise, unit).value - 1.5590) <= 1e-4);
  CHECK(std::abs(approx_density(def, at(0.7, 300.0), noise, unit).value -
                 mixture_density(def, 0.7, 1.0)) <= 1e-6);

  const NoiseModel fixed = NoiseModel::fixed();
  for (double wt : {0.0, 2.5, 300.0, 5000.0}) {
    CHECK(approx_density(def, at(0.7, wt), fixed, unit).value ==
          doctest::Approx(fixed_density(def, at(0.7, wt), 1.0, unit)).epsilon(1e-12));
  }
}

TEST_CASE("property: approx density is mixture plus interference") {
  const NoiseModel noise(0.02);
  const SuperpositionSpec spec(2, 5, Complex(0.6, 0.0), std::polar(0.8, 1.1));
  for (int i = 0; i <= 50; ++i) {
    const EvalPoint p = at(0.02 * i, 3.7 * i);
    const double d = approx_density(spec, p, noise, unit).value - mixture_density(spec, p.x, 1.0);
    CHECK(std::abs(d - spec.cross_weight() * approx_interference(spec, p, noise, unit).value) <= 1e-15);
  }
}

TEST_CASE("property: trig bridge") {
  for (const SuperpositionSpec& spec :
       {def, SuperpositionSpec(2, 3, Complex(0.6, 0), Complex(0.8, 0)),
        SuperpositionSpec(1, 4, Complex(0.6, 0), Complex(0.8, 0))}) {
    for (int i = 0; i < 1000; ++i) {
      const double x = i / 999.0;
      const double product = 2.0 * std::sin(spec.n_lo() * pi * x) * std::sin(spec.n_hi() * pi * x);
      CHECK(std::abs(product - interference_bracket(spec, x, unit)) <= 1e-12);
    }
  }
}

TEST_CASE("property: envelope is non-increasing at extrema") {
  for (double sigma : {0.005, 0.01, 0.05}) {
    const NoiseModel noise(sigma);
    for (double x : {0.2, 0.7, 0.9}) {
      double prev = std::abs(approx_interference(def, at(x, 0.0), noise, unit).value);
      for (int k = 1; k <= 200; ++k) {
        const double cur = std::abs(approx_interference(def, at(x, k * pi), noise, unit).value);
        CHECK(cur <= prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("predicted envelope bounds the approximate interference") {
  const NoiseModel noise(0.01);
  for (int i = 0; i <= 300; ++i) {
    const EvalPoint p = at(0.7, i);
    CHECK(std::abs(approx_interference(def, p, noise, unit).value) <=
          predicted_envelope(def, p.x, p.t, noise, unit) + 1e-15);
  }
  CHECK(predicted_envelope(def, 0.7, 0.0, noise, unit) == doctest::Approx(std::abs(std::cos(0.7 * pi) - std::cos(2.1 * pi))).epsilon(1e-14));
}

TEST_CASE("decay parameters") {
  const DecayParameters d = decay_parameters(def, NoiseModel(0.01), unit);
  CHECK(d.omega_bar == doctest::Approx(1.5 * pi * pi).epsilon(1e-15));
  CHECK(d.omega_bar == doctest::Approx(14.8044).epsilon(1e-5));
  CHECK(d.gamma == doctest::Approx(4.383e-2).epsilon(1e-3));
  CHECK(d.gamma == doctest::Approx(2 * d.omega_bar * d.omega_bar * 1e-4).epsilon(1e-12));
  CHECK(d.t_onset == doctest::Approx(1.0 / d.omega_bar).epsilon(1e-15));
  CHECK(d.omega_bar * d.t_decay == doctest::Approx(70.71).epsilon(1e-4));
  CHECK(d.t_decay == doctest::Approx(1.0 / std::sqrt(d.gamma)).epsilon(1e-12));

  const DecayParameters d2 = decay_parameters(def, NoiseModel(0.02), unit);
  CHECK(d2.t_decay == doctest::Approx(0.5 * d.t_decay).epsilon(1e-15));
  CHECK(d2.gamma == 4.0 * d.gamma);

  const DecayParameters fixed = decay_parameters(def, NoiseModel::fixed(), unit);
  CHECK(fixed.gamma == 0.0);
  CHECK(std::isinf(fixed.t_decay));
}

TEST_CASE("property: gamma scales with sigma squared") {
  for (double s : {0.001, 0.003, 0.0125, 0.025}) {
    CHECK(decay_parameters(def, NoiseModel(2 * s), unit).gamma ==
          4.0 * decay_parameters(def, NoiseModel(s), unit).gamma);
    CHECK(decay_parameters(def, NoiseModel(s), unit).gamma > 0.0);
  }
}

TEST_CASE("physical units") {
  const WellConfig electron = WellConfig::electron(1e-10);
  const DecayParameters d = decay_parameters(def, NoiseModel(0.01), electron);
  CHECK(d.omega_bar == doctest::Approx(1.7139e17).epsilon(1e-4));
  CHECK(d.t_onset == doctest::Approx(5.8e-18).epsilon(0.01));
  CHECK(200.0 * d.t_onset == doctest::Approx(1.2e-15).epsilon(0.03));

  const double amu = constants::atomic_mass_unit;
  const double dx = boundary_width_estimate(30 * amu, 1e15, electron);
  CHECK(dx == doctest::Approx(1.0288e-12).epsilon(1e-4));
  CHECK(dx == doctest::Approx(1e-12).epsilon(0.05));
  CHECK(sigma_from_boundary_width(dx, electron) == doctest::Approx(1.0288e-2).epsilon(1e-4));
  CHECK(boundary_width_estimate(120 * amu, 1e15, electron) == doctest::Approx(0.5 * dx).epsilon(1e-15));
  const double light = boundary_width_estimate(amu, 1e15, electron);
  CHECK(light == doctest::Approx(dx * std::sqrt(30.0)).epsilon(1e-14));
  CHECK(light == doctest::Approx(5.5e-12).epsilon(0.03));

  CHECK_THROWS_AS(boundary_width_estimate(0.0, 1e15, electron), DomainError);
  CHECK_THROWS_AS(boundary_width_estimate(amu, -1.0, electron), DomainError);
}
