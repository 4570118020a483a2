#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "levytype/feller_symbols.hpp"

using namespace levytype;
using boost::math::quadrature::gauss_kronrod;

namespace {
Vec v1(double x) { return Vec::Constant(1, x); }

// radial transform of (1 - |x|^2)^4_+ with the (2 pi)^-d normalisation
double bump_hat(int d, double rho) {
  double nu = d / 2.0 + 4.0;
  return std::pow(2.0 * M_PI, -d / 2.0) * 384.0 * boost::math::cyl_bessel_j(nu, rho) / std::pow(rho, nu);
}

// 2 int_{R^d} (1 + |xi|^2) |u_hat| d xi, integrating between Bessel zeros so
// |.| never kinks inside a panel, plus the averaged asymptotic tail
double bump_constant(int d) {
  const double nu = d / 2.0 + 4.0;
  const double surface = d == 1 ? 2.0 : 2.0 * M_PI;
  auto radial = [&](double rho) {
    return (1.0 + rho * rho) * std::abs(bump_hat(d, rho)) * std::pow(rho, d - 1);
  };
  double total = 0.0, a = 0.0;
  const int zeros = 1000;
  for (int k = 1; k <= zeros; ++k) {
    double b = boost::math::cyl_bessel_j_zero(nu, k);
    total += gauss_kronrod<double, 31>::integrate(radial, a, b, 0, 1e-13);
    a = b;
  }
  // |J_nu(rho)| ~ sqrt(2 / (pi rho)) |cos|, |cos| averages to 2 / pi
  double amp = std::pow(2.0 * M_PI, -d / 2.0) * 384.0 * std::sqrt(2.0 / M_PI) * 2.0 / M_PI;
  double p = 2.0 + (d - 1) - nu - 0.5;
  total += amp * std::pow(a, p + 1.0) / -(p + 1.0);
  return 2.0 * surface * total;
}
} // namespace

TEST_CASE("bump transform matches direct quadrature") {
  for (double rho : {0.5, 2.0, 7.5}) {
    double direct = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return std::pow(1.0 - x * x, 4) * std::cos(rho * x); }, -1.0, 1.0, 0, 1e-14) /
        (2.0 * M_PI);
    CHECK(bump_hat(1, rho) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("maximal-inequality constants are recomputed independently") {
  CHECK(maximal_constant(1) == doctest::Approx(bump_constant(1)).epsilon(1e-7));
  CHECK(maximal_constant(2) == doctest::Approx(bump_constant(2)).epsilon(1e-6));
}

TEST_CASE("stable-like sine symbol has the closed form") {
  StateSymbol q = StateSymbol::stable_like_sine();
  for (double x : {-2.0, 0.0, 1.0, 4.0}) {
    double a = std::clamp(1.0 + 0.5 * std::sin(x), 0.6, 1.9);
    for (double xi : {0.5, 3.0}) {
      CHECK(std::abs(eval_symbol(q, v1(x), v1(xi)) - std::pow(xi, a)) < 1e-6 * std::pow(xi, a));
    }
  }
}

TEST_CASE("constant-alpha indices are exact") {
  StateSymbol q = StateSymbol::stable_like([](const Vec&) { return 1.3; });
  IndexEstimate e = indices_at_infinity(q, v1(0.0));
  CHECK(e.beta == doctest::Approx(1.3).epsilon(1e-6));
  CHECK(e.delta == doctest::Approx(1.3).epsilon(1e-6));
}

TEST_CASE("SDE symbol with constant coefficient is the driver exponent") {
  SdeSpec spec;
  spec.phi = [](const Vec&) { return Mat::Constant(1, 1, 2.0); };
  spec.x0 = v1(0.0);
  spec.lipschitz = 0.0;
  for (double xi : {-1.0, 0.3, 2.0}) {
    CHECK(std::abs(sde_symbol(spec, v1(0.7), v1(xi)) - Complex(2.0 * xi * xi, 0.0)) < 1e-12);
  }
}

TEST_CASE("non-Lipschitz coefficients are rejected") {
  SdeSpec spec;
  spec.phi = [](const Vec& x) { return Mat::Constant(1, 1, std::sqrt(std::abs(x(0)))); };
  spec.x0 = v1(0.0);
  spec.lipschitz = 1.0;
  CHECK_THROWS_AS(spec.validate(), LipschitzViolation);
}

TEST_CASE("symmetric symbols sit in the zero sector") {
  StateSymbol q = StateSymbol::from_triplet(catalog::brownian(1));
  SectorReport r = sector_check(q, {v1(0.0), v1(1.0)}, default_xi_probes(1));
  CHECK(r.kappa == doctest::Approx(0.0));
  CHECK(r.pass);
}

TEST_CASE("radius below the time-grid scale is refused") {
  LevySampler s(catalog::brownian(1), 0.05, 1e-3);
  CHECK_THROWS_AS(estimate_symbol(s, v1(0.0), v1(1.0), {0.04, 0.02, 0.01}, 0.01, 2000, 1), ExitDominates);
}

TEST_CASE("symbol estimate recovers xi^2 / 2 for Brownian motion") {
  LevySampler s(catalog::brownian(1), 0.05, 1e-3);
  SymbolEstimate e = estimate_symbol(s, v1(0.0), v1(1.0), {0.04, 0.02, 0.01}, 5.0, 40000, 2);
  CHECK(std::abs(e.q_hat.real() - 0.5) < 4.0 * e.se + 0.01);
}
