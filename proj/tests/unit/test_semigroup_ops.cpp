#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "levytype/semigroup_ops.hpp"

using namespace levytype;

namespace {
Vec v1(double x) { return Vec::Constant(1, x); }
} // namespace

TEST_CASE("Fourier transform of a Gaussian test function") {
  TestFunction f = TestFunction::gaussian(1, 0.7, v1(0.4), 1.5);
  for (double xi : {0.0, 1.0, -2.5}) {
    auto re = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return f(v1(x)) * std::cos(xi * x); }, -20.0, 20.0, 10, 1e-13);
    auto im = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return -f(v1(x)) * std::sin(xi * x); }, -20.0, 20.0, 10, 1e-13);
    Complex direct = Complex(re, im) / (2.0 * M_PI);
    CHECK(std::abs(f.fourier(v1(xi)) - direct) < 1e-11);
  }
}

TEST_CASE("Fourier and integro-differential generators agree") {
  TestFunction f = TestFunction::gaussian(1, 0.5);
  LevyTriplet t = catalog::compound_poisson_gaussian(2.0);
  CharacteristicExponent psi = CharacteristicExponent::of(t);
  for (double x : {-1.0, 0.0, 0.8}) {
    double a = generator_fourier(psi, f, v1(x)).value;
    double b = generator_integro(t, f, v1(x)).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-7));
  }
}

TEST_CASE("Brownian generator is half the Laplacian") {
  TestFunction f = TestFunction::gaussian(1, 0.5);
  for (double x : {-1.0, 0.3}) {
    double lap = f.hessian(v1(x))(0, 0);
    CHECK(generator_integro(catalog::brownian(1), f, v1(x)).value == doctest::Approx(0.5 * lap).epsilon(1e-10));
  }
}

TEST_CASE("positive maximum principle at the peak") {
  TestFunction f = TestFunction::gaussian(1, 1.0, v1(0.3));
  for (const LevyTriplet& t : {catalog::brownian(1), catalog::compound_poisson_gaussian(1.0),
                               catalog::symmetric_stable_density(1.5, 1.0)}) {
    CHECK(generator_integro(t, f, v1(0.3)).value <= 1e-8);
  }
}

TEST_CASE("generator commutes with translations") {
  LevyTriplet t = catalog::symmetric_stable_density(1.2, 1.0);
  TestFunction f = TestFunction::gaussian(1, 0.5);
  Vec h = v1(1.7);
  for (double x : {-0.5, 0.9}) {
    // A (f(. + h)) (x) = (A f)(x + h)
    double a = generator_integro(t, f.shifted(h), v1(x)).value;
    double b = generator_integro(t, f, v1(x + 1.7)).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("generators of Levy processes are dissipative") {
  LevyTriplet t = catalog::compound_poisson_gaussian(1.0);
  TestFunction f = TestFunction::gaussian(1, 0.5);
  auto gen = [&](const Vec& x) { return generator_integro(t, f, x).value; };
  std::vector<Vec> probes;
  for (int k = -20; k <= 20; ++k) {
    probes.push_back(v1(0.25 * k));
  }
  for (double lambda : {0.5, 2.0}) {
    CHECK(dissipativity_check(gen, f, lambda, probes).pass);
  }
}

TEST_CASE("the semigroup at t = 0 is the identity") {
  LevySampler s(catalog::brownian(1), 0.05, 1e-3);
  TestFunction f = TestFunction::gaussian(1, 0.5);
  MonteCarloValue v = semigroup_apply(s, f, 0.0, v1(0.6), 100, 3);
  CHECK(v.value == f(v1(0.6)));
  CHECK(v.se == 0.0);
}

TEST_CASE("antithetic sampling needs a symmetric exponent") {
  LevyTriplet drift(v1(1.0), Mat::Constant(1, 1, 1.0), LevyMeasureSpec::zero(1));
  LevySampler s(drift, 0.05, 1e-3);
  CHECK_THROWS(semigroup_apply(s, TestFunction::gaussian(1), 0.1, v1(0.0), 100, 3, 0, true));
}

TEST_CASE("Chapman-Kolmogorov with s = 0 reuses the direct estimator") {
  LevySampler s(catalog::brownian(1), 0.05, 1e-3);
  ChapmanKolmogorovReport r = chapman_kolmogorov_check(s, TestFunction::gaussian(1), v1(0.0), 0.0, 0.5, 200, 20, 4);
  CHECK(r.direct == r.nested);
  CHECK(r.pass);
}

TEST_CASE("Brownian semigroup on a Gaussian has a closed form") {
  // E exp(-a (x + W_t)^2) = exp(-a x^2 / (1 + 2 a t)) / sqrt(1 + 2 a t)
  LevySampler s(catalog::brownian(1), 0.05, 1e-3);
  TestFunction f = TestFunction::gaussian(1, 0.5);
  MonteCarloValue v = semigroup_apply(s, f, 0.5, v1(0.4), 40000, 5);
  double exact = std::exp(-0.5 * 0.16 / 1.5) / std::sqrt(1.5);
  CHECK(std::abs(v.value - exact) < 4.0 * v.se);
}
