#include <cmath>

#include "doctest.h"
#include "levytype/levy_core.hpp"

using namespace levytype;

namespace {
Vec v1(double x) { return Vec::Constant(1, x); }
} // namespace

TEST_CASE("non-PSD diffusion matrices are rejected") {
  Mat q(2, 2);
  q << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(LevyTriplet(Vec::Zero(2), q, LevyMeasureSpec::zero(2)), InvalidTriplet);
}

TEST_CASE("atoms at |y| = 1 are not compensated") {
  // psi = lambda (1 - e^{i xi}) with no i xi y term
  LevyTriplet t(Vec::Zero(1), Mat::Zero(1, 1), LevyMeasureSpec::finite_atomic(1, {{v1(1.0), 2.0}}));
  for (double xi : {-2.0, 0.3, 1.7}) {
    Complex expect = 2.0 * (1.0 - std::exp(Complex(0.0, xi)));
    CHECK(std::abs(eval_exponent(t, v1(xi)) - expect) < 1e-14);
  }
  // an atom inside the unit ball picks up the compensator
  LevyTriplet s(Vec::Zero(1), Mat::Zero(1, 1), LevyMeasureSpec::finite_atomic(1, {{v1(0.5), 1.0}}));
  Complex expect = 1.0 - std::exp(Complex(0.0, 0.5)) + Complex(0.0, 0.5);
  CHECK(std::abs(eval_exponent(s, v1(1.0)) - expect) < 1e-14);
}

TEST_CASE("symmetric stable exponents are real") {
  LevyTriplet t = catalog::symmetric_stable_density(1.2, 0.7);
  for (double xi : {-3.0, -0.1, 0.4, 2.5}) {
    CHECK(std::abs(eval_exponent(t, v1(xi)).imag()) < 1e-10);
  }
}

TEST_CASE("stable density constant normalises psi to |xi|^alpha") {
  for (double a : {0.5, 1.0, 1.5, 1.9}) {
    LevyTriplet t = catalog::symmetric_stable_density(a, catalog::symmetric_stable_density_constant(a));
    CHECK(eval_exponent(t, v1(2.0)).real() == doctest::Approx(std::pow(2.0, a)).epsilon(1e-7));
  }
}

TEST_CASE("gamma exponent matches the Frullani closed form") {
  LevyTriplet t = catalog::gamma_process();
  for (double xi : {-4.0, -1.0, 0.5, 3.0}) {
    Complex expect = std::log(Complex(1.0, -xi));
    CHECK(std::abs(eval_exponent(t, v1(xi)) - expect) < 1e-8);
  }
}

TEST_CASE("band masses of the stable measure") {
  LevyMeasureSpec nu = catalog::symmetric_stable_density(1.5, 1.0).nu();
  double exact = 2.0 / 1.5 * (std::pow(0.5, -1.5) - 1.0);
  CHECK(nu.band_mass(0.5, 1.0) == doctest::Approx(exact).epsilon(1e-9));
  CHECK(nu.second_moment_below(0.01) == doctest::Approx(4.0 * std::sqrt(0.01)).epsilon(1e-9));
  CHECK(nu.truncated(0.25).band_mass(0.1, 0.25) == doctest::Approx(0.0));
}

TEST_CASE("square root of |psi| is subadditive") {
  CharacteristicExponent psi = CharacteristicExponent::of(catalog::compound_poisson_gaussian(3.0));
  for (double a : {-2.0, 0.5, 3.0}) {
    for (double b : {-1.0, 0.25, 4.0}) {
      CHECK(subadditivity_check(psi, v1(a), v1(b)));
    }
  }
}

TEST_CASE("diffusion part is recovered from the exponent") {
  Mat q(2, 2);
  q << 2.0, 0.5, 0.5, 1.0;
  LevyTriplet t(Vec::Zero(2), q, LevyMeasureSpec::zero(2));
  auto r = triplet_from_exponent_probe(CharacteristicExponent::of(t));
  CHECK((r.q_hat - q).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("invalid alpha is rejected") {
  CHECK_THROWS_AS(catalog::symmetric_stable(2.5), InvalidAlpha);
  CHECK_THROWS_AS(catalog::symmetric_stable(0.0), InvalidAlpha);
}
