#include <cmath>

#include "doctest.h"
#include "levytype/rom_integral.hpp"

using namespace levytype;

TEST_CASE("white noise on (0, 1] is standard normal") {
  auto wn = RandomOrthogonalMeasure::white_noise(1.0);
  const int n = 20000;
  double s = 0.0, ss = 0.0;
  for (int k = 0; k < n; ++k) {
    double x = sample_noise(wn, SemiringInterval::time(0.0, 1.0), 3, static_cast<std::uint64_t>(k));
    s += x;
    ss += x * x;
  }
  CHECK(std::abs(s / n) < 4.0 / std::sqrt(n));
  CHECK(std::abs(ss / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("a simple function and its disjoint refinement agree per path") {
  auto wn = RandomOrthogonalMeasure::white_noise(2.0);
  SimpleFunction f{{{2.0, SemiringInterval::time(0.0, 1.0)}, {-1.0, SemiringInterval::time(0.5, 1.5)}}};
  SimpleFunction g{{{2.0, SemiringInterval::time(0.0, 0.5)},
                    {1.0, SemiringInterval::time(0.5, 1.0)},
                    {-1.0, SemiringInterval::time(1.0, 1.5)}}};
  for (std::uint64_t k = 0; k < 10; ++k) {
    NoiseReplay a = wn.replay(1, k), b = wn.replay(1, k);
    CHECK(integrate_simple(f, a) == doctest::Approx(integrate_simple(g, b)).epsilon(1e-12));
  }
  CHECK(control_norm(f, wn) == doctest::Approx(control_norm(g, wn)));
}

TEST_CASE("compensated poisson martingale variance") {
  auto mn = RandomOrthogonalMeasure::martingale_noise(MartingaleDriver::compensated_poisson(2.0), 1.0);
  CHECK(mn.control(SemiringInterval::time(0.0, 1.0)) == doctest::Approx(2.0));
}

TEST_CASE("non-square-integrable integrands are detected") {
  auto wn = RandomOrthogonalMeasure::white_noise(1.0);
  L2Integrand f;
  f.f = [](double s, const Vec&) { return 1.0 / s; };
  CHECK_THROWS_AS(approximate_l2(f, wn, 8), NotSquareIntegrable);
}

TEST_CASE("the L2 certificate of f(s) = s shrinks like 4^-level") {
  auto wn = RandomOrthogonalMeasure::white_noise(1.0);
  L2Integrand f;
  f.f = [](double s, const Vec&) { return s; };
  // midpoint rule on 2^L cells: int (s - mid)^2 = 1 / (12 * 4^L)
  for (int level : {2, 4, 6}) {
    CHECK(approximate_l2(f, wn, level).certificate == doctest::Approx(1.0 / (12.0 * std::pow(4.0, level))).epsilon(1e-6));
  }
}

TEST_CASE("coefficients may not read the future") {
  auto wn = RandomOrthogonalMeasure::white_noise(1.0);
  SimpleProcess f{{{[](const PathView& v) { return v.value_at(0.75); }, StoppingTime::at(0.5), StoppingTime::at(1.0)}}};
  NoiseReplay r = wn.replay(2, 0);
  CHECK_THROWS_AS(integrate_predictable(f, r), NonAdaptedCoefficient);
}

TEST_CASE("deterministic predictable integrands reduce to simple integrals") {
  auto wn = RandomOrthogonalMeasure::white_noise(1.0);
  SimpleProcess f{{{[](const PathView&) { return 3.0; }, StoppingTime::at(0.25), StoppingTime::at(0.75)}}};
  SimpleFunction g{{{3.0, SemiringInterval::time(0.25, 0.75)}}};
  NoiseReplay a = wn.replay(4, 1), b = wn.replay(4, 1);
  CHECK(integrate_predictable(f, a) == doctest::Approx(integrate_simple(g, b)).epsilon(1e-12));
}

TEST_CASE("stopped indicator integrates to the exit level") {
  auto wn = RandomOrthogonalMeasure::white_noise(50.0);
  SimpleProcess f{{{[](const PathView&) { return 1.0; }, StoppingTime::at(0.0), StoppingTime::first_exit(-1.0, 1.0, 50.0, 1e-3)}}};
  for (std::uint64_t k = 0; k < 5; ++k) {
    NoiseReplay r = wn.replay(6, k);
    double v = integrate_predictable(f, r);
    CHECK(std::abs(std::abs(v) - 1.0) < 0.15);
  }
}

TEST_CASE("intervals outside the horizon are rejected") {
  auto wn = RandomOrthogonalMeasure::white_noise(1.0);
  CHECK_THROWS_AS(wn.check(SemiringInterval::time(0.5, 2.0)), OutOfSemiring);
}
