#include <cmath>

#include "doctest.h"
#include "levytype/empirical.hpp"
#include "levytype/samplers.hpp"

using namespace levytype;

TEST_CASE("regions must stay away from the origin") {
  JumpCounter bad([](const Vec& y) { return std::abs(y(0)) < 1.0; }, 0.5);
  CHECK_THROWS_AS(bad.contains(Vec::Constant(1, 0.1)), RegionTouchesOrigin);
  JumpCounter ann = JumpCounter::annulus(0.5, 1.0);
  CHECK(ann.contains(Vec::Constant(1, -0.7)));
  CHECK_FALSE(ann.contains(Vec::Constant(1, 1.0)));
}

TEST_CASE("jump measure counts poisson jumps") {
  RandomSource rng(11, 0);
  CadlagPath p = sample_poisson_process(3.0, 2.0, rng);
  CHECK(jump_measure(p, JumpCounter::point(Vec::Constant(1, 1.0))) == p.jumps().size());
}

TEST_CASE("empirical cf of a point mass is exact") {
  Mat s = Mat::Constant(1, 50, 0.4);
  CfEstimate cf = empirical_cf(s, {Vec::Constant(1, 2.0)});
  CHECK(std::abs(cf.phi[0] - std::exp(Complex(0.0, 0.8))) < 1e-14);
  CHECK(cf.se[0] < 1e-7);
}

TEST_CASE("empty ensembles are rejected") {
  CHECK_THROWS_AS(empirical_cf(Mat(1, 0), {Vec::Constant(1, 1.0)}), EmptyEnsemble);
}

TEST_CASE("step functions validate their breaks") {
  StepFunction ok{{0.0, 0.5, 1.0}, {1.0, 2.0}};
  CHECK_NOTHROW(ok.validate());
  CHECK(ok(0.25) == 1.0);
  CHECK(ok(0.5) == 1.0);
  CHECK(ok(0.75) == 2.0);
  StepFunction bad{{0.0, 0.5, 0.4}, {1.0, 2.0}};
  CHECK_THROWS_AS(bad.validate(), UnsupportedF);
}

TEST_CASE("Campbell formula holds for normal jumps") {
  StepFunction f{{0.0, 0.5, 1.0}, {1.0, -0.5}};
  CheckReport r = campbell_check(2.0, JumpLaw::normal(0.0, 1.0), f, 20000, 5);
  // exp(2 * (0.5 (e^{-1/2} - 1) + 0.5 (e^{-1/8} - 1)))
  double oracle = std::exp(std::exp(-0.5) - 1.0 + std::exp(-0.125) - 1.0);
  CHECK(r.rhs.real() == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(r.pass);
}

TEST_CASE("total variation of the exact law vanishes only asymptotically") {
  std::vector<long> s = {0, 0, 1, 1};
  double tv = total_variation_integer(s, [](long k) { return k == 0 || k == 1 ? 0.5 : 0.0; }, 0, 1);
  CHECK(tv == doctest::Approx(0.0));
  double tv2 = total_variation_integer(s, [](long k) { return k == 0 ? 1.0 : 0.0; }, 0, 1);
  CHECK(tv2 == doctest::Approx(0.5));
}

TEST_CASE("increments of a Levy process look independent") {
  LevyItoSampler s(catalog::compound_poisson_gaussian(2.0), 1e-3);
  std::vector<CadlagPath> paths;
  for (std::uint64_t k = 0; k < 20000; ++k) {
    RandomSource rng(9, k);
    paths.push_back(s.sample(1.0, 0.25, rng).path);
  }
  Ensemble e = Ensemble::from_paths(std::move(paths), 9, 0);
  IndependenceReport r = increment_independence_probe(e, {0.5, 1.0}, {Vec::Constant(1, 1.0), Vec::Constant(1, -0.5)});
  CHECK(r.pass);
}
