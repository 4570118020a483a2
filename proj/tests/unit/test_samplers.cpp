#include <cmath>

#include "doctest.h"
#include "levytype/samplers.hpp"

using namespace levytype;

TEST_CASE("same seed and stream replay the same path") {
  RandomSource a(7, 3), b(7, 3), c(7, 4);
  CadlagPath p = sample_compound_poisson(4.0, JumpLaw::normal(0.0, 1.0), 2.0, a);
  CadlagPath q = sample_compound_poisson(4.0, JumpLaw::normal(0.0, 1.0), 2.0, b);
  CadlagPath r = sample_compound_poisson(4.0, JumpLaw::normal(0.0, 1.0), 2.0, c);
  CHECK(p.times() == q.times());
  CHECK(p.values() == q.values());
  CHECK(p.times() != r.times());
}

TEST_CASE("midpoint construction has 2^levels + 1 grid points") {
  RandomSource rng(7, 0);
  std::vector<std::vector<double>> disp;
  CadlagPath p = sample_brownian_levy(10, rng, &disp);
  CHECK(p.size() == 1025);
  CHECK(p.values()(0, 0) == 0.0);
  CHECK(disp.size() >= 10);
}

TEST_CASE("poisson paths count unit jumps") {
  RandomSource rng(1, 1);
  CadlagPath p = sample_poisson_process(5.0, 3.0, rng);
  CHECK(p.end()(0) == static_cast<double>(p.jumps().size()));
  for (const auto& j : p.jumps()) {
    CHECK(j.size(0) == 1.0);
  }
}

TEST_CASE("Levy-Ito truncation bound is T times the small-jump second moment") {
  // c |y|^-2.5 on R: int_{|y|<eps} y^2 nu(dy) = 4 sqrt(eps)
  LevyItoSampler s(catalog::symmetric_stable_density(1.5, 1.0), 1e-3);
  CHECK(s.small_jump_second_moment() == doctest::Approx(4.0 * std::sqrt(1e-3)).epsilon(1e-8));
  CHECK(s.jump_rate() == doctest::Approx(2.0 / 1.5 * std::pow(1e-3, -1.5)).epsilon(1e-6));
  RandomSource rng(2, 0);
  LevyItoPath p = s.sample(2.0, 0.1, rng);
  CHECK(p.truncation_bound == doctest::Approx(2.0 * 4.0 * std::sqrt(1e-3)).epsilon(1e-8));
}

TEST_CASE("jump budget guards against runaway truncation") {
  LevyItoOptions opt;
  opt.jump_budget = 100;
  LevyItoSampler s(catalog::symmetric_stable_density(1.5, 1.0), 1e-3, opt);
  RandomSource rng(2, 0);
  CHECK_THROWS_AS(s.sample(1.0, 0.1, rng), MassOverflow);
}

TEST_CASE("series representation demands a resolved tail") {
  SeriesSpec spec;
  spec.H = [](double r, const Vec& v) { return Vec(v / r); };
  spec.sample_v = [](RandomSource&) { return Vec::Constant(1, 1.0); };
  spec.resolution_radius = 1e9;
  RandomSource rng(3, 0);
  CHECK_THROWS_AS(sample_series(spec, 10, rng), TailNotResolved);
}

TEST_CASE("normal jump law has the requested mean") {
  JumpLaw law = JumpLaw::normal(0.7, 2.0);
  RandomSource rng(4, 0);
  double s = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    s += law.sample(rng)(0);
  }
  CHECK(std::abs(s / n - 0.7) < 4.0 * 2.0 / std::sqrt(n));
}

TEST_CASE("invalid rates are rejected") {
  RandomSource rng(5, 0);
  CHECK_THROWS_AS(sample_poisson_process(-1.0, 1.0, rng), InvalidRate);
}
