// Acceptance gates. Each gate prints one PASS/FAIL line; the exit status is
// the number of failed gates. Pass gate numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <cstdarg>
#include <sys/wait.h>
#include <unistd.h>

#include "levytype/empirical.hpp"
#include "levytype/feller_symbols.hpp"
#include "levytype/levy_core.hpp"
#include "levytype/parallel.hpp"
#include "levytype/process.hpp"
#include "levytype/rom_integral.hpp"
#include "levytype/samplers.hpp"
#include "levytype/semigroup_ops.hpp"

using namespace levytype;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Vec v1(double x) { return Vec::Constant(1, x); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    out.push_back(a + (b - a) * k / (n - 1));
  }
  return out;
}

// int_0^u (1 - cos s) s^{-1-alpha} ds by its power series
double small_cosine_integral(double u, double alpha) {
  double sum = 0.0;
  double term_fact = 1.0;
  for (int k = 1; k < 60; ++k) {
    term_fact /= (2.0 * k - 1.0) * (2.0 * k);
    double t = std::pow(u, 2.0 * k - alpha) * term_fact / (2.0 * k - alpha);
    sum += (k % 2 ? 1.0 : -1.0) * t;
    if (std::abs(t) < 1e-18 * std::abs(sum)) {
      break;
    }
  }
  return sum;
}

// int_0^inf (1 - cos s) s^{-1-alpha} ds = -Gamma(-alpha) cos(pi alpha / 2)
double full_cosine_integral(double alpha) { return -std::tgamma(-alpha) * std::cos(kPi * alpha / 2.0); }

// psi for c|y|^{-1-alpha} dy restricted to |y| >= eps
double truncated_stable_psi(double xi, double alpha, double c, double eps) {
  double a = std::abs(xi);
  if (a == 0.0) {
    return 0.0;
  }
  return 2.0 * c * std::pow(a, alpha) * (full_cosine_integral(alpha) - small_cosine_integral(eps * a, alpha));
}

double poisson_pmf(long k, double lambda) {
  if (k < 0) {
    return 0.0;
  }
  return std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
}

// --- 1 ---------------------------------------------------------------------

Outcome gate_exponents() {
  const double lambda = 1.7;
  const double alpha = 1.5;
  const double c = 0.8;
  struct Case {
    const char* name;
    LevyTriplet triplet;
    std::function<Complex(double)> oracle;
  };
  std::vector<Case> cases = {
      {"brownian", catalog::brownian(1), [](double x) { return Complex(0.5 * x * x, 0.0); }},
      {"poisson", catalog::poisson(lambda),
       [=](double x) { return lambda * (1.0 - std::exp(Complex(0.0, x))); }},
      {"compound_poisson_normal", catalog::compound_poisson_gaussian(lambda, 1.0),
       [=](double x) { return Complex(lambda * (1.0 - std::exp(-0.5 * x * x)), 0.0); }},
      {"stable_density", catalog::symmetric_stable_density(alpha, c),
       [=](double x) { return Complex(2.0 * c * full_cosine_integral(alpha) * std::pow(std::abs(x), alpha), 0.0); }},
      {"gamma", catalog::gamma_process(),
       [](double x) { return Complex(0.5 * std::log1p(x * x), -std::atan(x)); }},
  };
  double worst = 0.0;
  std::string worst_name;
  for (const auto& cs : cases) {
    for (double x : linspace(-5.0, 5.0, 41)) {
      double err = std::abs(eval_exponent(cs.triplet, v1(x)) - cs.oracle(x));
      if (err > worst) {
        worst = err;
        worst_name = cs.name;
      }
    }
  }
  return {worst <= 1e-6, fmt("max |psi - oracle| = %.2e (%s), tol 1e-6", worst, worst_name.c_str())};
}

// --- 2 ---------------------------------------------------------------------

Outcome gate_round_trip() {
  const std::size_t n = 100000;
  const double eps = 0.05;
  struct Case {
    const char* name;
    LevyTriplet triplet;
    std::function<Complex(double)> psi_eps;
  };
  std::vector<Case> cases = {
      {"brownian", catalog::brownian(1), [](double x) { return Complex(0.5 * x * x, 0.0); }},
      {"poisson", catalog::poisson(2.0), [](double x) { return 2.0 * (1.0 - std::exp(Complex(0.0, x))); }},
      {"compound_poisson", catalog::compound_poisson_gaussian(2.0, 1.0),
       [](double x) { return Complex(2.0 * (1.0 - std::exp(-0.5 * x * x)), 0.0); }},
      {"stable_1.5", catalog::symmetric_stable_density(1.5, 1.0),
       [=](double x) { return Complex(truncated_stable_psi(x, 1.5, 1.0, eps), 0.0); }},
  };
  auto grid_d = linspace(-3.0, 3.0, 25);
  std::vector<Vec> grid;
  for (double x : grid_d) {
    grid.push_back(v1(x));
  }
  bool pass = true;
  std::string detail;
  std::uint64_t stream = 0;
  for (const auto& cs : cases) {
    LevySampler sampler(cs.triplet, eps, 1.0);
    Mat ends(1, static_cast<Eigen::Index>(n));
    parallel_for(n, [&](std::size_t k) {
      RandomSource rng(kSeed, stream + k);
      ends.col(static_cast<Eigen::Index>(k)) = sampler.sample_endpoint(Vec::Zero(1), 1.0, rng);
    });
    stream += n;
    CfEstimate cf = empirical_cf(ends, grid);
    int ok = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      Complex target = std::exp(-cs.psi_eps(grid_d[k]));
      ok += std::abs(cf.phi[k] - target) <= 3.0 * cf.se[k] + 1e-12;
    }
    double frac = ok / static_cast<double>(grid.size());
    pass = pass && frac >= 0.95;
    detail += fmt("%s %d/25 ", cs.name, ok);
  }
  return {pass, detail + "within 3 SE (need >= 95%)"};
}

// --- 3 ---------------------------------------------------------------------

Outcome gate_poisson_laws() {
  const std::size_t n = 100000;
  const double lambda = 1.5;
  std::vector<long> counts(n);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(kSeed, k);
    counts[k] = static_cast<long>(std::lround(sample_poisson_process(lambda, 1.0, rng).end()(0)));
  });
  double tv_n = total_variation_integer(counts, [&](long k) { return poisson_pmf(k, lambda); }, 0, 60);

  // integer jumps: +1 w.p. 0.5, +2 w.p. 0.3, -1 w.p. 0.2; C_2 with rate 1
  const double rate = 1.0;
  const double T = 2.0;
  std::vector<Atom> atoms = {{v1(1.0), 0.5}, {v1(2.0), 0.3}, {v1(-1.0), 0.2}};
  JumpLaw law = JumpLaw::discrete(atoms);
  std::vector<long> c2(n);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(kSeed, n + k);
    c2[k] = std::lround(sample_compound_poisson(rate, law, T, rng).end()(0));
  });
  // P(C_2 = m) = sum_j Poi(rate T)(j) mu^{*j}(m)
  const int off = 200;
  std::vector<double> conv(2 * off + 1, 0.0), mix(2 * off + 1, 0.0);
  conv[off] = 1.0;
  for (int j = 0; j <= 60; ++j) {
    double w = poisson_pmf(j, rate * T);
    for (std::size_t m = 0; m < mix.size(); ++m) {
      mix[m] += w * conv[m];
    }
    std::vector<double> next(conv.size(), 0.0);
    for (std::size_t m = 0; m < conv.size(); ++m) {
      if (conv[m] == 0.0) {
        continue;
      }
      for (const auto& a : atoms) {
        long t = static_cast<long>(m) + std::lround(a.point(0));
        if (t >= 0 && t < static_cast<long>(conv.size())) {
          next[static_cast<std::size_t>(t)] += conv[m] * a.mass;
        }
      }
    }
    conv = std::move(next);
  }
  double tv_c = total_variation_integer(
      c2, [&](long m) { return (m + off >= 0 && m + off <= 2 * off) ? mix[static_cast<std::size_t>(m + off)] : 0.0; },
      -off, off);
  return {tv_n < 0.01 && tv_c < 0.015, fmt("TV(N_1, Poi) = %.4f (< 0.01), TV(C_2, mixture) = %.4f (< 0.015)", tv_n, tv_c)};
}

// --- 4 ---------------------------------------------------------------------

double ks_normal(std::vector<double> z) {
  std::sort(z.begin(), z.end());
  const double n = static_cast<double>(z.size());
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double F = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
    d = std::max({d, std::abs(F - i / n), std::abs((i + 1) / n - F)});
  }
  return d;
}

Outcome gate_brownian_construction() {
  const std::size_t n = 10000;
  const int levels = 10;
  const std::size_t cells = std::size_t{1} << levels;
  std::vector<double> inc(n * cells);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(kSeed, k);
    CadlagPath p = sample_brownian_levy(levels, rng);
    for (std::size_t j = 0; j < cells; ++j) {
      inc[k * cells + j] = p.values()(0, static_cast<Eigen::Index>(j + 1)) - p.values()(0, static_cast<Eigen::Index>(j));
    }
  });
  const double target = 1.0 / static_cast<double>(cells);
  double mean_var = 0.0;
  double worst_cell = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    double s = 0.0, ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      s += inc[k * cells + j];
      ss += inc[k * cells + j] * inc[k * cells + j];
    }
    double var = (ss - s * s / n) / (n - 1.0);
    mean_var += var / cells;
    worst_cell = std::max(worst_cell, std::abs(var / target - 1.0));
  }
  // first cell and the endpoint W_1
  std::vector<double> z1(n), zT(n);
  for (std::size_t k = 0; k < n; ++k) {
    z1[k] = inc[k * cells] / std::sqrt(target);
    double w = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
      w += inc[k * cells + j];
    }
    zT[k] = w;
  }
  const double crit = 1.6276 / std::sqrt(static_cast<double>(n));
  double d1 = ks_normal(z1), dT = ks_normal(zT);
  double rel = std::abs(mean_var / target - 1.0);
  return {rel <= 0.02 && d1 < crit && dT < crit,
          fmt("cell variance / 2^-10 - 1 = %.4f (<= 0.02; worst single cell %.3f), KS D = %.4f, %.4f (< %.4f)", rel,
              worst_cell, d1, dT, crit)};
}

// --- 5 ---------------------------------------------------------------------

Outcome gate_moments() {
  const std::size_t n = 100000;
  const double lambda = 2.0, m = 0.5, s = 1.0;
  JumpLaw law = JumpLaw::normal(m, s);
  bool pass = true;
  std::string detail;
  std::uint64_t stream = 0;
  for (double t : {0.25, 0.5, 1.0}) {
    std::vector<double> x(n);
    parallel_for(n, [&](std::size_t k) {
      RandomSource rng(kSeed, stream + k);
      x[k] = sample_compound_poisson(lambda, law, t, rng).end()(0);
    });
    stream += n;
    double mean = 0.0;
    for (double v : x) {
      mean += v / n;
    }
    double m2 = 0.0, m4 = 0.0;
    for (double v : x) {
      double d = v - mean;
      m2 += d * d / n;
      m4 += d * d * d * d / n;
    }
    double mu = t * lambda * m;
    double var = t * lambda * (s * s + m * m);
    double se_mean = std::sqrt(m2 / n);
    double se_var = std::sqrt((m4 - m2 * m2) / n);
    double zm = std::abs(mean - mu) / se_mean;
    double zv = std::abs(m2 - var) / se_var;
    pass = pass && zm <= 3.0 && zv <= 3.0;
    detail += fmt("t=%.2f z_mean=%.2f z_var=%.2f; ", t, zm, zv);
  }
  return {pass, detail + "need <= 3"};
}

// --- 6 ---------------------------------------------------------------------

Outcome gate_isometry() {
  const std::size_t n = 100000;
  L2Integrand ramp;
  ramp.f = [](double s, const Vec&) { return s; };
  auto wn = RandomOrthogonalMeasure::white_noise(1.0);
  auto mn = RandomOrthogonalMeasure::martingale_noise(MartingaleDriver::compensated_poisson(2.0), 1.0);
  auto cp = RandomOrthogonalMeasure::compensated_poisson(catalog::symmetric_stable_density(1.5, 1.0).nu(), 0.5, 1.0);
  L2Integrand g;
  g.f = [](double, const Vec& y) { return y(0); };
  g.space = SpaceCell{0.5, 1.0, std::nullopt};
  // exact control integrals: int_0^1 s^2 ds, 2 int_0^1 s^2 ds, 2 int_.5^1 y^2 y^-2.5 dy
  const double exact[] = {1.0 / 3.0, 2.0 / 3.0, 4.0 * (1.0 - std::sqrt(0.5))};
  IsometryReport r[] = {isometry_check(ramp, wn, 6, n, kSeed, 0),
                        isometry_check(ramp, mn, 6, n, kSeed, n),
                        isometry_check(g, cp, 4, n, kSeed, 2 * n)};
  bool pass = true;
  std::string detail;
  const char* names[] = {"white_noise", "poisson_martingale", "poisson_measure"};
  for (int i = 0; i < 3; ++i) {
    double ratio = r[i].mc_moment / exact[i];
    bool quad_ok = std::abs(r[i].control_integral / exact[i] - 1.0) < 1e-6;
    pass = pass && ratio >= 0.98 && ratio <= 1.02 && quad_ok;
    detail += fmt("%s %.4f; ", names[i], ratio);
  }
  return {pass, detail + "ratios need [0.98, 1.02]"};
}

// --- 7 ---------------------------------------------------------------------

Outcome gate_intensity() {
  const std::size_t n = 20000;
  const double alpha = 1.5, c = 1.0, eps = 0.1;
  LevyTriplet st = catalog::symmetric_stable_density(alpha, c);
  std::vector<CadlagPath> paths(n);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(kSeed, k);
    paths[k] = sample_levy_ito(st, eps, 1.0, 1.0, rng).path;
  });
  Ensemble ens = Ensemble::from_paths(std::move(paths), kSeed, 0);
  bool pass = true;
  std::string detail;
  for (auto [lo, hi] : {std::pair{0.5, 1.0}, std::pair{1.0, 2.0}}) {
    IntensityEstimate e = estimate_intensity(ens, JumpCounter::annulus(lo, hi), 1.0);
    double nu = 2.0 * c / alpha * (std::pow(lo, -alpha) - std::pow(hi, -alpha));
    double z = std::abs(e.nu_hat / nu - 1.0) / (e.stderr_ / nu);
    pass = pass && z <= 3.0;
    detail += fmt("[%.1f,%.1f) ratio %.4f z=%.2f; ", lo, hi, e.nu_hat / nu, z);
  }
  return {pass, detail + "need z <= 3"};
}

// --- 8 ---------------------------------------------------------------------

Outcome gate_generator() {
  const double eps = 0.05;
  std::vector<std::pair<const char*, LevyTriplet>> triplets = {
      {"brownian", catalog::brownian(1)},
      {"compound_poisson", catalog::compound_poisson_gaussian(2.0, 1.0)},
      {"stable_1.5", catalog::symmetric_stable_density(1.5, 1.0)},
  };
  std::vector<TestFunction> family = {
      TestFunction::gaussian(1, 0.5),
      TestFunction::gaussian(1, 1.0, v1(0.7)),
      TestFunction::gaussian(1, 0.25, v1(-1.0), 2.0) + TestFunction::gaussian(1, 2.0, v1(0.5), -0.5),
  };
  double worst = 0.0;
  for (const auto& [name, tr] : triplets) {
    CharacteristicExponent psi = CharacteristicExponent::of(tr);
    for (const auto& f : family) {
      for (double x : {-1.5, 0.0, 0.3, 1.2}) {
        worst = std::max(worst, std::abs(generator_fourier(psi, f, v1(x)).value - generator_integro(tr, f, v1(x)).value));
      }
    }
  }
  bool pass = worst <= 1e-4;
  std::string detail = fmt("max |fourier - integro| = %.2e; ", worst);

  // Monte Carlo quotients against the simulated (truncated) generator
  const std::vector<double> t_grid = {1e-2, 5e-3, 2.5e-3};
  const TestFunction f = TestFunction::gaussian(1, 0.5);
  const Vec x = v1(0.3);
  std::uint64_t seed = kSeed;
  for (const auto& [name, tr] : triplets) {
    LevySampler sampler(tr, eps, 1.0);
    LevyTriplet sim = tr.with_nu(tr.nu().truncated(eps));
    CharacteristicExponent psi = CharacteristicExponent::of(sim);
    double ref = generator_integro(sim, f, x).value;
    double slope = 0.5 * fourier_multiplier([&](const Vec& xi) { Complex p = psi(xi); return p * p; }, f, x).value;
    const std::size_t n = tr.nu().is_zero() ? 100000 : 400000;
    GeneratorLimitReport r = generator_limit_check(sampler, f, x, t_grid, ref, n, seed++, slope, true);
    pass = pass && r.pass;
    detail += fmt("%s limit %.4f vs %.4f (se %.4f)%s; ", name, r.limit, ref, r.limit_se, r.pass ? "" : " FAIL");
  }
  return {pass, detail};
}

// --- 9 ---------------------------------------------------------------------

Outcome gate_dynkin() {
  const std::size_t n = 20000;
  LevySampler bm(catalog::brownian(1), 1.0, 1e-3);
  std::function<double(const Vec&)> f = [](const Vec& y) { return y(0) * y(0); };
  std::function<double(const Vec&)> af = [](const Vec&) { return 1.0; };
  DynkinReport d = dynkin_check(bm, f, af, Vec::Zero(1), 1.0, n, 100.0, kSeed);
  bool lhs_ok = std::abs(d.lhs - 1.0) <= 3.0 * d.lhs_se + 1e-12;
  bool rhs_ok = std::abs(d.rhs - 1.0) <= 3.0 * d.rhs_se;
  bool pass = lhs_ok && rhs_ok && d.pass;
  std::string detail = fmt("E f(X_tau) - f(0) = %.4f, E int Af = %.4f (se %.4f); ", d.lhs, d.rhs, d.rhs_se);
  StateSymbol q = StateSymbol::from_triplet(catalog::brownian(1));
  std::uint64_t stream = n;
  for (double r : {0.5, 1.0, 2.0}) {
    ExitTimeReport e = mean_exit_time(bm, q, Vec::Zero(1), r, n, 1000.0, kSeed, stream);
    stream += n;
    double ratio = e.mean_tau / (r * r);
    pass = pass && ratio >= 0.97 && ratio <= 1.03;
    detail += fmt("E tau/r^2 (r=%.1f) = %.4f; ", r, ratio);
  }
  return {pass, detail + "need [0.97, 1.03]"};
}

// --- 10 --------------------------------------------------------------------

Outcome gate_sde_symbol() {
  SdeSpec spec;
  spec.phi = [](const Vec& x) { return Mat::Constant(1, 1, 2.0 + std::sin(x(0))); };
  spec.driver = catalog::symmetric_stable(1.0, 1.0);
  spec.x0 = Vec::Zero(1);
  spec.lipschitz = 1.0;
  SdeSampler sampler(spec, 1e-3, 1e-3);
  const std::pair<double, double> probes[] = {{0.0, 1.0}, {0.5, 0.5}, {1.0, 1.5}, {-1.0, 1.0}, {2.0, 2.0}};
  const std::size_t n = 1000000;
  bool pass = true;
  std::string detail;
  std::uint64_t stream = 0;
  for (auto [x, xi] : probes) {
    SymbolEstimate e = estimate_symbol(sampler, v1(x), v1(xi), {1e-2, 5e-3, 2.5e-3}, 1.0, n, kSeed, stream);
    stream += n;
    double truth = (2.0 + std::sin(x)) * std::abs(xi); // |Phi(x) xi| for the Cauchy driver
    double rel = std::abs(e.q_hat - truth) / truth;
    pass = pass && rel <= 0.10;
    detail += fmt("(%.1f,%.1f) %.3f; ", x, xi, rel);
  }
  // constant coefficient: psi(Phi^T xi) with Phi = c, exactly
  SdeSpec cst = spec;
  cst.phi = [](const Vec&) { return Mat::Constant(1, 1, 1.7); };
  cst.lipschitz = 0.0;
  double exact_gap = 0.0;
  for (double xi : linspace(-4.0, 4.0, 17)) {
    for (double x : {-3.0, 0.0, 2.5}) {
      exact_gap = std::max(exact_gap, std::abs(sde_symbol(cst, v1(x), v1(xi)) - Complex(1.7 * std::abs(xi), 0.0)));
    }
  }
  pass = pass && exact_gap <= 1e-12;
  return {pass, detail + fmt("relative errors need <= 0.10; constant-Phi gap %.1e", exact_gap)};
}

// --- 11 --------------------------------------------------------------------

Outcome gate_indices() {
  StateSymbol sl = StateSymbol::stable_like([](const Vec&) { return 1.3; });
  StateSymbol bm = StateSymbol::from_triplet(catalog::brownian(1));
  IndexEstimate a = indices_at_infinity(sl, Vec::Zero(1));
  IndexEstimate b = indices_at_infinity(bm, Vec::Zero(1));
  auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  bool pass = in(a.beta, 1.28, 1.32) && in(a.delta, 1.28, 1.32) && in(b.beta, 1.98, 2.02) && in(b.delta, 1.98, 2.02);
  return {pass, fmt("stable-like 1.3: beta %.4f delta %.4f; brownian: beta %.4f delta %.4f", a.beta, a.delta, b.beta, b.delta)};
}

// --- 12 --------------------------------------------------------------------

Outcome gate_maximal() {
  const int draws = 100;
  const std::size_t n = 2000;
  int ok = 0;
  double tightest = 1e300;
  RandomSource params(kSeed, 0xabcdef);
  for (int k = 0; k < draws; ++k) {
    const int kind = k % 4;
    const double r = 0.5 + 1.5 * params.uniform();
    const double t = 0.05 + 0.95 * params.uniform();
    const double shape = params.uniform();
    std::unique_ptr<ProcessSampler> sampler;
    std::optional<StateSymbol> q;
    Vec x = Vec::Zero(1);
    if (kind == 0) {
      double sigma = 0.5 + 1.5 * shape;
      auto s = std::make_unique<LevySampler>(catalog::brownian(1, sigma), 1.0, 1e-3);
      q = StateSymbol::from_exponent(*s->exponent());
      sampler = std::move(s);
    } else if (kind == 1) {
      double alpha = 1.1 + 0.8 * shape;
      auto s = std::make_unique<LevySampler>(catalog::symmetric_stable_density(alpha, 1.0), 0.05, 1e-2);
      q = StateSymbol::from_exponent(*s->exponent());
      sampler = std::move(s);
    } else if (kind == 2) {
      double lambda = 1.0 + 4.0 * shape;
      auto s = std::make_unique<LevySampler>(catalog::compound_poisson_gaussian(lambda, 1.0), 1.0, 1e-2);
      q = StateSymbol::from_exponent(*s->exponent());
      sampler = std::move(s);
    } else {
      SdeSpec spec;
      double b = 0.9 * shape;
      spec.phi = [b](const Vec& y) { return Mat::Constant(1, 1, 1.0 + b * std::sin(y(0))); };
      spec.x0 = Vec::Zero(1);
      spec.lipschitz = b;
      x = v1(2.0 * shape - 1.0);
      sampler = std::make_unique<SdeSampler>(spec, 1.0, 1e-3);
      q = sde_state_symbol(spec);
    }
    ExceedanceReport e = maximal_check(*sampler, *q, x, r, t, n, kSeed + 1, static_cast<std::uint64_t>(k) * n);
    ok += e.pass;
    if (e.bound > 0) {
      tightest = std::min(tightest, e.bound / std::max(e.frequency, 1e-300));
    }
  }
  return {ok == draws, fmt("%d/%d draws with frequency <= bound (smallest bound/frequency %.2f)", ok, draws, tightest)};
}

// --- 13 --------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const fs::path& out, int threads) {
  std::string cmd = "LEVYTYPE_THREADS=" + std::to_string(threads) + " \"" LEVYTYPE_CLI_PATH "\" " + args +
                    " --out \"" + out.string() + "\" > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome gate_determinism() {
  fs::path root = fs::temp_directory_path() / fmt("levytype_replay_%d", static_cast<int>(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  auto write = [&](const char* name, const char* body) {
    std::ofstream(root / name) << body;
  };
  write("bm.json", R"({"d":1,"l":[0.1],"Q":[[1]],"nu":{"variant":"zero"}})");
  write("stable.json", R"({"triplet":{"preset":"stable","alpha":1.5},"eps":0.01,"dt":0.01,"n_paths":3})");
  write("cpp.json", R"({"lambda":3,"T":2,"n_paths":3,"law":{"kind":"normal","mean":0.2,"sd":1}})");
  write("series.json", R"({"alpha":1.2,"n_terms":500,"n_paths":2})");
  write("sde.json", R"({"phi":{"kind":"sine","a":2,"b":1},"driver":{"preset":"stable_scale","alpha":1.0},"eps":0.01,"dt":0.01,"n_paths":2})");
  write("small.json", R"({"n":4000})");
  write("iso.json", R"({"n":4000,"backend":"all"})");
  write("ck.json", R"({"outer":200,"inner":5,"triplet":{"preset":"cpp_gaussian","lambda":2},"s":0.3,"t":0.7})");
  write("sym.json", R"({"n":20000,"symbol":"sde","phi":{"kind":"sine","a":2,"b":1},"driver":{"preset":"stable_scale","alpha":1.0},"pairs":[[0,1],[1,1.5]],"t_grid":[0.01,0.005]})");
  write("ind.json", R"({"symbol":"stable_like","alpha":"sine","x":[0,0.5,1]})");
  const std::string r = root.string() + "/";
  const std::vector<std::string> suite = {
      "exponent --triplet " + r + "bm.json --plot",
      "simulate --method poisson --seed 5",
      "simulate --method cpp --config " + r + "cpp.json --seed 5",
      "simulate --method bm-levy --seed 7",
      "simulate --method levy-ito --config " + r + "stable.json --seed 9 --plot",
      "simulate --method series --config " + r + "series.json --seed 9",
      "simulate --method sde --config " + r + "sde.json --seed 9",
      "validate --suite cf --config " + r + "small.json --seed 11",
      "validate --suite campbell --config " + r + "small.json --seed 11",
      "validate --suite isometry --config " + r + "iso.json --seed 11",
      "validate --suite martingale --config " + r + "small.json --seed 11",
      "validate --suite ck --config " + r + "ck.json --seed 11",
      "validate --suite dynkin --config " + r + "small.json --seed 11 --format json",
      "symbol --config " + r + "sym.json --seed 13",
      "indices --config " + r + "ind.json --plot",
  };
  std::size_t files = 0;
  std::vector<std::string> mismatches;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    fs::path a = root / fmt("a%02zu", i), b = root / fmt("b%02zu", i);
    int ca = run_cli(suite[i], a, 1);
    int cb = run_cli(suite[i], b, 3);
    if (ca != cb || ca < 0 || ca > 1) {
      mismatches.push_back(fmt("#%zu exit %d/%d", i, ca, cb));
      continue;
    }
    for (const auto& entry : fs::directory_iterator(a)) {
      const std::string name = entry.path().filename().string();
      if (name == "run_info.json") {
        continue;
      }
      ++files;
      if (!fs::exists(b / name) || slurp(entry.path()) != slurp(b / name)) {
        mismatches.push_back(fmt("#%zu %s", i, name.c_str()));
      }
    }
  }
  fs::remove_all(root);
  std::string detail = fmt("%zu commands, %zu files compared (1 vs 3 threads)", suite.size(), files);
  for (const auto& m : mismatches) {
    detail += "; differs: " + m;
  }
  return {mismatches.empty() && files > 0, detail};
}

} // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Outcome (*)()>> gates = {
      {"exponent correctness", gate_exponents},
      {"Levy-Khintchine round trip", gate_round_trip},
      {"Poisson / compound Poisson laws", gate_poisson_laws},
      {"Brownian midpoint construction", gate_brownian_construction},
      {"compound Poisson moments", gate_moments},
      {"Ito isometry", gate_isometry},
      {"intensity recovery", gate_intensity},
      {"generator cross-validation", gate_generator},
      {"Dynkin formula and exit times", gate_dynkin},
      {"SDE symbol", gate_sde_symbol},
      {"indices at infinity", gate_indices},
      {"maximal inequality", gate_maximal},
      {"CLI replay determinism", gate_determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    only.insert(std::atoi(argv[i]));
  }
  int failed = 0;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) {
      continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = gates[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, gates[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed;
}
