#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "levytype/feller_symbols.hpp"
#include "levytype/levy_core.hpp"
#include "levytype/process.hpp"

namespace levytype {

//! Finite combination of Gaussians w exp(-a |x - m|^2); a = 0 terms are
//! constants. Fourier transforms use f_hat(xi) = (2 pi)^-d int f e^{-i xi.x} dx.
class TestFunction {
public:
  struct Term {
    double weight = 1.0;
    double a = 0.5;
    Vec center;
  };

  explicit TestFunction(std::vector<Term> terms);
  //! exp(-a |x - m|^2), m = 0 by default
  static TestFunction gaussian(int dim, double a = 0.5, std::optional<Vec> center = std::nullopt,
                               double weight = 1.0);
  static TestFunction constant(int dim, double c);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  double operator()(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;
  //! Fourier transform of the non-constant terms
  Complex fourier(const Vec& xi) const;
  bool has_constant_part() const;
  double constant_part() const;

  //! f(. + h)
  TestFunction shifted(const Vec& h) const;
  TestFunction operator+(const TestFunction& other) const;
  TestFunction scaled(double c) const;

  //! sup |f| and sum_{|k| <= 2} sup |D^k f| over a probe grid
  struct Certificate {
    double sup_norm = 0.0;
    double c2_norm = 0.0;
  };
  Certificate certificate(double half_width = 6.0, int points_per_axis = 121) const;
  //! largest mismatch between the analytic gradient/Hessian and central
  //! differences over a probe grid
  double derivative_mismatch(double half_width = 3.0, int points_per_axis = 13) const;

private:
  int dim_;
  std::vector<Term> terms_;
};

struct OperatorValue {
  double value = 0.0;
  double error = 0.0;
};

//! Af(x) = -int psi(xi) f_hat(xi) e^{i x.xi} dxi (d = 1, 2).
OperatorValue generator_fourier(const CharacteristicExponent& psi, const TestFunction& f, const Vec& x);

//! int phi(xi) f_hat(xi) e^{i x.xi} dxi for a general multiplier phi; the
//! constant part of f contributes phi(0) c. generator_fourier is the case
//! phi = -psi.
OperatorValue fourier_multiplier(const std::function<Complex(const Vec&)>& phi,
                                 const TestFunction& f, const Vec& x);

//! l.grad f + 1/2 tr(Q D^2 f) + int [f(x+y) - f(x) - grad f(x).y 1_{|y|<1}] nu(dy);
//! the bracket is replaced by its second-order Taylor term for |y| < 1e-5.
OperatorValue generator_integro(const LevyTriplet& triplet, const TestFunction& f, const Vec& x);
//! the same with the triplet at x, minus q(x, 0) f(x)
OperatorValue generator_integro(const StateSymbol& q, const TestFunction& f, const Vec& x);

struct MonteCarloValue {
  double value = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

//! E^x f(X_t). With `antithetic`, each draw also uses the reflected endpoint
//! 2x - X_t; only valid for symmetric Lévy samplers (checked through the
//! sampler's exponent).
MonteCarloValue semigroup_apply(const ProcessSampler& sampler, const TestFunction& f, double t,
                                const Vec& x, std::size_t n, std::uint64_t seed,
                                std::uint64_t first_stream = 0, bool antithetic = false);

struct LimitPoint {
  double t = 0.0;
  double quotient = 0.0;
  double se = 0.0;
  //! quotient - reference
  double residual = 0.0;
};

struct GeneratorLimitReport {
  std::vector<LimitPoint> points;
  double reference = 0.0;
  //! least-squares intercept of quotient against t
  double limit = 0.0;
  double limit_se = 0.0;
  //! expected first-order slope A^2 f(x) / 2 when known
  std::optional<double> expected_slope;
  double fitted_slope = 0.0;
  bool pass = false;
};

//! (P_t f(x) - f(x)) / t over a decreasing t grid against `reference`.
//! Passes when the extrapolated limit is within max(3 SE, rel_tol |ref|) of
//! the reference and, if expected_slope is set, every residual is within
//! 3 SE + |expected_slope| t / 2 of expected_slope t.
GeneratorLimitReport generator_limit_check(const ProcessSampler& sampler, const TestFunction& f,
                                           const Vec& x, const std::vector<double>& t_grid,
                                           double reference, std::size_t n, std::uint64_t seed,
                                           std::optional<double> expected_slope = std::nullopt,
                                           bool antithetic = false, double rel_tol = 0.02);

//! R_lambda f(x) = lambda^-1 E f(X_E), E ~ Exp(lambda); draws with E >
//! time_cap contribute 0.
MonteCarloValue resolvent_apply(const ProcessSampler& sampler, const TestFunction& f, double lambda,
                                const Vec& x, std::size_t n, std::uint64_t seed,
                                double time_cap = std::numeric_limits<double>::infinity(),
                                std::uint64_t first_stream = 0);

struct DissipativityReport {
  double lhs = 0.0; //!< sup |lambda f - A f|
  double rhs = 0.0; //!< lambda sup |f|
  bool pass = false;
};

DissipativityReport dissipativity_check(const std::function<double(const Vec&)>& generator,
                                        const TestFunction& f, double lambda,
                                        const std::vector<Vec>& probes, double tol = 1e-8);

struct DynkinReport {
  double lhs = 0.0; //!< E f(X_sigma) - f(x)
  double rhs = 0.0; //!< E int_0^sigma A f(X_s) ds
  double se = 0.0;  //!< of the paired difference
  double lhs_se = 0.0;
  double rhs_se = 0.0;
  double mean_exit = 0.0;
  double censored_fraction = 0.0;
  bool pass = false;
  std::size_t n = 0;
};

//! Both sides of Dynkin's formula at the first exit from B_r(x); Censored
//! when more than 1% of paths have not left by time_cap.
DynkinReport dynkin_check(const ProcessSampler& sampler, const std::function<double(const Vec&)>& f,
                          const std::function<double(const Vec&)>& generator, const Vec& x,
                          double r, std::size_t n, double time_cap, std::uint64_t seed,
                          std::uint64_t first_stream = 0);
DynkinReport dynkin_check(const ProcessSampler& sampler, const TestFunction& f,
                          const std::function<double(const Vec&)>& generator, const Vec& x,
                          double r, std::size_t n, double time_cap, std::uint64_t seed,
                          std::uint64_t first_stream = 0);

struct MartingaleReport {
  //! largest |E[(M_{t_{k+1}} - M_{t_k}) conj(g)]| / SE over all (k, g)
  double max_score = 0.0;
  std::size_t tests = 0;
  bool pass = false;
  std::size_t n = 0;
};

//! M_t = exp(i xi.(X_t - x) + t psi(xi)) with psi the sampler's exponent;
//! increments tested against g in {1, e^{i X_{t_k}}, 1{X_{t_k,1} > x_1}, cos X_{t_k,1}}.
MartingaleReport exponential_martingale_check(const ProcessSampler& sampler, const Vec& xi,
                                              const std::vector<double>& partition,
                                              std::size_t n, std::uint64_t seed,
                                              std::uint64_t first_stream = 0);

struct ChapmanKolmogorovReport {
  double direct = 0.0;
  double nested = 0.0;
  double se = 0.0;
  bool pass = false;
};

//! P_{s+t} f(x) against P_s(P_t f)(x) with `inner` restarts from each of
//! `outer` midpoints X_s. Direct, outer and inner draws use disjoint streams.
ChapmanKolmogorovReport chapman_kolmogorov_check(const ProcessSampler& sampler,
                                                 const TestFunction& f, const Vec& x, double s,
                                                 double t, std::size_t outer, std::size_t inner,
                                                 std::uint64_t seed);

} // namespace levytype
