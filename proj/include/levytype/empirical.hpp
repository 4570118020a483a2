#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levytype/path.hpp"
#include "levytype/samplers.hpp"

namespace levytype {

//! A jump-size region B with a declared exclusion radius: B must not meet
//! the ball |y| < exclusion_radius. The radius is checked against every
//! ledger jump the region is asked about.
class JumpCounter {
public:
  JumpCounter(std::function<bool(const Vec&)> contains, double exclusion_radius,
              std::string label = {});

  //! lo <= |y| < hi
  static JumpCounter annulus(double lo, double hi);
  //! the single point p (within 1e-12)
  static JumpCounter point(Vec p);
  //! |y| > a
  static JumpCounter norm_above(double a);

  bool contains(const Vec& y) const;
  double exclusion_radius() const { return radius_; }
  const std::string& label() const { return label_; }

private:
  std::function<bool(const Vec&)> contains_;
  double radius_;
  std::string label_;
};

//! N_t(B) = #{s in (0, t] : Delta X_s in B}; t defaults to the horizon.
std::size_t jump_measure(const CadlagPath& path, const JumpCounter& region, double t = -1.0);

struct IntensityEstimate {
  double nu_hat = 0.0;
  double stderr_ = 0.0;
  std::size_t n = 0;
};

//! nu_hat(B) = mean N_t(B) / t with its CLT standard error.
IntensityEstimate estimate_intensity(const Ensemble& ensemble, const JumpCounter& region, double t);

struct CfEstimate {
  std::vector<Vec> xi;
  std::vector<Complex> phi;
  std::vector<double> se;
  std::size_t n = 0;
};

//! phi_hat(xi) = mean exp(i xi.X), SE = sqrt((1 - |phi_hat|^2) / n).
CfEstimate empirical_cf(const Mat& samples, const std::vector<Vec>& xi_grid);
CfEstimate empirical_cf(const Ensemble& ensemble, const std::vector<Vec>& xi_grid);

//! f = sum_j values[j] 1_{(breaks[j], breaks[j+1]]}
struct StepFunction {
  std::vector<double> breaks;
  std::vector<double> values;

  double operator()(double t) const;
  //! UnsupportedF unless breaks are >= 0, strictly increasing and one longer
  //! than values
  void validate() const;
};

struct CheckReport {
  Complex lhs;
  Complex rhs;
  double se = 0.0;
  bool pass = false;
  std::size_t n = 0;
};

//! E exp(i int f dC) for a compound Poisson C (Monte Carlo over the jump
//! ledger) against exp(lambda int int (e^{i y f(t)} - 1) mu(dy) dt).
//! Passes when |lhs - rhs| <= 3 SE.
CheckReport campbell_check(double lambda, const JumpLaw& mu, const StepFunction& f, std::size_t n,
                           std::uint64_t seed, std::uint64_t first_stream = 0);

struct IndependenceReport {
  Complex joint;
  Complex product;
  double se = 0.0;
  bool pass = false;
  std::size_t n = 0;
};

//! Joint CF of (X_{t_1}, ..., X_{t_m}) against the product of the increment
//! CFs at eta_k = xi_k + ... + xi_m. `partition` lists t_1 < ... < t_m
//! (t_0 = 0 is implicit).
IndependenceReport increment_independence_probe(const Ensemble& ensemble,
                                                const std::vector<double>& partition,
                                                const std::vector<Vec>& xi);

//! Total-variation distance between the empirical law of integer samples and
//! a pmf; mass of the pmf outside [lo, hi] counts fully.
double total_variation_integer(const std::vector<long>& samples,
                               const std::function<double(long)>& pmf, long lo, long hi);

} // namespace levytype
