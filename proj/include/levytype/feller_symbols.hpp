#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levytype/levy_core.hpp"
#include "levytype/path.hpp"
#include "levytype/process.hpp"

namespace levytype {

//! q(x, xi) = q0(x) + psi_{(l(x), Q(x), nu(x, .))}(xi).
//!
//! Either triplet_at is set (quadrature or closed form through levy_core), or
//! closed_form evaluates q directly; when both are present closed_form wins
//! and triplet_at only serves triplet queries.
struct StateSymbol {
  int dim = 1;
  std::function<LevyTriplet(const Vec&)> triplet_at;
  std::function<double(const Vec&)> q0_at;
  std::function<Complex(const Vec&, const Vec&)> closed_form;
  //! alpha(x) for stable-like symbols
  std::function<double(const Vec&)> stable_alpha;
  bool bounded_coefficients = false;
  std::string label;

  //! x-independent symbol of a Lévy process
  static StateSymbol from_exponent(CharacteristicExponent psi);
  static StateSymbol from_triplet(const LevyTriplet& triplet);
  //! q(x, xi) = |xi|^{alpha(x)} in d = 1
  static StateSymbol stable_like(std::function<double(const Vec&)> alpha);
  //! alpha(x) = 1 + 0.5 sin x clipped to [0.6, 1.9]
  static StateSymbol stable_like_sine();

  double q0(const Vec& x) const { return q0_at ? q0_at(x) : 0.0; }
  LevyTriplet triplet(const Vec& x) const;

  //! sup over probe points of q0 + |l| + |Q| + int |y|^2/(1+|y|^2) nu(x, dy);
  //! needs triplet_at.
  double coefficient_bound(const std::vector<Vec>& probes) const;
};

Complex eval_symbol(const StateSymbol& q, const Vec& x, const Vec& xi);

// ---------------------------------------------------------------------------

//! dX = Phi(X_-) dL, X_0 = x0, with Phi: R^d -> R^{d x n} and an
//! n-dimensional Lévy driver L.
struct SdeSpec {
  std::function<Mat(const Vec&)> phi;
  int state_dim = 1;
  LevyTriplet driver = catalog::brownian(1);
  Vec x0;
  double lipschitz = 0.0;

  //! Finite-difference slopes |Phi(x) - Phi(y)| / |x - y| (operator norm)
  //! on a probe grid around x0 must stay below lipschitz + 1e-6; throws
  //! LipschitzViolation otherwise.
  void validate(double probe_radius = 10.0) const;
};

//! Sampler for the SDE; exponent() is empty since the process is not
//! spatially homogeneous.
class SdeSampler : public DrivenSampler {
public:
  SdeSampler(const SdeSpec& spec, double eps, double dt, LevyItoOptions options = {});
};

//! One Euler path on [0, T]: X_{t+dt} = X_t + Phi(X_t) dL on the grid, driver
//! jumps applied at their exact times with Phi at the left limit.
CadlagPath sde_euler(const SdeSpec& spec, double eps, double grid_dt, double T, RandomSource& rng);

//! psi(Phi(x)^T xi)
Complex sde_symbol(const SdeSpec& spec, const Vec& x, const Vec& xi);

//! The same as a StateSymbol.
StateSymbol sde_state_symbol(const SdeSpec& spec);

// ---------------------------------------------------------------------------

struct SymbolPoint {
  double t = 0.0;
  //! (1 - phi_hat_t) / t, an estimate of q(x, xi) at time t
  Complex value;
  double se = 0.0;
  //! fraction of paths with tau_r < t
  double exit_fraction = 0.0;
};

struct SymbolEstimate {
  Complex q_hat;
  //! per-path standard error of the extrapolated value
  double se = 0.0;
  Complex slope;
  std::vector<SymbolPoint> points;
  std::size_t n = 0;
};

//! q(x, xi) from lim_{t -> 0} (1 - E^x e^{i xi.(X_{t ^ tau_r} - x)}) / t,
//! by a least-squares line in t through the grid points. ExitDominates when
//! more than half the paths leave B_r(x) before the smallest t.
SymbolEstimate estimate_symbol(const ProcessSampler& sampler, const Vec& x, const Vec& xi,
                               std::vector<double> t_grid, double r, std::size_t n,
                               std::uint64_t seed, std::uint64_t first_stream = 0);

// ---------------------------------------------------------------------------

struct IndexEstimate {
  double beta = 0.0;
  double delta = 0.0;
  //! range of the local slopes between consecutive grid points
  double beta_lo = 0.0, beta_hi = 0.0;
  double delta_lo = 0.0, delta_hi = 0.0;
  double beta_residual = 0.0;
  double delta_residual = 0.0;
  std::vector<double> radii;
  std::vector<double> sup_values;
  std::vector<double> inf_values;
};

//! Growth indices at infinity from log-log slopes over |xi| in
//! [xi_min, xi_max]:
//!   beta:  H(R) = sup_{|y-x| <= 1/R} sup_{|eta| <= R} |q(y, eta)|
//!   delta: h(R) = inf_{|y-x| <= 1/R} sup_{|eta| <= R} |q(y, eta)|
//! SlopeUnresolved when the fit residual exceeds 0.05 or delta > beta + 0.02.
IndexEstimate indices_at_infinity(const StateSymbol& q, const Vec& x, double xi_max = 1e6,
                                  int points = 25, double xi_min = 100.0);

//! Constant of the maximal inequality for the cut-off (1 - |x|^2)^4_+ in
//! d = 1, 2, 3 (tools/derive_bump_constant.py).
double maximal_constant(int dim);

//! sup_{|y - x| <= r} sup_{|xi| <= k / r} |q(y, xi)| on a probe grid.
double symbol_sup(const StateSymbol& q, const Vec& x, double r, double k = 1.0);
//! sup_{|xi| <= k / r} inf_{|y - x| <= r} |q(y, xi)| on a probe grid.
double symbol_sup_inf(const StateSymbol& q, const Vec& x, double r, double k = 1.0);

//! c E tau sup_{|y-x| <= r} sup_{|xi| <= 1/r} |q(y, xi)|, an upper bound for
//! P^x(sup_{s <= tau} |X_s - x| > r).
double maximal_bound(const StateSymbol& q, const Vec& x, double r, double expected_tau);

struct SectorReport {
  double kappa = 0.0;
  bool pass = false;
};

//! kappa = sup |Im q| / Re q over the probe grid; pass iff kappa <= cap.
SectorReport sector_check(const StateSymbol& q, const std::vector<Vec>& x_probes,
                          const std::vector<Vec>& xi_probes, double cap = 100.0);

//! Default probe grid: |xi| log-spaced in [1e-3, 1e6] along +-axes.
std::vector<Vec> default_xi_probes(int dim);

struct ExitTimeReport {
  double mean_tau = 0.0;
  double se = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double kappa = 0.0;
  double censored_fraction = 0.0;
  std::size_t n = 0;
};

//! Monte Carlo E^x tau_r with the symbol brackets
//!   1 / (c sup_{|y-x| <= r} sup_{|xi| <= 1/r} |q|)  <=  E tau_r
//!   E tau_r <= 2 sqrt(1 + kappa^2) / ((cos k* - kappa sin k*) sup_{|xi| <= k*/r} inf_{|y-x| <= r} |q|)
//! with k* = arccos sqrt(2/3); upper = inf when the sector constant is too
//! large. Censored when more than 1% of paths are still inside at time_cap.
ExitTimeReport mean_exit_time(const ProcessSampler& sampler, const StateSymbol& q, const Vec& x,
                              double r, std::size_t n, double time_cap, std::uint64_t seed,
                              std::uint64_t first_stream = 0);

struct ExceedanceReport {
  double frequency = 0.0;
  double se = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::size_t n = 0;
};

//! Empirical P^x(sup_{s <= t} |X_s - x| > r) against maximal_bound(q, x, r, t).
ExceedanceReport maximal_check(const ProcessSampler& sampler, const StateSymbol& q, const Vec& x,
                               double r, double t, std::size_t n, std::uint64_t seed,
                               std::uint64_t first_stream = 0);

} // namespace levytype
