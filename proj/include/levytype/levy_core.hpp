#pragma once

#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "levytype/types.hpp"

namespace levytype {

//! Radial profile of a Lévy measure in polar coordinates.
//!
//! The built-in kinds serialize to JSON; `custom` wraps an arbitrary callable
//! and is rejected by the serializer.
class RadialProfile {
public:
  enum class Kind { Power, ExpPower, Gaussian, Custom };

  //! c * r^(-1-alpha)
  static RadialProfile power(double c, double alpha);
  //! c * r^(-p) * exp(-b r)
  static RadialProfile exp_power(double c, double p, double b);
  //! c * exp(-r^2 / (2 s^2))
  static RadialProfile gaussian(double c, double s);
  static RadialProfile custom(std::function<double(double)> fn, std::string label);

  double operator()(double r) const;

  Kind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  const std::string& label() const { return label_; }

private:
  Kind kind_ = Kind::Custom;
  std::vector<double> params_;
  std::function<double(double)> fn_;
  std::string label_;
};

struct SphericalAtom {
  Vec direction; // unit vector
  double weight = 0.0;
};

struct Atom {
  Vec point;
  double mass = 0.0;
};

//! Specification of a Lévy measure nu on R^d \ {0}.
//!
//! Radial variants are stored in polar form nu(dr dz) = h(r) dr sigma(dz):
//! for RadialDensity h(r) = density(r) r^(d-1), for AlphaStable
//! h(r) = r^(-1-alpha). `floor()` removes all mass with |y| < floor; it is
//! how truncated measures nu|_{|y| >= eps} are represented.
class LevyMeasureSpec {
public:
  struct Zero {};
  struct FiniteAtomic {
    std::vector<Atom> atoms;
  };
  struct RadialDensity {
    RadialProfile density;
    std::vector<SphericalAtom> angular;
    double witness_bound = std::numeric_limits<double>::infinity();
  };
  struct AlphaStable {
    double alpha = 1.0;
    std::vector<SphericalAtom> spherical;
  };
  using Variant = std::variant<Zero, FiniteAtomic, RadialDensity, AlphaStable>;

  static LevyMeasureSpec zero(int dim);
  static LevyMeasureSpec finite_atomic(int dim, std::vector<Atom> atoms);
  static LevyMeasureSpec radial_density(int dim, RadialProfile density,
                                        std::vector<SphericalAtom> angular,
                                        double witness_bound = std::numeric_limits<double>::infinity());
  static LevyMeasureSpec alpha_stable(int dim, double alpha, std::vector<SphericalAtom> spherical);

  int dim() const { return dim_; }
  const Variant& variant() const { return variant_; }
  double floor() const { return floor_; }
  bool is_zero() const;
  bool is_polar() const;

  //! Copy with all mass inside |y| < eps removed.
  LevyMeasureSpec truncated(double eps) const;

  //! Radial part h(r) of the polar form (0 below the floor).
  double radial(double r) const;
  //! Angular atoms of the polar form.
  const std::vector<SphericalAtom>& directions() const;
  //! Total angular weight.
  double angular_mass() const;

  //! nu{ lo <= |y| < hi }
  double band_mass(double lo, double hi) const;
  //! integral of |y|^2 over { |y| < r }
  double second_moment_below(double r) const;
  //! integral of y over { lo <= |y| < hi }
  Vec first_moment_band(double lo, double hi) const;
  //! integral of |y|^2 / (1 + |y|^2); the bounded-coefficient functional
  double bounded_moment() const;
  //! integral of min(1, |y|^2); finite for every admissible Lévy measure
  double integrability_witness() const { return witness_; }

private:
  LevyMeasureSpec(int dim, Variant v);
  void validate();
  double compute_witness() const;

  int dim_ = 1;
  Variant variant_;
  double floor_ = 0.0;
  double witness_ = 0.0;
};

//! Lévy triplet (l, Q, nu).
class LevyTriplet {
public:
  static constexpr double kPsdTolerance = 1e-10;

  LevyTriplet(Vec drift, Mat diffusion, LevyMeasureSpec nu);

  int dim() const { return static_cast<int>(drift_.size()); }
  const Vec& drift() const { return drift_; }
  const Mat& diffusion() const { return diffusion_; }
  const LevyMeasureSpec& nu() const { return nu_; }

  LevyTriplet with_nu(LevyMeasureSpec nu) const;
  LevyTriplet truncated(double eps) const { return with_nu(nu_.truncated(eps)); }

private:
  Vec drift_;
  Mat diffusion_;
  LevyMeasureSpec nu_;
};

//! psi(xi) as an evaluable object together with its provenance.
class CharacteristicExponent {
public:
  using Fn = std::function<Complex(const Vec&)>;

  CharacteristicExponent(int dim, Fn fn, bool closed_form, std::string label = {});

  static CharacteristicExponent of(const LevyTriplet& triplet);

  Complex operator()(const Vec& xi) const;
  Complex operator()(double xi) const;

  int dim() const { return dim_; }
  bool closed_form() const { return closed_form_; }
  const std::string& label() const { return label_; }

private:
  int dim_;
  Fn fn_;
  bool closed_form_;
  std::string label_;
};

//! psi(xi) = -i l.xi + 1/2 xi.Q xi + int [1 - e^{i y.xi} + i xi.y 1_{(0,1)}(|y|)] nu(dy)
Complex eval_exponent(const LevyTriplet& triplet, const Vec& xi);

//! The jump part of eval_exponent alone.
Complex jump_exponent(const LevyMeasureSpec& nu, const Vec& xi);

//! Closed-form stable exponent; `spherical` is the exponent's angular measure,
//! `mu` the linear shift.
Complex stable_exponent(double alpha, const std::vector<SphericalAtom>& spherical,
                        const Vec& mu, const Vec& xi);

//! Exponent-side angular measure and shift equivalent to the Lévy measure
//! r^(-1-alpha) dr sigma(dz).
struct StableParameters {
  std::vector<SphericalAtom> spherical;
  Vec mu;
};
StableParameters stable_parameters_from_levy_measure(double alpha,
                                                     const std::vector<SphericalAtom>& sigma);

//! sqrt|psi(xi+eta)| <= sqrt|psi(xi)| + sqrt|psi(eta)| + tol
bool subadditivity_check(const CharacteristicExponent& psi, const Vec& xi, const Vec& eta,
                         double tol = 1e-9);

//! 2 sup_{|eta| <= 1} |psi(eta)| over a grid with `points_per_axis` nodes per
//! coordinate of [-1, 1]^d (restricted to the unit ball).
double growth_constant(const CharacteristicExponent& psi, int points_per_axis = 64);

struct DiffusionProbeReport {
  Mat q_hat;
  //! per probed direction: extrapolated xi.Q xi and the last raw estimate
  std::vector<double> extrapolated;
  std::vector<double> raw_last;
  std::vector<double> successive_change;
};

//! Recovers Q from 1/2 xi.Q xi = lim psi(n xi)/n^2 using the coordinate and
//! pairwise directions, with geometric n = 1, 2, 4, ..., n_max and Aitken
//! extrapolation. Throws NoConvergence when the last two extrapolated values
//! differ by more than 1e-3 (relative, absolute below 1).
DiffusionProbeReport triplet_from_exponent_probe(const CharacteristicExponent& psi,
                                                 int n_max = 1 << 10);

namespace catalog {

//! l = drift, Q = sigma^2 I_d, nu = 0
LevyTriplet brownian(int dim, double sigma = 1.0, double drift = 0.0);
//! Poisson process: nu = lambda delta_1
LevyTriplet poisson(double lambda);
//! Compound Poisson with N(0, s^2) jumps at rate lambda (d = 1)
LevyTriplet compound_poisson_gaussian(double lambda, double s = 1.0);
//! Symmetric 1-d stable with nu(dy) = c |y|^(-1-alpha) dy as a radial density
LevyTriplet symmetric_stable_density(double alpha, double c = 1.0);
//! Symmetric 1-d stable with psi(xi) = scale |xi|^alpha, AlphaStable variant
LevyTriplet symmetric_stable(double alpha, double scale = 1.0);
//! Gamma process: l = 1 - e^-1, nu(dy) = y^-1 e^-y dy on (0, inf)
LevyTriplet gamma_process();
//! int_0^inf (1 - cos r) r^(-1-alpha) dr
double stable_cosine_integral(double alpha);
//! c such that nu(dy) = c |y|^(-1-alpha) dy on R has psi(xi) = |xi|^alpha
double symmetric_stable_density_constant(double alpha);

} // namespace catalog

} // namespace levytype
