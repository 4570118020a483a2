#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "levytype/levy_core.hpp"
#include "levytype/path.hpp"
#include "levytype/random.hpp"
#include "levytype/samplers.hpp"

namespace levytype {

//! One path observed at fixed times, optionally stopped at the first exit
//! from the ball B_r(x0).
struct StoppedSample {
  //! X_{t_k ^ tau} for each requested time t_k
  std::vector<Vec> observed;
  //! first exit time; +inf when the path stays inside up to the last time
  double tau = std::numeric_limits<double>::infinity();
  bool exited = false;
  //! X_tau if exited, else X at the last requested time
  Vec final_position;
  //! left-point sum of g(X_s) ds over [0, tau ^ T] when g was supplied
  double running_integral = 0.0;
};

using StateFunctional = std::function<double(const Vec&)>;

//! Anything that can produce paths of a Markov process started at x0.
class ProcessSampler {
public:
  virtual ~ProcessSampler() = default;

  virtual int dim() const = 0;
  virtual std::string label() const = 0;

  //! X_T under P^{x0}.
  virtual Vec sample_endpoint(const Vec& x0, double T, RandomSource& rng) const;

  //! `times` ascending and > 0; radius = +inf disables stopping.
  virtual StoppedSample sample_stopped(const Vec& x0, const std::vector<double>& times,
                                       double radius, RandomSource& rng,
                                       const StateFunctional* running = nullptr) const = 0;

  virtual CadlagPath sample_path(const Vec& x0, double T, RandomSource& rng) const = 0;

  //! The exponent actually simulated, for spatially homogeneous samplers.
  virtual std::optional<CharacteristicExponent> exponent() const { return std::nullopt; }
};

//! X solves dX = Phi(X_-) dL for a Lévy driver L simulated by the Lévy-Itô
//! sampler: Euler steps for the continuous part on a grid of mesh dt, driver
//! jumps applied at their exact times with Phi at the left limit. An empty
//! Phi means X = x0 + L.
//!
//! For d = 1 with a Gaussian part, exits between grid points are detected by
//! the Brownian-bridge crossing probability exp(-2 (r - a)(r - c) / (s^2 dt)).
class DrivenSampler : public ProcessSampler {
public:
  using CoefficientField = std::function<Mat(const Vec&)>;

  DrivenSampler(LevyTriplet driver, int state_dim, CoefficientField phi, double eps, double dt,
                LevyItoOptions options = {});

  int dim() const override { return state_dim_; }
  std::string label() const override { return phi_ ? "sde" : "levy"; }
  Vec sample_endpoint(const Vec& x0, double T, RandomSource& rng) const override;
  StoppedSample sample_stopped(const Vec& x0, const std::vector<double>& times, double radius,
                               RandomSource& rng,
                               const StateFunctional* running = nullptr) const override;
  CadlagPath sample_path(const Vec& x0, double T, RandomSource& rng) const override;

  const LevyItoSampler& driver() const { return driver_; }
  double dt() const { return dt_; }
  //! |X| beyond this raises Blowup
  static constexpr double kBlowup = 1e12;

private:
  Vec apply(const Vec& x, const Vec& dl) const;
  void guard(const Vec& x, double t) const;

  LevyItoSampler driver_;
  int state_dim_;
  CoefficientField phi_;
  double dt_;
};

//! Lévy process with triplet (l, Q, nu|_{|y| >= eps}).
class LevySampler : public DrivenSampler {
public:
  LevySampler(LevyTriplet triplet, double eps, double dt, LevyItoOptions options = {});
  std::optional<CharacteristicExponent> exponent() const override;
};

//! X_t = x0 for all t (the process with psi = 0).
class FrozenSampler : public ProcessSampler {
public:
  explicit FrozenSampler(int dim) : dim_(dim) {}
  int dim() const override { return dim_; }
  std::string label() const override { return "frozen"; }
  StoppedSample sample_stopped(const Vec& x0, const std::vector<double>& times, double radius,
                               RandomSource& rng,
                               const StateFunctional* running = nullptr) const override;
  CadlagPath sample_path(const Vec& x0, double T, RandomSource& rng) const override;
  std::optional<CharacteristicExponent> exponent() const override;

private:
  int dim_;
};

} // namespace levytype
