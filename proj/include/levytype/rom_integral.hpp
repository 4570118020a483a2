#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "levytype/levy_core.hpp"
#include "levytype/random.hpp"
#include "levytype/samplers.hpp"

namespace levytype {

//! Radial band lo <= |y| < hi, optionally cut to the open half-space
//! orient.y > 0 (in d = 1, orient = +-1 selects a signed interval).
struct SpaceCell {
  double lo = 0.0;
  double hi = 0.0;
  std::optional<Vec> orient;

  bool contains(const Vec& y) const;
  double exclusion_radius() const { return lo; }
};

//! (s, t] or (s, t] x B.
struct SemiringInterval {
  double s = 0.0;
  double t = 0.0;
  std::optional<SpaceCell> space;

  static SemiringInterval time(double s, double t);
  static SemiringInterval space_time(double s, double t, SpaceCell cell);

  bool is_space_time() const { return space.has_value(); }
  //! Empty result for disjoint intervals; OutOfSemiring when the half-space
  //! cuts are not comparable.
  std::optional<SemiringInterval> intersect(const SemiringInterval& other) const;
};

//! sigma W_t + sum_{k <= N_t} Y_k - lambda E[Y] t on the line, with
//! predictable bracket t (sigma^2 + lambda E[Y^2]).
struct MartingaleDriver {
  double sigma = 0.0;
  double lambda = 0.0;
  std::optional<JumpLaw> law;
  double jump_mean = 0.0;
  double jump_second_moment = 0.0;

  static MartingaleDriver brownian(double sigma = 1.0);
  //! N_t - lambda t
  static MartingaleDriver compensated_poisson(double lambda);
  static MartingaleDriver compensated_compound_poisson(double lambda, JumpLaw law, double mean,
                                                       double second_moment);
  double bracket_rate() const { return sigma * sigma + lambda * jump_second_moment; }
};

class NoiseReplay;

//! White noise, martingale noise or compensated Poisson noise on [0, horizon].
class RandomOrthogonalMeasure {
public:
  enum class Kind { WhiteNoise, MartingaleNoise, CompensatedPoisson };

  static RandomOrthogonalMeasure white_noise(double horizon, double sigma = 1.0);
  static RandomOrthogonalMeasure martingale_noise(MartingaleDriver driver, double horizon);
  //! Jumps with |y| >= min_radius (in (0, 1]) are materialized; space cells
  //! must stay outside that radius.
  static RandomOrthogonalMeasure compensated_poisson(LevyMeasureSpec nu, double min_radius,
                                                     double horizon);

  Kind kind() const { return kind_; }
  std::string label() const;
  double horizon() const { return horizon_; }
  bool is_space_time() const { return kind_ == Kind::CompensatedPoisson; }
  int space_dim() const;

  //! OutOfSemiring unless R belongs to this backend's semiring.
  void check(const SemiringInterval& r) const;
  //! mu(R)
  double control(const SemiringInterval& r) const;
  //! nu(B)
  double space_mass(const SpaceCell& cell) const;
  //! int_B g d nu
  double space_integral(const SpaceCell& cell, const std::function<double(const Vec&)>& g) const;

  const MartingaleDriver& driver() const { return driver_; }
  const LevyMeasureSpec& nu() const { return *nu_; }
  double min_radius() const { return min_radius_; }

  NoiseReplay replay(std::uint64_t seed, std::uint64_t stream) const;

private:
  RandomOrthogonalMeasure() = default;

  Kind kind_ = Kind::WhiteNoise;
  double horizon_ = 1.0;
  MartingaleDriver driver_;
  std::shared_ptr<const LevyMeasureSpec> nu_;
  std::shared_ptr<const LevyItoSampler> jumps_;
  double min_radius_ = 0.0;

  friend class NoiseReplay;
};

//! One materialized sample path of the noise. Every interval evaluated on the
//! same replay reads the same path. The Brownian part is built lazily on a
//! dyadic tree whose node variates are keyed by node position, so values do
//! not depend on the order of queries.
class NoiseReplay {
public:
  //! N(R) for this path.
  double sample(const SemiringInterval& r);
  //! M_t for time-type backends.
  double martingale_at(double t);

  const RandomOrthogonalMeasure& measure() const { return *measure_; }
  struct PointJump {
    double time;
    Vec size;
  };
  const std::vector<PointJump>& jumps() const { return jumps_; }

private:
  NoiseReplay(const RandomOrthogonalMeasure& m, std::uint64_t seed, std::uint64_t stream);
  double brownian_at(double t);
  double node(int level, std::uint64_t index, double a, double b, double wa, double wb);

  std::shared_ptr<const RandomOrthogonalMeasure> measure_;
  RandomSource base_;
  double w_end_ = 0.0;
  std::unordered_map<std::uint64_t, double> cache_;
  std::vector<PointJump> jumps_;

  friend class RandomOrthogonalMeasure;
};

//! One draw of N(R) on a fresh replay of (seed, stream).
double sample_noise(const RandomOrthogonalMeasure& n, const SemiringInterval& r, std::uint64_t seed,
                    std::uint64_t stream);

//! sum_k c_k 1_{R_k}
struct SimpleFunction {
  struct Term {
    double coefficient;
    SemiringInterval region;
  };
  std::vector<Term> terms;
};

//! I_N(f) = sum_k c_k N(R_k) on one replay.
double integrate_simple(const SimpleFunction& f, NoiseReplay& replay);

//! int f^2 d mu for a simple function, after splitting into disjoint pieces.
double control_norm(const SimpleFunction& f, const RandomOrthogonalMeasure& n);

//! f(s) on [t0, t1] (time backends) or f(s, y) on [t0, t1] x space
//! (space-time backends). The approximation at level L takes the value at the
//! midpoint of each of 2^L dyadic time cells (and, for space-time, 2^L radial
//! cells per half-line in d = 1; radial cells along e_1 in d > 1, so f
//! should be radial there).
struct L2Integrand {
  std::function<double(double, const Vec&)> f;
  double t0 = 0.0;
  double t1 = 1.0;
  std::optional<SpaceCell> space;
  //! optional closed form of int (f - f_L)^2 d mu; quadrature otherwise
  std::function<double(int)> certificate;
};

struct L2Approximation {
  SimpleFunction simple;
  //! mu(R_k) per term
  std::vector<double> control;
  int level = 0;
  //! int (f - f_level)^2 d mu
  double certificate = 0.0;
};

//! Dyadic simple approximation with its L2 error; NotSquareIntegrable when
//! the certificate is not finite or grows over the last refinement levels.
L2Approximation approximate_l2(const L2Integrand& f, const RandomOrthogonalMeasure& n, int level);

struct L2Sample {
  double value = 0.0;
  double certificate = 0.0;
};

L2Sample integrate_l2(const L2Approximation& approx, NoiseReplay& replay);
L2Sample integrate_l2(const L2Integrand& f, NoiseReplay& replay, int level);

//! int f^2 d mu by quadrature.
double control_integral(const L2Integrand& f, const RandomOrthogonalMeasure& n);

struct IsometryReport {
  std::string functional;
  double mc_moment = 0.0;
  double control_integral = 0.0;
  double se = 0.0;
  bool pass = false;
  std::size_t n = 0;

  double ratio() const { return mc_moment / control_integral; }
};

//! Monte Carlo E[I_N(f_L)^2] against int f^2 d mu; pass when within 3 SE.
IsometryReport isometry_check(const L2Integrand& f, const RandomOrthogonalMeasure& n, int level,
                              std::size_t paths, std::uint64_t seed, std::uint64_t first_stream = 0,
                              std::string functional = "f");

// ---------------------------------------------------------------------------
// Predictable simple processes against a time-type noise.

//! Read-only view of M on [0, cutoff]; reading later values raises
//! NonAdaptedCoefficient.
class PathView {
public:
  PathView(NoiseReplay& replay, double cutoff) : replay_(&replay), cutoff_(cutoff) {}
  double value_at(double t) const;
  double cutoff() const { return cutoff_; }

private:
  NoiseReplay* replay_;
  double cutoff_;
};

//! Deterministic time, or the first time on a grid of mesh dt at which M
//! leaves (lo, hi), capped at `cap`.
struct StoppingTime {
  enum class Kind { Deterministic, FirstExit };
  Kind kind = Kind::Deterministic;
  double t = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double dt = 0.0;

  static StoppingTime at(double t);
  static StoppingTime first_exit(double lo, double hi, double cap, double dt);
  double evaluate(NoiseReplay& replay) const;
};

//! sum_k phi_k 1_{]]from_k, to_k]]} with phi_k a function of the path up to from_k.
struct SimpleProcess {
  struct Term {
    std::function<double(const PathView&)> phi;
    StoppingTime from;
    StoppingTime to;
  };
  std::vector<Term> terms;
};

//! sum_k phi_k (M_{to_k} - M_{from_k}) on one replay.
double integrate_predictable(const SimpleProcess& f, NoiseReplay& replay);

} // namespace levytype
