#pragma once

#include <functional>
#include <string>
#include <vector>

#include "levytype/levy_core.hpp"
#include "levytype/path.hpp"
#include "levytype/random.hpp"

namespace levytype {

//! A sampleable jump distribution mu on R^d, optionally with its
//! characteristic function E exp(i xi.H).
struct JumpLaw {
  int dim = 1;
  std::function<Vec(RandomSource&)> sample;
  std::function<Complex(const Vec&)> cf;
  std::string label;

  static JumpLaw dirac(Vec point);
  //! N(mean, sd^2) on R
  static JumpLaw normal(double mean, double sd);
  //! uniform on {-1, +1}
  static JumpLaw rademacher();
  //! atoms with masses normalised to probabilities
  static JumpLaw discrete(std::vector<Atom> atoms);
};

//! Poisson counting process: unit jumps at partial sums of Exp(lambda).
CadlagPath sample_poisson_process(double lambda, double T, RandomSource& rng);

//! C_t = sum_{k <= N_t} H_k with H_k ~ law, N a Poisson(lambda) process.
CadlagPath sample_compound_poisson(double lambda, const JumpLaw& law, double T,
                                   RandomSource& rng);

//! Brownian motion on [0, 1] by midpoint refinement down to mesh 2^-levels.
//! If `displacements` is given, entry n holds the 2^n Gaussian midpoint
//! displacements drawn at refinement step n.
CadlagPath sample_brownian_levy(int levels, RandomSource& rng,
                                std::vector<std::vector<double>>* displacements = nullptr);

struct LevyItoOptions {
  //! MassOverflow when nu{|y| >= eps} * T exceeds this many expected jumps
  double jump_budget = 1e7;
  //! large-jump shells stop once the remaining mass is below this
  double tail_mass_tol = 1e-13;
};

struct LevyItoPath {
  CadlagPath path;
  //! x0 + (l - compensator) t + sqrt(Q) W_t on the path grid
  Mat continuous;
  //! T * int_{|y| < eps} |y|^2 nu(dy)
  double truncation_bound = 0.0;
};

//! Lévy-Itô construction for a fixed triplet and small-jump cutoff eps.
//!
//! Jumps with |y| >= eps are grouped into cells: annuli [1/(n+1), 1/n) below
//! 1 (the last one cut at eps) and dyadic shells above 1. Each cell is a
//! compound Poisson process; all of them are drawn at once as one Poisson
//! stream whose marks pick the cell. Cells below 1 are compensated
//! by their mean, applied as a linear drift.
class LevyItoSampler {
public:
  LevyItoSampler(LevyTriplet triplet, double eps, LevyItoOptions options = {});

  //! Path on [0, T] from x0 (default 0); the grid is {k grid_dt} together with
  //! T, `extra_times` and every jump time.
  LevyItoPath sample(double T, double grid_dt, RandomSource& rng, const Vec* x0 = nullptr,
                     const std::vector<double>& extra_times = {}) const;

  //! One jump drawn from nu restricted to {|y| >= eps}, normalised.
  Vec sample_jump(RandomSource& rng) const;

  const LevyTriplet& triplet() const { return triplet_; }
  int dim() const { return triplet_.dim(); }
  double eps() const { return eps_; }
  //! nu{|y| >= eps} (minus the dropped far tail)
  double jump_rate() const { return rate_; }
  //! int_{eps <= |y| < 1} y nu(dy)
  const Vec& compensator() const { return compensator_; }
  //! l - compensator
  const Vec& effective_drift() const { return drift_; }
  const Mat& sqrt_diffusion() const { return sqrt_q_; }
  bool has_diffusion() const { return has_diffusion_; }
  //! int_{|y| < eps} |y|^2 nu(dy)
  double small_jump_second_moment() const { return small_second_moment_; }
  //! mass beyond the last large-jump shell, left out of the sampler
  double dropped_tail_mass() const { return dropped_tail_; }
  std::size_t cell_count() const { return cells_.size(); }
  //! psi of the truncated triplet (l, Q, nu|_{|y| >= eps})
  Complex truncated_exponent(const Vec& xi) const;

private:
  struct Cell {
    double lo = 0.0;
    double hi = 0.0;
    double mass = 0.0;
    int atom = -1;     // FiniteAtomic: index of the atom
    double beta = 0.0; // exact power law r^-beta when power_law
    bool power_law = false;
    std::vector<double> sub_cum; // sub-cell cumulative masses (generic density)
    std::vector<double> sub_env; // rejection envelope per sub-cell
  };

  void build_atomic();
  void build_polar();
  void add_polar_cell(double lo, double hi);
  double sample_radius(const Cell& c, RandomSource& rng) const;

  LevyTriplet triplet_;
  LevyTriplet truncated_;
  double eps_;
  LevyItoOptions options_;
  std::vector<Cell> cells_;
  std::vector<double> cell_cum_;
  std::vector<double> direction_cum_;
  double rate_ = 0.0;
  double dropped_tail_ = 0.0;
  double small_second_moment_ = 0.0;
  Vec compensator_;
  Vec drift_;
  Mat sqrt_q_;
  bool has_diffusion_ = false;
  bool power_law_ = false;
  double power_beta_ = 0.0;
};

LevyItoPath sample_levy_ito(const LevyTriplet& triplet, double eps, double T, double grid_dt,
                            RandomSource& rng, LevyItoOptions options = {});

//! Random series X_t = sum_{k <= n} (J_k 1{U_k <= t} - t c_k) on [0, 1] with
//! J_k = H(Gamma_k, V_k), Gamma_k the arrival times of a unit Poisson process.
//! H must eventually decrease in |H| as r grows; that requirement is the
//! caller's.
struct SeriesSpec {
  int dim = 1;
  std::function<Vec(double r, const Vec& v)> H;
  std::function<Vec(RandomSource&)> sample_v;
  //! c_k for k = 1, 2, ...; empty means all zero
  std::function<Vec(std::size_t k)> c;
  //! TailNotResolved if Gamma_n ends below this radius
  double resolution_radius = 0.0;
};

struct SeriesPath {
  CadlagPath path;
  double gamma_last = 0.0;
  std::size_t n_terms = 0;
};

SeriesPath sample_series(const SeriesSpec& spec, std::size_t n_terms, RandomSource& rng);

} // namespace levytype
