#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "levytype/types.hpp"

namespace levytype {

struct Jump {
  double time = 0.0;
  Vec size;
  //! X_{t-} at the jump time
  Vec left_limit;
};

//! Right-continuous path on a finite grid with an explicit jump ledger.
//!
//! Between grid points the path is either constant (Step) or linear up to
//! the left limit at the next grid point (Linear). Jump times are always grid
//! points, and the value stored there is the right limit.
class CadlagPath {
public:
  enum class Interpolation { Step, Linear };

  CadlagPath() = default;
  CadlagPath(std::vector<double> times, Mat values, std::vector<Jump> jumps, double horizon,
             Interpolation interp);

  int dim() const { return static_cast<int>(values_.rows()); }
  double horizon() const { return horizon_; }
  Interpolation interpolation() const { return interp_; }
  const std::vector<double>& times() const { return times_; }
  const Mat& values() const { return values_; }
  const std::vector<Jump>& jumps() const { return jumps_; }
  std::size_t size() const { return times_.size(); }

  Vec start() const { return values_.col(0); }
  Vec end() const { return values_.col(values_.cols() - 1); }

  //! X_t (right limit) for t in [0, T].
  Vec value_at(double t) const;
  //! X_{t-}; equals X_0 at t = 0.
  Vec left_limit_at(double t) const;
  //! Index of the grid point equal to t (within 1e-12 T), if any.
  std::optional<std::size_t> grid_index(double t) const;

  //! Throws std::logic_error describing the first violated invariant.
  void check_invariants(double tol = 1e-12) const;

private:
  std::size_t locate(double t) const;
  Vec left_limit_at_index(std::size_t i) const;

  std::vector<double> times_;
  Mat values_;
  std::vector<Jump> jumps_;
  std::vector<int> jump_at_; // grid index -> jump index or -1
  double horizon_ = 0.0;
  Interpolation interp_ = Interpolation::Step;
};

//! i.i.d. samples (paths or endpoints) together with their seed provenance:
//! sample k was drawn from RandomSource(seed, first_stream + k).
class Ensemble {
public:
  static Ensemble from_paths(std::vector<CadlagPath> paths, std::uint64_t seed,
                             std::uint64_t first_stream);
  static Ensemble from_endpoints(Mat endpoints, double horizon, std::uint64_t seed,
                                 std::uint64_t first_stream);

  std::size_t size() const { return n_; }
  int dim() const { return dim_; }
  double horizon() const { return horizon_; }
  bool has_paths() const { return !paths_.empty(); }
  const std::vector<CadlagPath>& paths() const;
  std::uint64_t seed() const { return seed_; }
  std::uint64_t first_stream() const { return first_stream_; }

  //! d x n matrix of X_t over the ensemble (t = horizon for endpoint ensembles).
  Mat values_at(double t) const;
  Mat endpoints() const { return values_at(horizon_); }

private:
  std::vector<CadlagPath> paths_;
  Mat endpoints_;
  std::size_t n_ = 0;
  int dim_ = 0;
  double horizon_ = 0.0;
  std::uint64_t seed_ = 0;
  std::uint64_t first_stream_ = 0;
};

} // namespace levytype
