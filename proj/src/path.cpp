#include "levytype/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace levytype {

CadlagPath::CadlagPath(std::vector<double> times, Mat values, std::vector<Jump> jumps,
                       double horizon, Interpolation interp)
    : times_(std::move(times)), values_(std::move(values)), jumps_(std::move(jumps)),
      horizon_(horizon), interp_(interp) {
  if (times_.empty() || static_cast<Eigen::Index>(times_.size()) != values_.cols()) {
    throw InvalidArgument("InvalidArgument", "path grid and values disagree in length");
  }
  jump_at_.assign(times_.size(), -1);
  for (std::size_t j = 0; j < jumps_.size(); ++j) {
    auto idx = grid_index(jumps_[j].time);
    if (!idx) {
      throw InvalidArgument("InvalidArgument", "jump time is not a grid point");
    }
    jump_at_[*idx] = static_cast<int>(j);
  }
}

std::optional<std::size_t> CadlagPath::grid_index(double t) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  double slack = 1e-12 * std::max(1.0, horizon_);
  if (it != times_.end() && std::abs(*it - t) <= slack) {
    return static_cast<std::size_t>(it - times_.begin());
  }
  if (it != times_.begin() && std::abs(*(it - 1) - t) <= slack) {
    return static_cast<std::size_t>(it - times_.begin() - 1);
  }
  return std::nullopt;
}

std::size_t CadlagPath::locate(double t) const {
  // last grid index with times_[i] <= t
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) {
    return 0;
  }
  return static_cast<std::size_t>(it - times_.begin() - 1);
}

Vec CadlagPath::left_limit_at_index(std::size_t i) const {
  int j = jump_at_[i];
  if (j < 0) {
    return values_.col(static_cast<Eigen::Index>(i));
  }
  return jumps_[static_cast<std::size_t>(j)].left_limit;
}

Vec CadlagPath::value_at(double t) const {
  if (auto idx = grid_index(t)) {
    return values_.col(static_cast<Eigen::Index>(*idx));
  }
  std::size_t i = locate(t);
  Vec v = values_.col(static_cast<Eigen::Index>(i));
  if (interp_ == Interpolation::Linear && i + 1 < times_.size()) {
    double w = (t - times_[i]) / (times_[i + 1] - times_[i]);
    v += w * (left_limit_at_index(i + 1) - v);
  }
  return v;
}

Vec CadlagPath::left_limit_at(double t) const {
  if (auto idx = grid_index(t)) {
    if (*idx == 0) {
      return values_.col(0);
    }
    return left_limit_at_index(*idx);
  }
  return value_at(t);
}

void CadlagPath::check_invariants(double tol) const {
  auto fail = [](const std::string& what) { throw std::logic_error("CadlagPath: " + what); };
  if (times_.front() != 0.0) {
    fail("grid does not start at 0");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      fail("grid is not strictly increasing at index " + std::to_string(i));
    }
  }
  if (times_.back() > horizon_ * (1.0 + 1e-12)) {
    fail("grid exceeds the horizon");
  }
  double prev = 0.0;
  for (const auto& j : jumps_) {
    if (!(j.time > 0.0) || j.time > horizon_ * (1.0 + 1e-12)) {
      fail("jump time outside (0, T]");
    }
    if (j.time < prev) {
      fail("jump ledger not sorted");
    }
    prev = j.time;
    if (j.size.norm() == 0.0) {
      fail("zero jump in ledger");
    }
    Vec right = value_at(j.time);
    double scale = std::max(1.0, right.cwiseAbs().maxCoeff());
    if ((right - (j.left_limit + j.size)).cwiseAbs().maxCoeff() > tol * scale) {
      fail("value at jump time differs from left limit + jump at t = " + std::to_string(j.time));
    }
  }
}

Ensemble Ensemble::from_paths(std::vector<CadlagPath> paths, std::uint64_t seed,
                              std::uint64_t first_stream) {
  if (paths.empty()) {
    throw EmptyEnsemble("ensemble has no samples");
  }
  Ensemble e;
  e.dim_ = paths.front().dim();
  e.horizon_ = paths.front().horizon();
  for (const auto& p : paths) {
    if (p.dim() != e.dim_ || std::abs(p.horizon() - e.horizon_) > 1e-12 * std::max(1.0, e.horizon_)) {
      throw DimensionMismatch("ensemble paths must share dimension and horizon");
    }
  }
  e.n_ = paths.size();
  e.paths_ = std::move(paths);
  e.seed_ = seed;
  e.first_stream_ = first_stream;
  return e;
}

Ensemble Ensemble::from_endpoints(Mat endpoints, double horizon, std::uint64_t seed,
                                  std::uint64_t first_stream) {
  if (endpoints.cols() == 0) {
    throw EmptyEnsemble("ensemble has no samples");
  }
  Ensemble e;
  e.dim_ = static_cast<int>(endpoints.rows());
  e.n_ = static_cast<std::size_t>(endpoints.cols());
  e.endpoints_ = std::move(endpoints);
  e.horizon_ = horizon;
  e.seed_ = seed;
  e.first_stream_ = first_stream;
  return e;
}

const std::vector<CadlagPath>& Ensemble::paths() const {
  if (paths_.empty()) {
    throw InvalidArgument("InvalidArgument", "ensemble carries endpoints only, not paths");
  }
  return paths_;
}

Mat Ensemble::values_at(double t) const {
  if (paths_.empty()) {
    if (std::abs(t - horizon_) > 1e-12 * std::max(1.0, horizon_)) {
      throw InvalidArgument("InvalidArgument", "endpoint ensemble only knows X at the horizon");
    }
    return endpoints_;
  }
  Mat out(dim_, static_cast<Eigen::Index>(n_));
  for (std::size_t k = 0; k < n_; ++k) {
    out.col(static_cast<Eigen::Index>(k)) = paths_[k].value_at(t);
  }
  return out;
}

} // namespace levytype
