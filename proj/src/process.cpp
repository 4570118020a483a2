#include "levytype/process.hpp"

#include <algorithm>
#include <cmath>

namespace levytype {

namespace {

void check_times(const std::vector<double>& times) {
  if (times.empty()) {
    throw InvalidArgument("InvalidArgument", "need at least one observation time");
  }
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev) && !(t == prev && prev > 0.0)) {
      throw InvalidArgument("InvalidArgument", "observation times must be > 0 and ascending");
    }
    prev = t;
  }
}

} // namespace

Vec ProcessSampler::sample_endpoint(const Vec& x0, double T, RandomSource& rng) const {
  return sample_stopped(x0, {T}, std::numeric_limits<double>::infinity(), rng).final_position;
}

// ---------------------------------------------------------------------------

DrivenSampler::DrivenSampler(LevyTriplet driver, int state_dim, CoefficientField phi, double eps,
                             double dt, LevyItoOptions options)
    : driver_(std::move(driver), eps, options), state_dim_(state_dim), phi_(std::move(phi)), dt_(dt) {
  if (!(dt > 0.0)) {
    throw InvalidArgument("InvalidArgument", "time step must be > 0");
  }
  if (!phi_) {
    require_same_dim(state_dim, driver_.dim(), "state and driver");
  }
}

Vec DrivenSampler::apply(const Vec& x, const Vec& dl) const {
  if (!phi_) {
    return x + dl;
  }
  Mat m = phi_(x);
  if (m.rows() != state_dim_ || m.cols() != driver_.dim()) {
    throw DimensionMismatch("coefficient field returned a " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " matrix");
  }
  return x + m * dl;
}

void DrivenSampler::guard(const Vec& x, double t) const {
  if (!x.allFinite() || x.norm() > kBlowup) {
    throw Blowup("|X| exceeded 1e12 at t = " + std::to_string(t));
  }
}

Vec DrivenSampler::sample_endpoint(const Vec& x0, double T, RandomSource& rng) const {
  require_same_dim(x0.size(), state_dim_, "start point");
  if (!phi_) {
    // one Gaussian step is exact for a Lévy process
    return driver_.sample(T, T, rng, &x0).path.end();
  }
  return ProcessSampler::sample_endpoint(x0, T, rng);
}

StoppedSample DrivenSampler::sample_stopped(const Vec& x0, const std::vector<double>& times,
                                            double radius, RandomSource& rng,
                                            const StateFunctional* running) const {
  require_same_dim(x0.size(), state_dim_, "start point");
  check_times(times);
  const bool stopping = std::isfinite(radius);
  if (stopping && !(radius > 0.0)) {
    throw InvalidArgument("InvalidArgument", "exit radius must be > 0");
  }
  const double horizon = times.back();
  const double tol = 1e-11 * std::max(1.0, horizon);
  const bool bridge = stopping && state_dim_ == 1 && driver_.has_diffusion();
  const double block_len = stopping ? 256.0 * dt_ : horizon;

  StoppedSample out;
  out.observed.reserve(times.size());
  Vec x = x0;
  std::size_t next_obs = 0;
  double t0 = 0.0;

  auto finish_exit = [&](double tau, const Vec& pos) {
    out.exited = true;
    out.tau = tau;
    out.final_position = pos;
    while (next_obs < times.size()) {
      out.observed.push_back(pos);
      ++next_obs;
    }
    return out;
  };

  while (horizon - t0 > tol) {
    double len = std::min(block_len, horizon - t0);
    if (horizon - t0 - len < tol) {
      len = horizon - t0;
    }
    std::vector<double> extra;
    for (std::size_t k = next_obs; k < times.size() && times[k] <= t0 + len + tol; ++k) {
      extra.push_back(std::min(times[k] - t0, len));
    }
    LevyItoPath blk = driver_.sample(len, dt_, rng, nullptr, extra);
    const auto& grid = blk.path.times();
    const auto& jumps = blk.path.jumps();
    std::size_t jn = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double s0 = grid[i - 1];
      const double s1 = grid[i];
      const double h = s1 - s0;
      const double g = running ? (*running)(x) : 0.0;
      if (running) {
        out.running_integral += g * h;
      }
      Vec dl = blk.continuous.col(static_cast<Eigen::Index>(i)) -
               blk.continuous.col(static_cast<Eigen::Index>(i - 1));
      Vec xc = apply(x, dl);
      if (stopping) {
        if (bridge) {
          double s = phi_ ? (phi_(x) * driver_.sqrt_diffusion()).row(0).norm()
                          : driver_.sqrt_diffusion().row(0).norm();
          double a = x(0) - x0(0);
          double c = xc(0) - x0(0);
          if (s > 0.0 && std::abs(c) < radius) {
            double var = s * s * h;
            double p_up = std::exp(-2.0 * (radius - a) * (radius - c) / var);
            double p_lo = std::exp(-2.0 * (radius + a) * (radius + c) / var);
            double u = rng.uniform();
            if (u < p_up + p_lo) {
              if (running) {
                out.running_integral -= 0.5 * g * h;
              }
              Vec pos = x0;
              pos(0) += u < p_up ? radius : -radius;
              return finish_exit(t0 + s0 + 0.5 * h, pos);
            }
          }
        }
        if ((xc - x0).norm() >= radius) {
          // a continuous crossing leaves on the sphere, not at the overshoot
          Vec u = xc - x0;
          if (running) {
            out.running_integral -= 0.5 * g * h;
          }
          return finish_exit(t0 + s0 + 0.5 * h, Vec(x0 + radius * u / u.norm()));
        }
      }
      x = std::move(xc);
      while (jn < jumps.size() && jumps[jn].time == s1) {
        x = apply(x, jumps[jn].size);
        ++jn;
        if (phi_) {
          guard(x, t0 + s1);
        }
        if (stopping && (x - x0).norm() >= radius) {
          return finish_exit(t0 + s1, x);
        }
      }
      if (phi_) {
        guard(x, t0 + s1);
      }
      while (next_obs < times.size() && std::abs(times[next_obs] - (t0 + s1)) <= tol) {
        out.observed.push_back(x);
        ++next_obs;
      }
    }
    t0 += len;
  }
  while (next_obs < times.size()) {
    out.observed.push_back(x);
    ++next_obs;
  }
  out.final_position = x;
  return out;
}

CadlagPath DrivenSampler::sample_path(const Vec& x0, double T, RandomSource& rng) const {
  require_same_dim(x0.size(), state_dim_, "start point");
  if (!phi_) {
    return driver_.sample(T, dt_, rng, &x0).path;
  }
  LevyItoPath blk = driver_.sample(T, dt_, rng);
  const auto& grid = blk.path.times();
  const auto& driver_jumps = blk.path.jumps();
  Mat values(state_dim_, static_cast<Eigen::Index>(grid.size()));
  values.col(0) = x0;
  std::vector<Jump> jumps;
  Vec x = x0;
  std::size_t jn = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    Vec dl = blk.continuous.col(static_cast<Eigen::Index>(i)) -
             blk.continuous.col(static_cast<Eigen::Index>(i - 1));
    x = apply(x, dl);
    guard(x, grid[i]);
    while (jn < driver_jumps.size() && driver_jumps[jn].time == grid[i]) {
      Vec left = x;
      x = apply(left, driver_jumps[jn].size);
      guard(x, grid[i]);
      Vec dx = x - left;
      if (dx.norm() > 0.0) {
        if (!jumps.empty() && jumps.back().time == grid[i]) {
          jumps.back().size += dx;
        } else {
          jumps.push_back({grid[i], dx, left});
        }
      }
      ++jn;
    }
    values.col(static_cast<Eigen::Index>(i)) = x;
  }
  auto interp = blk.path.interpolation();
  return {grid, std::move(values), std::move(jumps), T, interp};
}

// ---------------------------------------------------------------------------

LevySampler::LevySampler(LevyTriplet triplet, double eps, double dt, LevyItoOptions options)
    : DrivenSampler(triplet, triplet.dim(), {}, eps, dt, options) {}

std::optional<CharacteristicExponent> LevySampler::exponent() const {
  return CharacteristicExponent::of(driver().triplet().truncated(driver().eps()));
}

// ---------------------------------------------------------------------------

StoppedSample FrozenSampler::sample_stopped(const Vec& x0, const std::vector<double>& times,
                                            double radius, RandomSource&,
                                            const StateFunctional* running) const {
  require_same_dim(x0.size(), dim_, "start point");
  check_times(times);
  (void)radius;
  StoppedSample out;
  out.observed.assign(times.size(), x0);
  out.final_position = x0;
  if (running) {
    out.running_integral = (*running)(x0) * times.back();
  }
  return out;
}

CadlagPath FrozenSampler::sample_path(const Vec& x0, double T, RandomSource&) const {
  Mat values(dim_, 2);
  values.col(0) = x0;
  values.col(1) = x0;
  return {{0.0, T}, std::move(values), {}, T, CadlagPath::Interpolation::Step};
}

std::optional<CharacteristicExponent> FrozenSampler::exponent() const {
  return CharacteristicExponent(dim_, [](const Vec&) { return Complex{}; }, true, "zero");
}

} // namespace levytype
