#include "levytype/feller_symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "levytype/parallel.hpp"

namespace levytype {

namespace {

// c_d = 2 int (1 + |xi|^2) |u_hat(xi)| dxi for u = (1 - |x|^2)^4_+
constexpr double kMaximalConstant[] = {21.2989379821, 47.2954527807, 90.8464083217};

double op_norm(const Mat& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  if (m.rows() == 1 || m.cols() == 1) {
    return m.norm();
  }
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

std::vector<Vec> unit_directions(int d) {
  std::vector<Vec> dirs;
  for (int i = 0; i < d; ++i) {
    dirs.push_back(Vec::Unit(d, i));
    dirs.push_back(-Vec::Unit(d, i));
  }
  if (d > 1) {
    Vec diag = Vec::Ones(d) / std::sqrt(static_cast<double>(d));
    dirs.push_back(diag);
    dirs.push_back(-diag);
  }
  return dirs;
}

//! x together with points at fractions of r along the probe directions
std::vector<Vec> ball_probes(const Vec& x, double r) {
  std::vector<Vec> pts{x};
  for (const auto& u : unit_directions(static_cast<int>(x.size()))) {
    for (double f : {0.25, 0.5, 0.75, 1.0}) {
      pts.push_back(x + f * r * u);
    }
  }
  return pts;
}

//! nonzero points of the ball |xi| <= radius
std::vector<Vec> xi_ball_probes(int d, double radius) {
  std::vector<Vec> pts;
  for (const auto& u : unit_directions(d)) {
    for (int k = 1; k <= 16; ++k) {
      pts.push_back((radius * k / 16.0) * u);
    }
  }
  return pts;
}

struct Fit {
  double slope;
  double intercept;
  double residual;
  double local_lo;
  double local_hi;
};

Fit loglog_fit(const std::vector<double>& r, const std::vector<double>& v) {
  const std::size_t m = r.size();
  std::vector<double> lx(m);
  std::vector<double> ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
      throw SlopeUnresolved("symbol functional is not positive and finite at |xi| = " +
                            std::to_string(r[i]));
    }
    lx[i] = std::log(r[i]);
    ly[i] = std::log(v[i]);
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  Fit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double e = ly[i] - (f.intercept + f.slope * lx[i]);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / static_cast<double>(m));
  f.local_lo = std::numeric_limits<double>::infinity();
  f.local_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < m; ++i) {
    double s = (ly[i] - ly[i - 1]) / (lx[i] - lx[i - 1]);
    f.local_lo = std::min(f.local_lo, s);
    f.local_hi = std::max(f.local_hi, s);
  }
  return f;
}

} // namespace

// ---------------------------------------------------------------------------

StateSymbol StateSymbol::from_exponent(CharacteristicExponent psi) {
  StateSymbol q;
  q.dim = psi.dim();
  q.label = psi.label();
  q.closed_form = [psi = std::move(psi)](const Vec&, const Vec& xi) { return psi(xi); };
  return q;
}

StateSymbol StateSymbol::from_triplet(const LevyTriplet& triplet) {
  StateSymbol q = from_exponent(CharacteristicExponent::of(triplet));
  q.triplet_at = [triplet](const Vec&) { return triplet; };
  q.bounded_coefficients = true;
  return q;
}

StateSymbol StateSymbol::stable_like(std::function<double(const Vec&)> alpha) {
  StateSymbol q;
  q.dim = 1;
  q.label = "stable_like";
  q.stable_alpha = alpha;
  q.closed_form = [alpha](const Vec& x, const Vec& xi) {
    double a = alpha(x);
    if (!(a > 0.0 && a <= 2.0)) {
      throw InvalidAlpha("alpha(x) must lie in (0, 2], got " + std::to_string(a));
    }
    return Complex(std::pow(xi.norm(), a), 0.0);
  };
  q.triplet_at = [alpha](const Vec& x) {
    double a = alpha(x);
    if (a == 2.0) {
      return catalog::brownian(1, std::sqrt(2.0));
    }
    return catalog::symmetric_stable(a, 1.0);
  };
  q.bounded_coefficients = true;
  return q;
}

StateSymbol StateSymbol::stable_like_sine() {
  StateSymbol q = stable_like([](const Vec& x) { return std::clamp(1.0 + 0.5 * std::sin(x(0)), 0.6, 1.9); });
  q.label = "stable_like_sine";
  return q;
}

LevyTriplet StateSymbol::triplet(const Vec& x) const {
  if (!triplet_at) {
    throw InvalidArgument("InvalidArgument", "symbol has no triplet representation");
  }
  LevyTriplet t = triplet_at(x);
  require_same_dim(t.dim(), dim, "triplet");
  return t;
}

double StateSymbol::coefficient_bound(const std::vector<Vec>& probes) const {
  double sup = 0.0;
  for (const auto& x : probes) {
    LevyTriplet t = triplet(x);
    double v = q0(x) + t.drift().norm() + op_norm(t.diffusion()) + t.nu().bounded_moment();
    sup = std::max(sup, v);
  }
  return sup;
}

Complex eval_symbol(const StateSymbol& q, const Vec& x, const Vec& xi) {
  require_same_dim(x.size(), q.dim, "x");
  require_same_dim(xi.size(), q.dim, "xi");
  if (!x.allFinite() || !xi.allFinite()) {
    throw InvalidArgument("InvalidArgument", "x and xi must be finite");
  }
  const double k = q.q0(x);
  if (k < 0.0) {
    throw InvalidTriplet("killing term q(x, 0) must be >= 0");
  }
  if (q.closed_form) {
    return k + q.closed_form(x, xi);
  }
  return k + eval_exponent(q.triplet(x), xi);
}

// ---------------------------------------------------------------------------

void SdeSpec::validate(double probe_radius) const {
  if (!phi) {
    throw InvalidArgument("InvalidArgument", "coefficient field is missing");
  }
  require_same_dim(x0.size(), state_dim, "x0");
  const int n = driver.dim();
  auto eval = [&](const Vec& x) {
    Mat m = phi(x);
    if (m.rows() != state_dim || m.cols() != n) {
      throw DimensionMismatch("coefficient field must return a " + std::to_string(state_dim) + "x" +
                              std::to_string(n) + " matrix");
    }
    if (!m.allFinite()) {
      throw LipschitzViolation("coefficient field is not finite at a probe point");
    }
    return m;
  };
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) {
    throw LipschitzViolation("declared Lipschitz constant must be finite and >= 0");
  }
  constexpr int kSteps = 40;
  const std::vector<double> local_steps = {1e-3, 1e-1};
  for (int i = 0; i < state_dim; ++i) {
    Vec e = Vec::Unit(state_dim, i);
    Vec prev_x = x0 - probe_radius * e;
    Mat prev = eval(prev_x);
    for (int k = 1; k <= kSteps; ++k) {
      Vec x = x0 + probe_radius * (2.0 * k / kSteps - 1.0) * e;
      Mat cur = eval(x);
      auto check = [&](const Mat& a, const Mat& b, double dist, const Vec& where) {
        double slope = op_norm(a - b) / dist;
        if (slope > lipschitz + 1e-6) {
          throw LipschitzViolation("finite-difference slope " + std::to_string(slope) +
                                   " exceeds the declared constant " + std::to_string(lipschitz) +
                                   " near x = " + std::to_string(where(0)));
        }
      };
      check(cur, prev, (x - prev_x).norm(), x);
      for (double h : local_steps) {
        check(eval(x + h * e), cur, h, x);
      }
      prev = std::move(cur);
      prev_x = x;
    }
  }
}

SdeSampler::SdeSampler(const SdeSpec& spec, double eps, double dt, LevyItoOptions options)
    : DrivenSampler(spec.driver, spec.state_dim, spec.phi, eps, dt, options) {
  spec.validate();
}

CadlagPath sde_euler(const SdeSpec& spec, double eps, double grid_dt, double T, RandomSource& rng) {
  if (!(grid_dt > 0.0)) {
    throw InvalidArgument("InvalidArgument", "grid_dt must be > 0");
  }
  SdeSampler sampler(spec, eps, grid_dt);
  return sampler.sample_path(spec.x0, T, rng);
}

Complex sde_symbol(const SdeSpec& spec, const Vec& x, const Vec& xi) {
  require_same_dim(xi.size(), spec.state_dim, "xi");
  Mat m = spec.phi(x);
  return eval_exponent(spec.driver, m.transpose() * xi);
}

StateSymbol sde_state_symbol(const SdeSpec& spec) {
  StateSymbol q;
  q.dim = spec.state_dim;
  q.label = "sde";
  auto psi = CharacteristicExponent::of(spec.driver);
  auto phi = spec.phi;
  q.closed_form = [psi, phi](const Vec& x, const Vec& xi) {
    return psi(Vec(phi(x).transpose() * xi));
  };
  return q;
}

// ---------------------------------------------------------------------------

SymbolEstimate estimate_symbol(const ProcessSampler& sampler, const Vec& x, const Vec& xi,
                               std::vector<double> t_grid, double r, std::size_t n,
                               std::uint64_t seed, std::uint64_t first_stream) {
  require_same_dim(x.size(), sampler.dim(), "x");
  require_same_dim(xi.size(), sampler.dim(), "xi");
  if (!(r > 0.0)) {
    throw InvalidArgument("InvalidArgument", "localization radius must be > 0");
  }
  if (t_grid.size() < 2) {
    throw InvalidArgument("InvalidArgument", "need at least two times for the extrapolation");
  }
  if (n < 2) {
    throw EmptyEnsemble("need at least two paths");
  }
  std::sort(t_grid.begin(), t_grid.end());
  if (!(t_grid.front() > 0.0)) {
    throw InvalidArgument("InvalidArgument", "times must be > 0");
  }
  for (std::size_t j = 1; j < t_grid.size(); ++j) {
    if (!(t_grid[j] > t_grid[j - 1])) {
      throw InvalidArgument("InvalidArgument", "times must be distinct");
    }
  }
  const std::size_t m = t_grid.size();
  // least-squares weights for intercept and slope of y = a + b t
  double st = 0.0;
  double stt = 0.0;
  for (double t : t_grid) {
    st += t;
    stt += t * t;
  }
  const double md = static_cast<double>(m);
  const double det = md * stt - st * st;
  std::vector<double> wa(m);
  std::vector<double> wb(m);
  for (std::size_t j = 0; j < m; ++j) {
    wa[j] = (stt - t_grid[j] * st) / det;
    wb[j] = (md * t_grid[j] - st) / det;
  }

  std::vector<Complex> per_point(n * m);
  std::vector<unsigned char> exited(n * m);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(seed, first_stream + k);
    StoppedSample s = sampler.sample_stopped(x, t_grid, r, rng);
    for (std::size_t j = 0; j < m; ++j) {
      double ph = xi.dot(s.observed[j] - x);
      per_point[k * m + j] = (1.0 - std::exp(Complex(0.0, ph))) / t_grid[j];
      exited[k * m + j] = s.exited && s.tau < t_grid[j];
    }
  });

  SymbolEstimate out;
  out.n = n;
  out.points.resize(m);
  const double nd = static_cast<double>(n);
  for (std::size_t j = 0; j < m; ++j) {
    Complex mean{};
    double ex = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      mean += per_point[k * m + j];
      ex += exited[k * m + j];
    }
    mean /= nd;
    double var = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      var += std::norm(per_point[k * m + j] - mean);
    }
    out.points[j] = {t_grid[j], mean, std::sqrt(var / (nd - 1.0) / nd), ex / nd};
  }
  if (out.points.front().exit_fraction > 0.5) {
    throw ExitDominates("P(tau_r < t_min) = " + std::to_string(out.points.front().exit_fraction) +
                        " > 0.5; increase r or shrink the time grid");
  }
  std::vector<Complex> a(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      a[k] += wa[j] * per_point[k * m + j];
      out.slope += wb[j] * per_point[k * m + j];
    }
    out.q_hat += a[k];
  }
  out.q_hat /= nd;
  out.slope /= nd;
  double var = 0.0;
  for (const auto& v : a) {
    var += std::norm(v - out.q_hat);
  }
  out.se = std::sqrt(var / (nd - 1.0) / nd);
  return out;
}

// ---------------------------------------------------------------------------

IndexEstimate indices_at_infinity(const StateSymbol& q, const Vec& x, double xi_max, int points,
                                  double xi_min) {
  require_same_dim(x.size(), q.dim, "x");
  if (!(xi_max > xi_min && xi_min > 0.0) || points < 3) {
    throw InvalidArgument("InvalidArgument", "need 0 < xi_min < xi_max and at least 3 points");
  }
  IndexEstimate out;
  const double lmin = std::log(xi_min);
  const double lmax = std::log(xi_max);
  for (int i = 0; i < points; ++i) {
    double R = std::exp(lmin + (lmax - lmin) * i / (points - 1));
    auto ys = ball_probes(x, 1.0 / R);
    auto etas = xi_ball_probes(q.dim, R);
    double sup_all = 0.0;
    double inf_y = std::numeric_limits<double>::infinity();
    for (const auto& y : ys) {
      double sup_eta = 0.0;
      for (const auto& eta : etas) {
        sup_eta = std::max(sup_eta, std::abs(eval_symbol(q, y, eta)));
      }
      sup_all = std::max(sup_all, sup_eta);
      inf_y = std::min(inf_y, sup_eta);
    }
    out.radii.push_back(R);
    out.sup_values.push_back(sup_all);
    out.inf_values.push_back(inf_y);
  }
  Fit fb = loglog_fit(out.radii, out.sup_values);
  Fit fd = loglog_fit(out.radii, out.inf_values);
  out.beta = fb.slope;
  out.delta = fd.slope;
  out.beta_lo = fb.local_lo;
  out.beta_hi = fb.local_hi;
  out.delta_lo = fd.local_lo;
  out.delta_hi = fd.local_hi;
  out.beta_residual = fb.residual;
  out.delta_residual = fd.residual;
  if (fb.residual > 0.05 || fd.residual > 0.05) {
    throw SlopeUnresolved("log-log fit residual " + std::to_string(std::max(fb.residual, fd.residual)) +
                          " exceeds 0.05");
  }
  if (out.delta > out.beta + 0.02) {
    throw SlopeUnresolved("estimated delta " + std::to_string(out.delta) + " exceeds beta " +
                          std::to_string(out.beta));
  }
  return out;
}

double maximal_constant(int dim) {
  if (dim < 1 || dim > 3) {
    throw InvalidArgument("InvalidArgument", "maximal-inequality constant is tabulated for d <= 3");
  }
  return kMaximalConstant[dim - 1];
}

double symbol_sup(const StateSymbol& q, const Vec& x, double r, double k) {
  double sup = 0.0;
  for (const auto& y : ball_probes(x, r)) {
    for (const auto& xi : xi_ball_probes(q.dim, k / r)) {
      sup = std::max(sup, std::abs(eval_symbol(q, y, xi)));
    }
  }
  return sup;
}

double symbol_sup_inf(const StateSymbol& q, const Vec& x, double r, double k) {
  double sup = 0.0;
  auto ys = ball_probes(x, r);
  for (const auto& xi : xi_ball_probes(q.dim, k / r)) {
    double inf = std::numeric_limits<double>::infinity();
    for (const auto& y : ys) {
      inf = std::min(inf, std::abs(eval_symbol(q, y, xi)));
    }
    sup = std::max(sup, inf);
  }
  return sup;
}

double maximal_bound(const StateSymbol& q, const Vec& x, double r, double expected_tau) {
  if (!(r > 0.0) || !(expected_tau >= 0.0)) {
    throw InvalidArgument("InvalidArgument", "need r > 0 and E tau >= 0");
  }
  return maximal_constant(q.dim) * expected_tau * symbol_sup(q, x, r);
}

SectorReport sector_check(const StateSymbol& q, const std::vector<Vec>& x_probes,
                          const std::vector<Vec>& xi_probes, double cap) {
  SectorReport out;
  for (const auto& x : x_probes) {
    for (const auto& xi : xi_probes) {
      if (xi.norm() == 0.0) {
        throw InvalidArgument("InvalidArgument", "sector probes must avoid xi = 0");
      }
      Complex v = eval_symbol(q, x, xi);
      double ratio;
      if (v.real() > 0.0) {
        ratio = std::abs(v.imag()) / v.real();
      } else {
        ratio = v.imag() == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      }
      out.kappa = std::max(out.kappa, ratio);
    }
  }
  out.pass = std::isfinite(out.kappa) && out.kappa <= cap;
  return out;
}

std::vector<Vec> default_xi_probes(int dim) {
  std::vector<Vec> pts;
  for (const auto& u : unit_directions(dim)) {
    for (int k = 0; k <= 36; ++k) {
      pts.push_back(std::pow(10.0, -3.0 + k * 0.25) * u);
    }
  }
  return pts;
}

ExitTimeReport mean_exit_time(const ProcessSampler& sampler, const StateSymbol& q, const Vec& x,
                              double r, std::size_t n, double time_cap, std::uint64_t seed,
                              std::uint64_t first_stream) {
  require_same_dim(x.size(), sampler.dim(), "x");
  if (!(r > 0.0) || !(time_cap > 0.0)) {
    throw InvalidArgument("InvalidArgument", "need r > 0 and time_cap > 0");
  }
  if (n < 2) {
    throw EmptyEnsemble("need at least two paths");
  }
  std::vector<double> tau(n);
  std::vector<unsigned char> censored(n);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(seed, first_stream + k);
    StoppedSample s = sampler.sample_stopped(x, {time_cap}, r, rng);
    tau[k] = s.exited ? s.tau : time_cap;
    censored[k] = !s.exited;
  });
  ExitTimeReport out;
  out.n = n;
  const double nd = static_cast<double>(n);
  double cens = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out.mean_tau += tau[k];
    cens += censored[k];
  }
  out.censored_fraction = cens / nd;
  if (out.censored_fraction > 0.01) {
    throw Censored(std::to_string(100.0 * out.censored_fraction) +
                   "% of paths did not exit before the time cap");
  }
  out.mean_tau /= nd;
  double var = 0.0;
  for (double t : tau) {
    var += (t - out.mean_tau) * (t - out.mean_tau);
  }
  out.se = std::sqrt(var / (nd - 1.0) / nd);

  out.lower = 1.0 / (maximal_constant(q.dim) * symbol_sup(q, x, r));
  const double kstar = std::acos(std::sqrt(2.0 / 3.0));
  std::vector<Vec> xs = ball_probes(x, r);
  std::vector<Vec> xis;
  for (const auto& u : unit_directions(q.dim)) {
    for (int k = 1; k <= 16; ++k) {
      xis.push_back((kstar / r * k / 16.0) * u);
    }
  }
  out.kappa = sector_check(q, xs, xis, std::numeric_limits<double>::infinity()).kappa;
  const double denom = std::cos(kstar) - out.kappa * std::sin(kstar);
  const double s = symbol_sup_inf(q, x, r, kstar);
  out.upper = denom > 0.0 && s > 0.0 ? 2.0 * std::sqrt(1.0 + out.kappa * out.kappa) / (denom * s)
                                     : std::numeric_limits<double>::infinity();
  return out;
}

ExceedanceReport maximal_check(const ProcessSampler& sampler, const StateSymbol& q, const Vec& x,
                               double r, double t, std::size_t n, std::uint64_t seed,
                               std::uint64_t first_stream) {
  require_same_dim(x.size(), sampler.dim(), "x");
  if (n < 2) {
    throw EmptyEnsemble("need at least two paths");
  }
  std::vector<unsigned char> hit(n);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(seed, first_stream + k);
    hit[k] = sampler.sample_stopped(x, {t}, r, rng).exited;
  });
  ExceedanceReport out;
  out.n = n;
  double c = 0.0;
  for (auto h : hit) {
    c += h;
  }
  const double nd = static_cast<double>(n);
  out.frequency = c / nd;
  out.se = std::sqrt(out.frequency * (1.0 - out.frequency) / nd);
  out.bound = maximal_bound(q, x, r, t);
  out.pass = out.frequency <= out.bound;
  return out;
}

} // namespace levytype
