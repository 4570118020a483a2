#include "levytype/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levytype/quadrature.hpp"

namespace levytype {

namespace {

void require_rate(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidRate("rate must be finite and > 0, got " + std::to_string(lambda));
  }
}

void require_horizon(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw InvalidArgument("InvalidArgument", "horizon T must be finite and > 0");
  }
}

// merges sorted-or-not time points into a strictly increasing grid on [0, T]
std::vector<double> merge_grid(std::vector<double> pts, double T) {
  pts.push_back(0.0);
  pts.push_back(T);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  out.reserve(pts.size());
  const double slack = 1e-12 * std::max(1.0, T);
  for (double t : pts) {
    if (t < 0.0 || t > T + slack) {
      continue;
    }
    if (out.empty() || t - out.back() > slack) {
      out.push_back(std::min(t, T));
    }
  }
  return out;
}

std::size_t index_of(const std::vector<double>& grid, double t) {
  auto it = std::lower_bound(grid.begin(), grid.end(), t - 1e-12 * std::max(1.0, grid.back()));
  return static_cast<std::size_t>(it - grid.begin());
}

// compound Poisson path from arrival times and marks
CadlagPath jump_path(const std::vector<double>& arrivals, const std::vector<Vec>& marks, int dim,
                     double T) {
  std::vector<double> grid = merge_grid(arrivals, T);
  Mat values = Mat::Zero(dim, static_cast<Eigen::Index>(grid.size()));
  std::vector<Jump> jumps;
  Vec level = Vec::Zero(dim);
  std::size_t next = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    while (next < arrivals.size() && index_of(grid, arrivals[next]) == i) {
      const Vec& h = marks[next];
      if (h.norm() > 0.0) {
        jumps.push_back({grid[i], h, level});
        level += h;
      }
      ++next;
    }
    values.col(static_cast<Eigen::Index>(i)) = level;
  }
  return {std::move(grid), std::move(values), std::move(jumps), T, CadlagPath::Interpolation::Step};
}

} // namespace

// ---------------------------------------------------------------------------
// jump laws

JumpLaw JumpLaw::dirac(Vec point) {
  JumpLaw law;
  law.dim = static_cast<int>(point.size());
  law.sample = [point](RandomSource&) { return point; };
  law.cf = [point](const Vec& xi) { return std::exp(Complex(0.0, point.dot(xi))); };
  law.label = "dirac";
  return law;
}

JumpLaw JumpLaw::normal(double mean, double sd) {
  if (!(sd >= 0.0)) {
    throw InvalidArgument("InvalidArgument", "standard deviation must be >= 0");
  }
  JumpLaw law;
  law.dim = 1;
  law.sample = [mean, sd](RandomSource& rng) { return Vec::Constant(1, rng.normal(mean, sd)); };
  law.cf = [mean, sd](const Vec& xi) {
    double x = xi(0);
    return std::exp(Complex(-0.5 * sd * sd * x * x, mean * x));
  };
  law.label = "normal";
  return law;
}

JumpLaw JumpLaw::rademacher() {
  JumpLaw law;
  law.dim = 1;
  law.sample = [](RandomSource& rng) { return Vec::Constant(1, rng.uniform() < 0.5 ? -1.0 : 1.0); };
  law.cf = [](const Vec& xi) { return Complex(std::cos(xi(0)), 0.0); };
  law.label = "rademacher";
  return law;
}

JumpLaw JumpLaw::discrete(std::vector<Atom> atoms) {
  if (atoms.empty()) {
    throw InvalidArgument("InvalidArgument", "discrete law needs at least one atom");
  }
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!(a.mass >= 0.0)) {
      throw InvalidArgument("InvalidArgument", "atom masses must be >= 0");
    }
    total += a.mass;
  }
  if (!(total > 0.0)) {
    throw InvalidArgument("InvalidArgument", "discrete law has zero total mass");
  }
  std::vector<double> cum;
  double acc = 0.0;
  for (auto& a : atoms) {
    a.mass /= total;
    acc += a.mass;
    cum.push_back(acc);
  }
  cum.back() = 1.0;
  JumpLaw law;
  law.dim = static_cast<int>(atoms.front().point.size());
  law.sample = [atoms, cum](RandomSource& rng) {
    double u = rng.uniform();
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    auto k = std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), atoms.size() - 1);
    return atoms[k].point;
  };
  law.cf = [atoms](const Vec& xi) {
    Complex acc{};
    for (const auto& a : atoms) {
      acc += a.mass * std::exp(Complex(0.0, a.point.dot(xi)));
    }
    return acc;
  };
  law.label = "discrete";
  return law;
}

// ---------------------------------------------------------------------------
// Poisson and compound Poisson

CadlagPath sample_poisson_process(double lambda, double T, RandomSource& rng) {
  require_rate(lambda);
  require_horizon(T);
  std::vector<double> arrivals;
  std::vector<Vec> marks;
  for (double t = rng.exponential(lambda); t <= T; t += rng.exponential(lambda)) {
    arrivals.push_back(t);
    marks.push_back(Vec::Ones(1));
  }
  return jump_path(arrivals, marks, 1, T);
}

CadlagPath sample_compound_poisson(double lambda, const JumpLaw& law, double T, RandomSource& rng) {
  require_rate(lambda);
  require_horizon(T);
  if (!law.sample) {
    throw InvalidArgument("InvalidArgument", "jump law is not sampleable");
  }
  std::vector<double> arrivals;
  std::vector<Vec> marks;
  for (double t = rng.exponential(lambda); t <= T; t += rng.exponential(lambda)) {
    arrivals.push_back(t);
    Vec h = law.sample(rng);
    require_same_dim(h.size(), law.dim, "jump law sample");
    marks.push_back(std::move(h));
  }
  return jump_path(arrivals, marks, law.dim, T);
}

// ---------------------------------------------------------------------------
// Lévy's midpoint construction

CadlagPath sample_brownian_levy(int levels, RandomSource& rng,
                                std::vector<std::vector<double>>* displacements) {
  if (levels < 0 || levels > 30) {
    throw InvalidArgument("InvalidArgument", "levels must lie in [0, 30]");
  }
  const std::size_t m = std::size_t{1} << levels;
  std::vector<double> w(m + 1, 0.0);
  w[m] = rng.normal();
  if (displacements) {
    displacements->assign(static_cast<std::size_t>(levels), {});
  }
  for (int n = 0; n < levels; ++n) {
    const std::size_t stride = m >> n; // grid step 2^-n in index units
    const double sd = 0.5 * std::sqrt(std::ldexp(1.0, -n));
    for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
      std::size_t left = k * stride;
      double gamma = sd * rng.normal();
      w[left + stride / 2] = 0.5 * (w[left] + w[left + stride]) + gamma;
      if (displacements) {
        (*displacements)[static_cast<std::size_t>(n)].push_back(gamma);
      }
    }
  }
  std::vector<double> times(m + 1);
  Mat values(1, static_cast<Eigen::Index>(m + 1));
  for (std::size_t k = 0; k <= m; ++k) {
    times[k] = std::ldexp(static_cast<double>(k), -levels);
    values(0, static_cast<Eigen::Index>(k)) = w[k];
  }
  return {std::move(times), std::move(values), {}, 1.0, CadlagPath::Interpolation::Linear};
}

// ---------------------------------------------------------------------------
// Lévy-Itô

LevyItoSampler::LevyItoSampler(LevyTriplet triplet, double eps, LevyItoOptions options)
    : triplet_(std::move(triplet)), truncated_(triplet_), eps_(eps), options_(options) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw InvalidArgument("InvalidArgument", "small-jump cutoff eps must lie in (0, 1]");
  }
  const int d = triplet_.dim();
  truncated_ = triplet_.truncated(eps);
  const auto& nu = triplet_.nu();
  small_second_moment_ = nu.second_moment_below(eps);
  compensator_ = nu.first_moment_band(eps, 1.0);
  drift_ = triplet_.drift() - compensator_;

  Eigen::SelfAdjointEigenSolver<Mat> es(triplet_.diffusion());
  Vec lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  sqrt_q_ = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  has_diffusion_ = lam.maxCoeff() > 0.0;
  (void)d;

  if (std::holds_alternative<LevyMeasureSpec::FiniteAtomic>(nu.variant())) {
    build_atomic();
  } else if (nu.is_polar() && nu.angular_mass() > 0.0) {
    build_polar();
  }
  double acc = 0.0;
  cell_cum_.clear();
  for (const auto& c : cells_) {
    acc += c.mass;
    cell_cum_.push_back(acc);
  }
  rate_ = acc;
}

void LevyItoSampler::build_atomic() {
  const auto& atoms = std::get<LevyMeasureSpec::FiniteAtomic>(triplet_.nu().variant()).atoms;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    double r = atoms[i].point.norm();
    if (r >= eps_ && r >= triplet_.nu().floor() && atoms[i].mass > 0.0) {
      Cell c;
      c.lo = c.hi = r;
      c.mass = atoms[i].mass;
      c.atom = static_cast<int>(i);
      cells_.push_back(std::move(c));
    }
  }
}

void LevyItoSampler::build_polar() {
  const auto& nu = triplet_.nu();
  const int d = nu.dim();
  if (const auto* rd = std::get_if<LevyMeasureSpec::RadialDensity>(&nu.variant())) {
    if (rd->density.kind() == RadialProfile::Kind::Power) {
      power_law_ = true;
      power_beta_ = 1.0 + rd->density.params()[1] - (d - 1);
    }
  } else if (const auto* st = std::get_if<LevyMeasureSpec::AlphaStable>(&nu.variant())) {
    power_law_ = true;
    power_beta_ = 1.0 + st->alpha;
  }
  double acc = 0.0;
  for (const auto& a : nu.directions()) {
    acc += a.weight;
    direction_cum_.push_back(acc);
  }

  const double lower = std::max(eps_, nu.floor());
  if (lower < 1.0) {
    // annuli [1/(n+1), 1/n), the last one cut at `lower`
    auto n_max = static_cast<long>(std::ceil(1.0 / lower - 1.0 - 1e-12));
    n_max = std::max(1L, n_max);
    for (long n = 1; n <= n_max; ++n) {
      double lo = std::max(1.0 / static_cast<double>(n + 1), lower);
      double hi = 1.0 / static_cast<double>(n);
      if (hi > lo) {
        add_polar_cell(lo, hi);
      }
    }
  }
  const double start = std::max(1.0, lower);
  const double total = nu.band_mass(start, std::numeric_limits<double>::infinity());
  double covered = 0.0;
  double a = start;
  for (int shell = 0; shell < 4000; ++shell) {
    if (total - covered <= options_.tail_mass_tol * std::max(1.0, total)) {
      break;
    }
    add_polar_cell(a, 2.0 * a);
    covered += cells_.back().mass;
    a *= 2.0;
  }
  dropped_tail_ = std::max(0.0, total - covered);
}

void LevyItoSampler::add_polar_cell(double lo, double hi) {
  const auto& nu = triplet_.nu();
  Cell c;
  c.lo = lo;
  c.hi = hi;
  c.mass = nu.band_mass(lo, hi);
  if (power_law_) {
    c.power_law = true;
    c.beta = power_beta_;
  } else {
    constexpr int kSub = 8;
    constexpr int kNodes = 16;
    double acc = 0.0;
    auto h = [&nu](double r) { return nu.radial(r); };
    for (int s = 0; s < kSub; ++s) {
      double a = lo + (hi - lo) * s / kSub;
      double b = lo + (hi - lo) * (s + 1) / kSub;
      acc += quad::gauss_kronrod(h, a, b).value;
      c.sub_cum.push_back(acc);
      double env = 0.0;
      for (int k = 0; k <= kNodes; ++k) {
        env = std::max(env, h(a + (b - a) * k / kNodes));
      }
      c.sub_env.push_back(1.5 * env);
    }
  }
  cells_.push_back(std::move(c));
}

double LevyItoSampler::sample_radius(const Cell& c, RandomSource& rng) const {
  const double u = rng.uniform();
  if (c.power_law) {
    if (std::abs(c.beta - 1.0) < 1e-12) {
      return c.lo * std::pow(c.hi / c.lo, u);
    }
    double p = 1.0 - c.beta;
    double a = std::pow(c.lo, p);
    double b = std::pow(c.hi, p);
    return std::clamp(std::pow(a + u * (b - a), 1.0 / p), c.lo, c.hi);
  }
  auto it = std::upper_bound(c.sub_cum.begin(), c.sub_cum.end(), u * c.sub_cum.back());
  auto s = std::min<std::size_t>(static_cast<std::size_t>(it - c.sub_cum.begin()), c.sub_cum.size() - 1);
  const double width = (c.hi - c.lo) / static_cast<double>(c.sub_cum.size());
  const double a = c.lo + width * static_cast<double>(s);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    double r = a + width * rng.uniform();
    double h = triplet_.nu().radial(r);
    if (h > c.sub_env[s]) {
      throw QuadratureDivergence("radial density exceeds its rejection envelope at r = " +
                                 std::to_string(r));
    }
    if (rng.uniform() * c.sub_env[s] < h) {
      return r;
    }
  }
  throw QuadratureDivergence("rejection sampling of the radial density stalled");
}

Vec LevyItoSampler::sample_jump(RandomSource& rng) const {
  if (cells_.empty()) {
    throw InvalidArgument("InvalidArgument", "Lévy measure has no mass above eps");
  }
  double u = rng.uniform() * rate_;
  auto it = std::upper_bound(cell_cum_.begin(), cell_cum_.end(), u);
  auto k = std::min<std::size_t>(static_cast<std::size_t>(it - cell_cum_.begin()), cells_.size() - 1);
  const Cell& c = cells_[k];
  if (c.atom >= 0) {
    const auto& atoms = std::get<LevyMeasureSpec::FiniteAtomic>(triplet_.nu().variant()).atoms;
    return atoms[static_cast<std::size_t>(c.atom)].point;
  }
  double r = sample_radius(c, rng);
  const auto& dirs = triplet_.nu().directions();
  double v = rng.uniform() * direction_cum_.back();
  auto jt = std::upper_bound(direction_cum_.begin(), direction_cum_.end(), v);
  auto j = std::min<std::size_t>(static_cast<std::size_t>(jt - direction_cum_.begin()), dirs.size() - 1);
  return r * dirs[j].direction;
}

Complex LevyItoSampler::truncated_exponent(const Vec& xi) const { return eval_exponent(truncated_, xi); }

LevyItoPath LevyItoSampler::sample(double T, double grid_dt, RandomSource& rng, const Vec* x0,
                                   const std::vector<double>& extra_times) const {
  require_horizon(T);
  if (!(grid_dt > 0.0)) {
    throw InvalidArgument("InvalidArgument", "grid_dt must be > 0");
  }
  const int d = dim();
  if (x0) {
    require_same_dim(x0->size(), d, "start point");
  }
  if (rate_ * T > options_.jump_budget) {
    throw MassOverflow("expected number of jumps " + std::to_string(rate_ * T) +
                       " exceeds the jump budget " + std::to_string(options_.jump_budget));
  }

  std::vector<double> arrivals;
  std::vector<Vec> marks;
  if (rate_ > 0.0) {
    for (double t = rng.exponential(rate_); t <= T; t += rng.exponential(rate_)) {
      arrivals.push_back(t);
      marks.push_back(sample_jump(rng));
    }
  }

  std::vector<double> pts = extra_times;
  const double steps = std::ceil(T / grid_dt - 1e-9);
  for (double k = 1; k < steps; ++k) {
    pts.push_back(k * grid_dt);
  }
  pts.insert(pts.end(), arrivals.begin(), arrivals.end());
  std::vector<double> grid = merge_grid(std::move(pts), T);
  const auto m = static_cast<Eigen::Index>(grid.size());

  LevyItoPath out;
  out.continuous.resize(d, m);
  Vec c = x0 ? *x0 : Vec::Zero(d);
  out.continuous.col(0) = c;
  Vec z(d);
  for (Eigen::Index i = 1; i < m; ++i) {
    double dt = grid[static_cast<std::size_t>(i)] - grid[static_cast<std::size_t>(i - 1)];
    c += drift_ * dt;
    if (has_diffusion_) {
      for (int k = 0; k < d; ++k) {
        z(k) = rng.normal();
      }
      c += std::sqrt(dt) * (sqrt_q_ * z);
    }
    out.continuous.col(i) = c;
  }

  Mat values = out.continuous;
  std::vector<Jump> jumps;
  Vec level = Vec::Zero(d);
  std::size_t next = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    while (next < arrivals.size() && index_of(grid, arrivals[next]) == static_cast<std::size_t>(i)) {
      if (marks[next].norm() > 0.0) {
        jumps.push_back({grid[static_cast<std::size_t>(i)], marks[next], Vec(out.continuous.col(i) + level)});
        level += marks[next];
      }
      ++next;
    }
    values.col(i) += level;
  }
  bool moving = has_diffusion_ || drift_.norm() > 0.0;
  out.path = CadlagPath(std::move(grid), std::move(values), std::move(jumps), T,
                        moving ? CadlagPath::Interpolation::Linear : CadlagPath::Interpolation::Step);
  out.truncation_bound = T * small_second_moment_;
  return out;
}

LevyItoPath sample_levy_ito(const LevyTriplet& triplet, double eps, double T, double grid_dt,
                            RandomSource& rng, LevyItoOptions options) {
  return LevyItoSampler(triplet, eps, options).sample(T, grid_dt, rng);
}

// ---------------------------------------------------------------------------
// series

SeriesPath sample_series(const SeriesSpec& spec, std::size_t n_terms, RandomSource& rng) {
  if (!spec.H || !spec.sample_v) {
    throw InvalidArgument("InvalidArgument", "series needs H and a sampler for V");
  }
  const int d = spec.dim;
  std::vector<double> arrivals;
  std::vector<Vec> marks;
  Vec drift = Vec::Zero(d);
  double gamma = 0.0;
  for (std::size_t k = 1; k <= n_terms; ++k) {
    gamma += rng.exponential(1.0);
    Vec v = spec.sample_v(rng);
    double u = rng.uniform();
    Vec j = spec.H(gamma, v);
    require_same_dim(j.size(), d, "series term");
    arrivals.push_back(u);
    marks.push_back(std::move(j));
    if (spec.c) {
      drift += spec.c(k);
    }
  }
  if (n_terms > 0 && gamma < spec.resolution_radius) {
    throw TailNotResolved("series stopped at Gamma_n = " + std::to_string(gamma) +
                          " below the resolution radius " + std::to_string(spec.resolution_radius));
  }
  // jumps sorted by time
  std::vector<std::size_t> order(arrivals.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return arrivals[a] < arrivals[b]; });
  std::vector<double> times;
  std::vector<Vec> sizes;
  for (auto i : order) {
    times.push_back(arrivals[i]);
    sizes.push_back(marks[i]);
  }
  CadlagPath base = jump_path(times, sizes, d, 1.0);
  SeriesPath out;
  out.gamma_last = gamma;
  out.n_terms = n_terms;
  if (drift.norm() == 0.0) {
    out.path = std::move(base);
    return out;
  }
  // subtract t * sum c_k
  std::vector<double> grid = base.times();
  Mat values = base.values();
  std::vector<Jump> jumps = base.jumps();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values.col(static_cast<Eigen::Index>(i)) -= grid[i] * drift;
  }
  for (auto& j : jumps) {
    j.left_limit -= j.time * drift;
  }
  out.path = CadlagPath(std::move(grid), std::move(values), std::move(jumps), 1.0,
                        CadlagPath::Interpolation::Linear);
  return out;
}

} // namespace levytype
