#include "levytype/rom_integral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "levytype/parallel.hpp"
#include "levytype/quadrature.hpp"

namespace levytype {

namespace {

constexpr int kTreeDepth = 40;
constexpr std::uint64_t kJumpTag = 0x6a756d70ULL;
constexpr std::uint64_t kRootTag = 0x726f6f74ULL;
constexpr std::uint64_t kLeafTag = 0x6c656166ULL;

bool orient_ok(const std::optional<Vec>& orient, const Vec& z) {
  return !orient || orient->dot(z) > 0.0;
}

} // namespace

bool SpaceCell::contains(const Vec& y) const {
  double r = y.norm();
  return r >= lo && r < hi && orient_ok(orient, y);
}

SemiringInterval SemiringInterval::time(double s, double t) { return {s, t, std::nullopt}; }

SemiringInterval SemiringInterval::space_time(double s, double t, SpaceCell cell) {
  return {s, t, std::move(cell)};
}

std::optional<SemiringInterval> SemiringInterval::intersect(const SemiringInterval& other) const {
  if (is_space_time() != other.is_space_time()) {
    throw OutOfSemiring("cannot intersect a time interval with a space-time interval");
  }
  SemiringInterval out{std::max(s, other.s), std::min(t, other.t), std::nullopt};
  if (!(out.t > out.s)) {
    return std::nullopt;
  }
  if (!is_space_time()) {
    return out;
  }
  const SpaceCell& a = *space;
  const SpaceCell& b = *other.space;
  SpaceCell c{std::max(a.lo, b.lo), std::min(a.hi, b.hi), std::nullopt};
  if (!(c.hi > c.lo)) {
    return std::nullopt;
  }
  if (a.orient && b.orient) {
    const Vec& u = *a.orient;
    const Vec& v = *b.orient;
    double cosine = u.dot(v) / (u.norm() * v.norm());
    if (cosine > 1.0 - 1e-12) {
      c.orient = u;
    } else if (cosine < -1.0 + 1e-12) {
      return std::nullopt;
    } else {
      throw OutOfSemiring("half-space cuts in different directions do not intersect in the semiring");
    }
  } else {
    c.orient = a.orient ? a.orient : b.orient;
  }
  out.space = std::move(c);
  return out;
}

// ---------------------------------------------------------------------------

MartingaleDriver MartingaleDriver::brownian(double sigma) {
  if (!(sigma >= 0.0)) {
    throw InvalidArgument("InvalidArgument", "sigma must be >= 0");
  }
  MartingaleDriver d;
  d.sigma = sigma;
  return d;
}

MartingaleDriver MartingaleDriver::compensated_poisson(double lambda) {
  return compensated_compound_poisson(lambda, JumpLaw::dirac(Vec::Ones(1)), 1.0, 1.0);
}

MartingaleDriver MartingaleDriver::compensated_compound_poisson(double lambda, JumpLaw law,
                                                                double mean, double second_moment) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidRate("jump rate must be finite and > 0");
  }
  if (law.dim != 1) {
    throw DimensionMismatch("martingale noise jumps must be real-valued");
  }
  MartingaleDriver d;
  d.lambda = lambda;
  d.law = std::move(law);
  d.jump_mean = mean;
  d.jump_second_moment = second_moment;
  return d;
}

RandomOrthogonalMeasure RandomOrthogonalMeasure::white_noise(double horizon, double sigma) {
  RandomOrthogonalMeasure m = martingale_noise(MartingaleDriver::brownian(sigma), horizon);
  m.kind_ = Kind::WhiteNoise;
  return m;
}

RandomOrthogonalMeasure RandomOrthogonalMeasure::martingale_noise(MartingaleDriver driver,
                                                                  double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("InvalidArgument", "horizon must be finite and > 0");
  }
  RandomOrthogonalMeasure m;
  m.kind_ = Kind::MartingaleNoise;
  m.horizon_ = horizon;
  m.driver_ = std::move(driver);
  return m;
}

RandomOrthogonalMeasure RandomOrthogonalMeasure::compensated_poisson(LevyMeasureSpec nu,
                                                                     double min_radius,
                                                                     double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("InvalidArgument", "horizon must be finite and > 0");
  }
  if (!(min_radius > 0.0 && min_radius <= 1.0)) {
    throw RegionTouchesOrigin("materialization radius must lie in (0, 1]");
  }
  RandomOrthogonalMeasure m;
  m.kind_ = Kind::CompensatedPoisson;
  m.horizon_ = horizon;
  m.min_radius_ = min_radius;
  const int d = nu.dim();
  m.nu_ = std::make_shared<const LevyMeasureSpec>(nu);
  m.jumps_ = std::make_shared<const LevyItoSampler>(
      LevyTriplet(Vec::Zero(d), Mat::Zero(d, d), std::move(nu)), min_radius);
  return m;
}

std::string RandomOrthogonalMeasure::label() const {
  switch (kind_) {
  case Kind::WhiteNoise:
    return "white_noise";
  case Kind::MartingaleNoise:
    return "martingale_noise";
  case Kind::CompensatedPoisson:
    return "compensated_poisson";
  }
  return "";
}

int RandomOrthogonalMeasure::space_dim() const { return nu_ ? nu_->dim() : 0; }

void RandomOrthogonalMeasure::check(const SemiringInterval& r) const {
  if (!(r.s >= 0.0 && r.t > r.s && r.t <= horizon_ * (1.0 + 1e-12))) {
    throw OutOfSemiring("time interval (" + std::to_string(r.s) + ", " + std::to_string(r.t) +
                        "] is not inside (0, " + std::to_string(horizon_) + "]");
  }
  if (r.is_space_time() != is_space_time()) {
    throw OutOfSemiring(is_space_time() ? "this noise needs a space-time interval"
                                        : "this noise takes time intervals only");
  }
  if (r.space) {
    const SpaceCell& c = *r.space;
    if (!(c.hi > c.lo)) {
      throw OutOfSemiring("space cell is empty");
    }
    if (c.lo < min_radius_ * (1.0 - 1e-12)) {
      throw OutOfSemiring("space cell reaches inside the materialized radius " +
                          std::to_string(min_radius_));
    }
    if (c.orient && c.orient->size() != space_dim()) {
      throw DimensionMismatch("space cell orientation has the wrong dimension");
    }
  }
}

double RandomOrthogonalMeasure::space_mass(const SpaceCell& cell) const {
  const LevyMeasureSpec& nu = *nu_;
  if (const auto* at = std::get_if<LevyMeasureSpec::FiniteAtomic>(&nu.variant())) {
    double m = 0.0;
    for (const auto& a : at->atoms) {
      if (cell.contains(a.point)) {
        m += a.mass;
      }
    }
    return m;
  }
  double total = nu.angular_mass();
  if (total == 0.0) {
    return 0.0;
  }
  double selected = 0.0;
  for (const auto& a : nu.directions()) {
    if (orient_ok(cell.orient, a.direction)) {
      selected += a.weight;
    }
  }
  return selected == 0.0 ? 0.0 : nu.band_mass(cell.lo, cell.hi) * selected / total;
}

double RandomOrthogonalMeasure::space_integral(const SpaceCell& cell,
                                               const std::function<double(const Vec&)>& g) const {
  const LevyMeasureSpec& nu = *nu_;
  if (const auto* at = std::get_if<LevyMeasureSpec::FiniteAtomic>(&nu.variant())) {
    double m = 0.0;
    for (const auto& a : at->atoms) {
      if (cell.contains(a.point)) {
        m += a.mass * g(a.point);
      }
    }
    return m;
  }
  double out = 0.0;
  for (const auto& a : nu.directions()) {
    if (!orient_ok(cell.orient, a.direction)) {
      continue;
    }
    auto h = [&](double r) { return g(r * a.direction) * nu.radial(r); };
    out += a.weight * quad::dyadic_integral(h, cell.lo, cell.hi).value;
  }
  return out;
}

double RandomOrthogonalMeasure::control(const SemiringInterval& r) const {
  check(r);
  const double len = r.t - r.s;
  if (is_space_time()) {
    return len * space_mass(*r.space);
  }
  return len * driver_.bracket_rate();
}

NoiseReplay RandomOrthogonalMeasure::replay(std::uint64_t seed, std::uint64_t stream) const {
  return {*this, seed, stream};
}

// ---------------------------------------------------------------------------

NoiseReplay::NoiseReplay(const RandomOrthogonalMeasure& m, std::uint64_t seed, std::uint64_t stream)
    : measure_(std::make_shared<const RandomOrthogonalMeasure>(m)), base_(seed, stream) {
  const double H = m.horizon();
  if (m.driver_.sigma > 0.0) {
    w_end_ = std::sqrt(H) * base_.derive(kRootTag).normal();
  }
  RandomSource rng = base_.derive(kJumpTag);
  double rate = 0.0;
  if (m.kind_ == RandomOrthogonalMeasure::Kind::CompensatedPoisson) {
    rate = m.jumps_->jump_rate();
  } else if (m.driver_.law) {
    rate = m.driver_.lambda;
  }
  if (rate > 0.0) {
    double t = rng.exponential(rate);
    while (t <= H) {
      Vec y = m.jumps_ ? m.jumps_->sample_jump(rng) : m.driver_.law->sample(rng);
      jumps_.push_back({t, std::move(y)});
      t += rng.exponential(rate);
    }
  }
}

double NoiseReplay::node(int level, std::uint64_t index, double a, double b, double wa, double wb) {
  const std::uint64_t key = (static_cast<std::uint64_t>(level) << 48) | index;
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    return it->second;
  }
  double z = base_.derive(RandomSource::mix(kTreeDepth + 1, key)).normal();
  double w = 0.5 * (wa + wb) + std::sqrt(0.25 * (b - a)) * z;
  cache_.emplace(key, w);
  return w;
}

double NoiseReplay::brownian_at(double t) {
  const double H = measure_->horizon();
  if (t <= 0.0) {
    return 0.0;
  }
  if (t >= H) {
    return w_end_;
  }
  double a = 0.0;
  double b = H;
  double wa = 0.0;
  double wb = w_end_;
  std::uint64_t idx = 0;
  for (int level = 0; level < kTreeDepth; ++level) {
    double m = 0.5 * (a + b);
    double wm = node(level, idx, a, b, wa, wb);
    if (t == m) {
      return wm;
    }
    if (t < m) {
      b = m;
      wb = wm;
      idx = 2 * idx;
    } else {
      a = m;
      wa = wm;
      idx = 2 * idx + 1;
    }
  }
  // below the tree: a bridge draw keyed by t itself
  auto it = cache_.find(~std::bit_cast<std::uint64_t>(t));
  if (it != cache_.end()) {
    return it->second;
  }
  double z = base_.derive(RandomSource::mix(kLeafTag, std::bit_cast<std::uint64_t>(t))).normal();
  double w = wa + (t - a) / (b - a) * (wb - wa) + std::sqrt((t - a) * (b - t) / (b - a)) * z;
  cache_.emplace(~std::bit_cast<std::uint64_t>(t), w);
  return w;
}

double NoiseReplay::martingale_at(double t) {
  const auto& m = *measure_;
  if (m.is_space_time()) {
    throw OutOfSemiring("space-time noise has no martingale path");
  }
  if (t < 0.0 || t > m.horizon() * (1.0 + 1e-12)) {
    throw OutOfSemiring("time " + std::to_string(t) + " outside the noise horizon");
  }
  const auto& d = m.driver();
  double x = d.sigma > 0.0 ? d.sigma * brownian_at(t) : 0.0;
  for (const auto& j : jumps_) {
    if (j.time > t) {
      break;
    }
    x += j.size(0);
  }
  return x - d.lambda * d.jump_mean * t;
}

double NoiseReplay::sample(const SemiringInterval& r) {
  const auto& m = *measure_;
  m.check(r);
  if (!r.is_space_time()) {
    return martingale_at(r.t) - martingale_at(r.s);
  }
  double count = 0.0;
  for (const auto& j : jumps_) {
    if (j.time > r.t) {
      break;
    }
    if (j.time > r.s && r.space->contains(j.size)) {
      count += 1.0;
    }
  }
  return count - (r.t - r.s) * m.space_mass(*r.space);
}

double sample_noise(const RandomOrthogonalMeasure& n, const SemiringInterval& r, std::uint64_t seed,
                    std::uint64_t stream) {
  n.check(r);
  NoiseReplay rep = n.replay(seed, stream);
  return rep.sample(r);
}

double integrate_simple(const SimpleFunction& f, NoiseReplay& replay) {
  double out = 0.0;
  for (const auto& term : f.terms) {
    if (term.coefficient != 0.0) {
      out += term.coefficient * replay.sample(term.region);
    }
  }
  return out;
}

double control_norm(const SimpleFunction& f, const RandomOrthogonalMeasure& n) {
  // || sum c_k 1_{R_k} ||^2 = sum_{j,k} c_j c_k mu(R_j n R_k)
  double out = 0.0;
  for (const auto& a : f.terms) {
    n.check(a.region);
    for (const auto& b : f.terms) {
      auto c = a.region.intersect(b.region);
      if (c) {
        out += a.coefficient * b.coefficient * n.control(*c);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Layout {
  double t0, t1, h;
  std::size_t nt = 1;
  double lo = 0.0, hi = 0.0, hr = 0.0;
  std::size_t nr = 0;
  std::vector<std::optional<Vec>> dirs;
  std::vector<Vec> rep_dir;
};

Layout make_layout(const L2Integrand& f, const RandomOrthogonalMeasure& n, int level) {
  if (level < 0 || level > 20) {
    throw InvalidArgument("InvalidArgument", "refinement level must lie in [0, 20]");
  }
  n.check(f.space ? SemiringInterval::space_time(f.t0, f.t1, *f.space)
                  : SemiringInterval::time(f.t0, f.t1));
  Layout L;
  L.t0 = f.t0;
  L.t1 = f.t1;
  L.nt = std::size_t{1} << level;
  L.h = (f.t1 - f.t0) / static_cast<double>(L.nt);
  if (f.space) {
    if (!std::isfinite(f.space->hi)) {
      throw InvalidArgument("InvalidArgument", "space support must be bounded");
    }
    const int d = n.space_dim();
    L.lo = f.space->lo;
    L.hi = f.space->hi;
    L.nr = L.nt;
    L.hr = (L.hi - L.lo) / static_cast<double>(L.nr);
    if (f.space->orient) {
      L.dirs.push_back(f.space->orient);
      L.rep_dir.push_back(f.space->orient->normalized());
    } else if (d == 1) {
      L.dirs.push_back(Vec::Constant(1, 1.0));
      L.dirs.push_back(Vec::Constant(1, -1.0));
      L.rep_dir.push_back(Vec::Constant(1, 1.0));
      L.rep_dir.push_back(Vec::Constant(1, -1.0));
    } else {
      L.dirs.push_back(std::nullopt);
      L.rep_dir.push_back(Vec::Unit(d, 0));
    }
  }
  return L;
}

double cell_time(const Layout& L, std::size_t k) { return L.t0 + static_cast<double>(k) * L.h; }
double cell_radius(const Layout& L, std::size_t k) { return L.lo + static_cast<double>(k) * L.hr; }

double certificate_at(const L2Integrand& f, const RandomOrthogonalMeasure& n, int level) {
  if (f.certificate) {
    return f.certificate(level);
  }
  Layout L = make_layout(f, n, level);
  double total = 0.0;
  const Vec none;
  for (std::size_t i = 0; i < L.nt; ++i) {
    const double a = cell_time(L, i);
    const double b = i + 1 == L.nt ? L.t1 : cell_time(L, i + 1);
    const double sm = 0.5 * (a + b);
    if (!f.space) {
      const double c = f.f(sm, none);
      auto g = [&](double s) {
        double e = f.f(s, none) - c;
        return e * e;
      };
      total += n.driver().bracket_rate() * quad::gauss_kronrod(g, a, b).value;
      continue;
    }
    for (std::size_t j = 0; j < L.nr; ++j) {
      const double r0 = cell_radius(L, j);
      const double r1 = j + 1 == L.nr ? L.hi : cell_radius(L, j + 1);
      for (std::size_t k = 0; k < L.dirs.size(); ++k) {
        SpaceCell cell{r0, r1, L.dirs[k]};
        const double c = f.f(sm, 0.5 * (r0 + r1) * L.rep_dir[k]);
        auto g = [&](double s) {
          return n.space_integral(cell, [&](const Vec& y) {
            double e = f.f(s, y) - c;
            return e * e;
          });
        };
        total += quad::gauss_kronrod(g, a, b).value;
      }
    }
  }
  return total;
}

} // namespace

L2Approximation approximate_l2(const L2Integrand& f, const RandomOrthogonalMeasure& n, int level) {
  Layout L = make_layout(f, n, level);
  L2Approximation out;
  out.level = level;
  const Vec none;
  for (std::size_t i = 0; i < L.nt; ++i) {
    const double a = cell_time(L, i);
    const double b = i + 1 == L.nt ? L.t1 : cell_time(L, i + 1);
    const double sm = 0.5 * (a + b);
    if (!f.space) {
      double c = f.f(sm, none);
      if (!std::isfinite(c)) {
        throw NotSquareIntegrable("integrand is not finite at s = " + std::to_string(sm));
      }
      out.simple.terms.push_back({c, SemiringInterval::time(a, b)});
      continue;
    }
    for (std::size_t j = 0; j < L.nr; ++j) {
      const double r0 = cell_radius(L, j);
      const double r1 = j + 1 == L.nr ? L.hi : cell_radius(L, j + 1);
      for (std::size_t k = 0; k < L.dirs.size(); ++k) {
        double c = f.f(sm, 0.5 * (r0 + r1) * L.rep_dir[k]);
        if (!std::isfinite(c)) {
          throw NotSquareIntegrable("integrand is not finite inside the support");
        }
        out.simple.terms.push_back(
            {c, SemiringInterval::space_time(a, b, SpaceCell{r0, r1, L.dirs[k]})});
      }
    }
  }
  // the certificate must settle as the grid refines
  std::vector<double> certs;
  for (int l = std::max(0, level - 2); l <= level; ++l) {
    certs.push_back(certificate_at(f, n, l));
  }
  for (double c : certs) {
    if (!std::isfinite(c) || c < -1e-12) {
      throw NotSquareIntegrable("L2 certificate is not finite");
    }
  }
  if (certs.size() == 3 && certs[2] > certs[1] && certs[1] > certs[0] && certs[2] > 1e-300) {
    throw NotSquareIntegrable("L2 certificate grows under refinement: " + std::to_string(certs[0]) +
                              ", " + std::to_string(certs[1]) + ", " + std::to_string(certs[2]));
  }
  out.certificate = certs.back();
  out.control.reserve(out.simple.terms.size());
  for (const auto& term : out.simple.terms) {
    out.control.push_back(n.control(term.region));
  }
  return out;
}

L2Sample integrate_l2(const L2Approximation& approx, NoiseReplay& replay) {
  const auto& n = replay.measure();
  L2Sample out;
  out.certificate = approx.certificate;
  if (!n.is_space_time()) {
    // telescoping over a partition: each grid value is read once
    double prev_t = std::numeric_limits<double>::quiet_NaN();
    double prev_m = 0.0;
    for (const auto& term : approx.simple.terms) {
      const auto& r = term.region;
      double ms = r.s == prev_t ? prev_m : replay.martingale_at(r.s);
      double mt = replay.martingale_at(r.t);
      out.value += term.coefficient * (mt - ms);
      prev_t = r.t;
      prev_m = mt;
    }
    return out;
  }
  const auto& jumps = replay.jumps();
  for (std::size_t k = 0; k < approx.simple.terms.size(); ++k) {
    const auto& term = approx.simple.terms[k];
    const auto& r = term.region;
    double count = 0.0;
    for (const auto& j : jumps) {
      if (j.time > r.t) {
        break;
      }
      if (j.time > r.s && r.space->contains(j.size)) {
        count += 1.0;
      }
    }
    out.value += term.coefficient * (count - approx.control[k]);
  }
  return out;
}

L2Sample integrate_l2(const L2Integrand& f, NoiseReplay& replay, int level) {
  return integrate_l2(approximate_l2(f, replay.measure(), level), replay);
}

double control_integral(const L2Integrand& f, const RandomOrthogonalMeasure& n) {
  const Vec none;
  constexpr int kPieces = 16;
  const double w = (f.t1 - f.t0) / kPieces;
  double total = 0.0;
  for (int p = 0; p < kPieces; ++p) {
    const double a = f.t0 + p * w;
    const double b = p + 1 == kPieces ? f.t1 : a + w;
    if (!f.space) {
      auto g = [&](double s) {
        double v = f.f(s, none);
        return v * v;
      };
      total += n.driver().bracket_rate() * quad::gauss_kronrod(g, a, b).value;
    } else {
      auto g = [&](double s) {
        return n.space_integral(*f.space, [&](const Vec& y) {
          double v = f.f(s, y);
          return v * v;
        });
      };
      total += quad::gauss_kronrod(g, a, b).value;
    }
  }
  return total;
}

IsometryReport isometry_check(const L2Integrand& f, const RandomOrthogonalMeasure& n, int level,
                              std::size_t paths, std::uint64_t seed, std::uint64_t first_stream,
                              std::string functional) {
  if (paths < 2) {
    throw EmptyEnsemble("isometry check needs at least two paths");
  }
  L2Approximation approx = approximate_l2(f, n, level);
  std::vector<double> sq(paths);
  parallel_for(paths, [&](std::size_t k) {
    NoiseReplay rep = n.replay(seed, first_stream + k);
    double v = integrate_l2(approx, rep).value;
    sq[k] = v * v;
  });
  double mean = 0.0;
  for (double v : sq) {
    mean += v;
  }
  const double m = static_cast<double>(paths);
  mean /= m;
  double var = 0.0;
  for (double v : sq) {
    var += (v - mean) * (v - mean);
  }
  var /= m - 1.0;
  IsometryReport out;
  out.functional = std::move(functional);
  out.mc_moment = mean;
  out.control_integral = control_integral(f, n);
  out.se = std::sqrt(var / m);
  out.n = paths;
  out.pass = std::abs(out.mc_moment - out.control_integral) <= 3.0 * out.se + 1e-12;
  return out;
}

// ---------------------------------------------------------------------------

double PathView::value_at(double t) const {
  if (t > cutoff_ + 1e-12 * std::max(1.0, cutoff_)) {
    throw NonAdaptedCoefficient("coefficient read M at t = " + std::to_string(t) +
                                " beyond its start time " + std::to_string(cutoff_));
  }
  return replay_->martingale_at(t);
}

StoppingTime StoppingTime::at(double t) {
  if (!(t >= 0.0)) {
    throw InvalidArgument("InvalidArgument", "stopping time must be >= 0");
  }
  StoppingTime s;
  s.t = t;
  return s;
}

StoppingTime StoppingTime::first_exit(double lo, double hi, double cap, double dt) {
  if (!(lo < hi) || !(dt > 0.0) || !(cap >= 0.0)) {
    throw InvalidArgument("InvalidArgument", "first exit needs lo < hi, dt > 0, cap >= 0");
  }
  StoppingTime s;
  s.kind = Kind::FirstExit;
  s.t = cap;
  s.lo = lo;
  s.hi = hi;
  s.dt = dt;
  return s;
}

double StoppingTime::evaluate(NoiseReplay& replay) const {
  if (t > replay.measure().horizon() * (1.0 + 1e-12)) {
    throw OutOfSemiring("stopping time exceeds the noise horizon");
  }
  if (kind == Kind::Deterministic) {
    return t;
  }
  double x = replay.martingale_at(0.0);
  if (x <= lo || x >= hi) {
    return 0.0;
  }
  for (std::size_t k = 1;; ++k) {
    double s = std::min(t, static_cast<double>(k) * dt);
    x = replay.martingale_at(s);
    if (x <= lo || x >= hi || s >= t) {
      return s;
    }
  }
}

double integrate_predictable(const SimpleProcess& f, NoiseReplay& replay) {
  if (replay.measure().is_space_time()) {
    throw OutOfSemiring("predictable integrands need a time-type martingale noise");
  }
  double out = 0.0;
  for (const auto& term : f.terms) {
    double a = term.from.evaluate(replay);
    double b = term.to.evaluate(replay);
    if (!(b > a)) {
      continue;
    }
    double phi = term.phi(PathView(replay, a));
    out += phi * (replay.martingale_at(b) - replay.martingale_at(a));
  }
  return out;
}

} // namespace levytype
