#include "levytype/levy_core.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "levytype/quadrature.hpp"

namespace levytype {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
const Complex kI{0.0, 1.0};

// 1 - e^{ix} + ix, series for small |x| to avoid cancellation
Complex compensated_kernel(double x) {
  if (std::abs(x) < 0.1) {
    double x2 = x * x;
    double re = x2 * (0.5 - x2 * (1.0 / 24.0 - x2 * (1.0 / 720.0 - x2 / 40320.0)));
    double im = x * x2 * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 5040.0 - x2 / 362880.0)));
    return {re, im};
  }
  return {1.0 - std::cos(x), x - std::sin(x)};
}

// 1 - e^{ix}
Complex plain_kernel(double x) {
  if (std::abs(x) < 0.1) {
    double x2 = x * x;
    double re = x2 * (0.5 - x2 * (1.0 / 24.0 - x2 * (1.0 / 720.0 - x2 / 40320.0)));
    double im = -x * (1.0 - x2 * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 / 5040.0)));
    return {re, im};
  }
  return {1.0 - std::cos(x), -std::sin(x)};
}

// int_start^inf (1 - e^{iru}) h(r) dr for a nonnegative, eventually
// decreasing h. The first few periods are integrated directly; the remaining
// tail goes through Ooura's double-exponential Fourier rules.
Complex oscillatory_tail(const std::function<double(double)>& h, double start, double u) {
  using boost::math::quadrature::ooura_fourier_cos;
  using boost::math::quadrature::ooura_fourier_sin;
  thread_local ooura_fourier_cos<double> cos_rule;
  thread_local ooura_fourier_sin<double> sin_rule;

  const double au = std::abs(u);
  const double cut = std::max(start, 8.0 * kPi / au);
  Complex acc{};
  if (cut > start) {
    auto g = [&](double r) { return plain_kernel(r * u) * h(r); };
    acc += quad::dyadic_integral(g, start, cut).value;
  }
  double mass = quad::dyadic_integral(h, cut, std::numeric_limits<double>::infinity(), 1e-15).value;
  auto shifted = [&](double t) { return h(cut + t); };
  double c = 0.0;
  double s = 0.0;
  try {
    c = cos_rule.integrate(shifted, au).first;
    s = sin_rule.integrate(shifted, au).first;
  } catch (const std::exception& e) {
    throw QuadratureDivergence(std::string("oscillatory tail: ") + e.what());
  }
  if (!std::isfinite(c) || !std::isfinite(s)) {
    throw QuadratureDivergence("oscillatory tail is not finite");
  }
  // int_cut^inf e^{iru} h = e^{i cut u} (C + i sgn(u) S)
  Complex fourier = std::exp(kI * (cut * u)) * Complex(c, u > 0.0 ? s : -s);
  return acc + mass - fourier;
}

} // namespace

// ---------------------------------------------------------------------------
// RadialProfile

RadialProfile RadialProfile::power(double c, double alpha) {
  RadialProfile p;
  p.kind_ = Kind::Power;
  p.params_ = {c, alpha};
  p.fn_ = [c, alpha](double r) { return c * std::pow(r, -1.0 - alpha); };
  p.label_ = "power";
  return p;
}

RadialProfile RadialProfile::exp_power(double c, double pw, double b) {
  RadialProfile p;
  p.kind_ = Kind::ExpPower;
  p.params_ = {c, pw, b};
  p.fn_ = [c, pw, b](double r) { return c * std::pow(r, -pw) * std::exp(-b * r); };
  p.label_ = "exp_power";
  return p;
}

RadialProfile RadialProfile::gaussian(double c, double s) {
  RadialProfile p;
  p.kind_ = Kind::Gaussian;
  p.params_ = {c, s};
  p.fn_ = [c, s](double r) { return c * std::exp(-r * r / (2.0 * s * s)); };
  p.label_ = "gaussian";
  return p;
}

RadialProfile RadialProfile::custom(std::function<double(double)> fn, std::string label) {
  RadialProfile p;
  p.kind_ = Kind::Custom;
  p.fn_ = std::move(fn);
  p.label_ = std::move(label);
  return p;
}

double RadialProfile::operator()(double r) const { return fn_(r); }

// ---------------------------------------------------------------------------
// LevyMeasureSpec

LevyMeasureSpec::LevyMeasureSpec(int dim, Variant v) : dim_(dim), variant_(std::move(v)) {
  if (dim < 1) {
    throw InvalidTriplet("Lévy measure dimension must be >= 1");
  }
  validate();
  witness_ = compute_witness();
}

LevyMeasureSpec LevyMeasureSpec::zero(int dim) { return {dim, Zero{}}; }

LevyMeasureSpec LevyMeasureSpec::finite_atomic(int dim, std::vector<Atom> atoms) {
  return {dim, FiniteAtomic{std::move(atoms)}};
}

LevyMeasureSpec LevyMeasureSpec::radial_density(int dim, RadialProfile density,
                                                std::vector<SphericalAtom> angular,
                                                double witness_bound) {
  return {dim, RadialDensity{std::move(density), std::move(angular), witness_bound}};
}

LevyMeasureSpec LevyMeasureSpec::alpha_stable(int dim, double alpha,
                                              std::vector<SphericalAtom> spherical) {
  return {dim, AlphaStable{alpha, std::move(spherical)}};
}

namespace {

void validate_spherical(int dim, const std::vector<SphericalAtom>& atoms) {
  for (const auto& a : atoms) {
    require_same_dim(a.direction.size(), dim, "spherical atom");
    if (std::abs(a.direction.norm() - 1.0) > 1e-9) {
      throw InvalidTriplet("spherical atom direction is not a unit vector");
    }
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) {
      throw InvalidTriplet("spherical atom weight must be finite and >= 0");
    }
  }
}

} // namespace

void LevyMeasureSpec::validate() {
  std::visit(
      [this](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteAtomic>) {
          for (const auto& a : v.atoms) {
            require_same_dim(a.point.size(), dim_, "Lévy measure atom");
            if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) {
              throw InvalidTriplet("atom mass must be finite and >= 0");
            }
            if (!(a.point.norm() > 0.0)) {
              throw InvalidTriplet("Lévy measure has an atom at the origin");
            }
          }
        } else if constexpr (std::is_same_v<T, RadialDensity>) {
          validate_spherical(dim_, v.angular);
        } else if constexpr (std::is_same_v<T, AlphaStable>) {
          if (!(v.alpha > 0.0 && v.alpha < 2.0)) {
            throw InvalidAlpha("alpha must lie in (0, 2), got " + std::to_string(v.alpha));
          }
          validate_spherical(dim_, v.spherical);
        }
      },
      variant_);
}

bool LevyMeasureSpec::is_zero() const {
  if (std::holds_alternative<Zero>(variant_)) {
    return true;
  }
  if (const auto* fa = std::get_if<FiniteAtomic>(&variant_)) {
    return std::none_of(fa->atoms.begin(), fa->atoms.end(), [this](const Atom& a) {
      return a.mass > 0.0 && a.point.norm() >= floor_;
    });
  }
  return angular_mass() == 0.0;
}

bool LevyMeasureSpec::is_polar() const {
  return std::holds_alternative<RadialDensity>(variant_) ||
         std::holds_alternative<AlphaStable>(variant_);
}

LevyMeasureSpec LevyMeasureSpec::truncated(double eps) const {
  LevyMeasureSpec out = *this;
  out.floor_ = std::max(floor_, eps);
  out.witness_ = out.compute_witness();
  return out;
}

double LevyMeasureSpec::radial(double r) const {
  if (r < floor_ || r <= 0.0) {
    return 0.0;
  }
  if (const auto* rd = std::get_if<RadialDensity>(&variant_)) {
    return rd->density(r) * std::pow(r, dim_ - 1);
  }
  if (const auto* st = std::get_if<AlphaStable>(&variant_)) {
    return std::pow(r, -1.0 - st->alpha);
  }
  return 0.0;
}

const std::vector<SphericalAtom>& LevyMeasureSpec::directions() const {
  static const std::vector<SphericalAtom> kNone;
  if (const auto* rd = std::get_if<RadialDensity>(&variant_)) {
    return rd->angular;
  }
  if (const auto* st = std::get_if<AlphaStable>(&variant_)) {
    return st->spherical;
  }
  return kNone;
}

double LevyMeasureSpec::angular_mass() const {
  double m = 0.0;
  for (const auto& a : directions()) {
    m += a.weight;
  }
  return m;
}

double LevyMeasureSpec::band_mass(double lo, double hi) const {
  lo = std::max(lo, floor_);
  if (!(hi > lo)) {
    return 0.0;
  }
  if (const auto* fa = std::get_if<FiniteAtomic>(&variant_)) {
    double m = 0.0;
    for (const auto& a : fa->atoms) {
      double r = a.point.norm();
      if (r >= lo && r < hi) {
        m += a.mass;
      }
    }
    return m;
  }
  if (!is_polar()) {
    return 0.0;
  }
  if (const auto* st = std::get_if<AlphaStable>(&variant_)) {
    if (lo <= 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    double upper = std::isinf(hi) ? 0.0 : std::pow(hi, -st->alpha);
    return angular_mass() * (std::pow(lo, -st->alpha) - upper) / st->alpha;
  }
  auto h = [this](double r) { return radial(r); };
  return angular_mass() * quad::dyadic_integral(h, lo, hi).value;
}

double LevyMeasureSpec::second_moment_below(double r) const {
  if (!(r > floor_)) {
    return 0.0;
  }
  if (const auto* fa = std::get_if<FiniteAtomic>(&variant_)) {
    double m = 0.0;
    for (const auto& a : fa->atoms) {
      double n = a.point.norm();
      if (n >= floor_ && n < r) {
        m += a.mass * n * n;
      }
    }
    return m;
  }
  if (!is_polar()) {
    return 0.0;
  }
  if (const auto* st = std::get_if<AlphaStable>(&variant_)) {
    double e = 2.0 - st->alpha;
    return angular_mass() * (std::pow(r, e) - std::pow(floor_, e)) / e;
  }
  auto g = [this](double s) { return s * s * radial(s); };
  return angular_mass() * quad::dyadic_integral(g, floor_, r).value;
}

Vec LevyMeasureSpec::first_moment_band(double lo, double hi) const {
  Vec out = Vec::Zero(dim_);
  lo = std::max(lo, floor_);
  if (!(hi > lo)) {
    return out;
  }
  if (const auto* fa = std::get_if<FiniteAtomic>(&variant_)) {
    for (const auto& a : fa->atoms) {
      double r = a.point.norm();
      if (r >= lo && r < hi) {
        out += a.mass * a.point;
      }
    }
    return out;
  }
  if (!is_polar()) {
    return out;
  }
  Vec mean_direction = Vec::Zero(dim_);
  for (const auto& a : directions()) {
    mean_direction += a.weight * a.direction;
  }
  if (mean_direction.norm() == 0.0) {
    return out;
  }
  double radial_moment = 0.0;
  if (const auto* st = std::get_if<AlphaStable>(&variant_)) {
    double e = 1.0 - st->alpha;
    if (std::abs(e) < 1e-14) {
      radial_moment = std::log(hi / lo);
    } else {
      double upper = std::isinf(hi) ? 0.0 : std::pow(hi, e);
      radial_moment = (upper - std::pow(lo, e)) / e;
    }
  } else {
    auto g = [this](double s) { return s * radial(s); };
    radial_moment = quad::dyadic_integral(g, lo, hi).value;
  }
  return radial_moment * mean_direction;
}

double LevyMeasureSpec::bounded_moment() const {
  if (const auto* fa = std::get_if<FiniteAtomic>(&variant_)) {
    double m = 0.0;
    for (const auto& a : fa->atoms) {
      double r2 = a.point.squaredNorm();
      if (std::sqrt(r2) >= floor_) {
        m += a.mass * r2 / (1.0 + r2);
      }
    }
    return m;
  }
  if (!is_polar()) {
    return 0.0;
  }
  auto g = [this](double s) { return s * s / (1.0 + s * s) * radial(s); };
  return angular_mass() * quad::dyadic_integral(g, floor_, std::numeric_limits<double>::infinity()).value;
}

double LevyMeasureSpec::compute_witness() const {
  if (const auto* fa = std::get_if<FiniteAtomic>(&variant_)) {
    double m = 0.0;
    for (const auto& a : fa->atoms) {
      double r = a.point.norm();
      if (r >= floor_) {
        m += a.mass * std::min(1.0, r * r);
      }
    }
    return m;
  }
  if (!is_polar() || angular_mass() == 0.0) {
    return 0.0;
  }
  double w = 0.0;
  if (const auto* st = std::get_if<AlphaStable>(&variant_)) {
    double a = st->alpha;
    double lo = std::min(floor_, 1.0);
    double small = (1.0 - std::pow(lo, 2.0 - a)) / (2.0 - a);
    double large = std::pow(std::max(floor_, 1.0), -a) / a;
    w = angular_mass() * (small + large);
  } else {
    auto g = [this](double s) { return std::min(1.0, s * s) * radial(s); };
    double value = quad::dyadic_integral(g, floor_, std::numeric_limits<double>::infinity()).value;
    if (!std::isfinite(value)) {
      throw QuadratureDivergence("integrability witness is not finite");
    }
    w = angular_mass() * value;
    const auto& rd = std::get<RadialDensity>(variant_);
    if (std::isfinite(rd.witness_bound) && w > rd.witness_bound * (1.0 + 1e-8) + 1e-12) {
      throw QuadratureDivergence("integrability witness " + std::to_string(w) +
                                 " exceeds the declared bound " +
                                 std::to_string(rd.witness_bound));
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// LevyTriplet

LevyTriplet::LevyTriplet(Vec drift, Mat diffusion, LevyMeasureSpec nu)
    : drift_(std::move(drift)), diffusion_(std::move(diffusion)), nu_(std::move(nu)) {
  const auto d = drift_.size();
  if (d < 1) {
    throw InvalidTriplet("empty drift vector");
  }
  require_same_dim(diffusion_.rows(), d, "diffusion rows");
  require_same_dim(diffusion_.cols(), d, "diffusion cols");
  require_same_dim(nu_.dim(), d, "Lévy measure");
  if (!drift_.allFinite() || !diffusion_.allFinite()) {
    throw InvalidTriplet("non-finite drift or diffusion entry");
  }
  double scale = std::max(1.0, diffusion_.cwiseAbs().maxCoeff());
  if ((diffusion_ - diffusion_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidTriplet("diffusion matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(diffusion_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTolerance) {
    throw InvalidTriplet("diffusion matrix is not positive semidefinite (min eigenvalue " +
                         std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
}

LevyTriplet LevyTriplet::with_nu(LevyMeasureSpec nu) const { return {drift_, diffusion_, std::move(nu)}; }

// ---------------------------------------------------------------------------
// exponents

namespace {

// int_{floor}^inf [1 - e^{iru} + iru 1_{r<1}] h(r) dr for a polar measure
Complex radial_exponent(const LevyMeasureSpec& nu, double u, double floor, double ceiling) {
  if (u == 0.0) {
    return {};
  }
  std::function<double(double)> h = [&nu](double r) { return nu.radial(r); };
  Complex out{};
  double small_top = std::min(1.0, ceiling);
  if (floor < small_top) {
    auto g = [&](double r) { return compensated_kernel(r * u) * h(r); };
    out += quad::dyadic_integral(g, floor, small_top, 1e-15).value;
  }
  double start = std::max(floor, 1.0);
  if (ceiling > start) {
    if (std::isfinite(ceiling)) {
      auto g = [&](double r) { return plain_kernel(r * u) * h(r); };
      out += quad::dyadic_integral(g, start, ceiling).value;
    } else {
      out += oscillatory_tail(h, start, u);
    }
  }
  return out;
}

} // namespace

Complex jump_exponent(const LevyMeasureSpec& nu, const Vec& xi) {
  require_same_dim(xi.size(), nu.dim(), "exponent argument");
  if (!xi.allFinite()) {
    throw InvalidArgument("InvalidArgument", "xi must be finite");
  }
  const auto& v = nu.variant();
  if (std::holds_alternative<LevyMeasureSpec::Zero>(v)) {
    return {};
  }
  if (const auto* fa = std::get_if<LevyMeasureSpec::FiniteAtomic>(&v)) {
    Complex acc{};
    for (const auto& a : fa->atoms) {
      double r = a.point.norm();
      if (r < nu.floor()) {
        continue;
      }
      double x = a.point.dot(xi);
      acc += a.mass * (r < 1.0 ? compensated_kernel(x) : plain_kernel(x));
    }
    return acc;
  }
  if (const auto* st = std::get_if<LevyMeasureSpec::AlphaStable>(&v)) {
    auto params = stable_parameters_from_levy_measure(st->alpha, st->spherical);
    Complex full = stable_exponent(st->alpha, params.spherical, params.mu, xi);
    if (nu.floor() > 0.0) {
      // remove the part below the floor
      LevyMeasureSpec body = LevyMeasureSpec::alpha_stable(nu.dim(), st->alpha, st->spherical);
      for (const auto& a : st->spherical) {
        if (a.weight == 0.0) {
          continue;
        }
        full -= a.weight * radial_exponent(body, a.direction.dot(xi), 0.0, nu.floor());
      }
    }
    return full;
  }
  Complex acc{};
  for (const auto& a : nu.directions()) {
    if (a.weight == 0.0) {
      continue;
    }
    acc += a.weight * radial_exponent(nu, a.direction.dot(xi), nu.floor(),
                                      std::numeric_limits<double>::infinity());
  }
  return acc;
}

Complex eval_exponent(const LevyTriplet& triplet, const Vec& xi) {
  require_same_dim(xi.size(), triplet.dim(), "exponent argument");
  Complex out{0.5 * xi.dot(triplet.diffusion() * xi), -triplet.drift().dot(xi)};
  return out + jump_exponent(triplet.nu(), xi);
}

Complex stable_exponent(double alpha, const std::vector<SphericalAtom>& spherical, const Vec& mu,
                        const Vec& xi) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw InvalidAlpha("alpha must lie in (0, 2), got " + std::to_string(alpha));
  }
  require_same_dim(mu.size(), xi.size(), "stable shift");
  Complex acc{0.0, -mu.dot(xi)};
  const bool unit = std::abs(alpha - 1.0) < 1e-15;
  const double tan_term = unit ? 0.0 : std::tan(alpha * kPi / 2.0);
  for (const auto& a : spherical) {
    if (a.weight < 0.0) {
      throw InvalidTriplet("spherical masses must be >= 0");
    }
    require_same_dim(a.direction.size(), xi.size(), "spherical atom");
    double v = a.direction.dot(xi);
    if (v == 0.0) {
      continue; // also the alpha = 1 limit of |v| log|v|
    }
    double s = v > 0.0 ? 1.0 : -1.0;
    double av = std::abs(v);
    if (unit) {
      acc += a.weight * av * Complex(1.0, 2.0 / kPi * s * std::log(av));
    } else {
      acc += a.weight * std::pow(av, alpha) * Complex(1.0, -s * tan_term);
    }
  }
  return acc;
}

StableParameters stable_parameters_from_levy_measure(double alpha,
                                                     const std::vector<SphericalAtom>& sigma) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw InvalidAlpha("alpha must lie in (0, 2), got " + std::to_string(alpha));
  }
  StableParameters out;
  const Eigen::Index d = sigma.empty() ? 1 : sigma.front().direction.size();
  out.mu = Vec::Zero(d);
  const double c = catalog::stable_cosine_integral(alpha);
  const bool unit = std::abs(alpha - 1.0) < 1e-15;
  for (const auto& a : sigma) {
    out.spherical.push_back({a.direction, c * a.weight});
    out.mu += a.weight * a.direction * (unit ? (1.0 - kEulerGamma) : 1.0 / (alpha - 1.0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// CharacteristicExponent

CharacteristicExponent::CharacteristicExponent(int dim, Fn fn, bool closed_form, std::string label)
    : dim_(dim), fn_(std::move(fn)), closed_form_(closed_form), label_(std::move(label)) {}

CharacteristicExponent CharacteristicExponent::of(const LevyTriplet& triplet) {
  const auto& v = triplet.nu().variant();
  bool closed = std::holds_alternative<LevyMeasureSpec::Zero>(v) ||
                std::holds_alternative<LevyMeasureSpec::FiniteAtomic>(v) ||
                (std::holds_alternative<LevyMeasureSpec::AlphaStable>(v) && triplet.nu().floor() == 0.0);
  return {triplet.dim(), [triplet](const Vec& xi) { return eval_exponent(triplet, xi); }, closed,
          "levy_triplet"};
}

Complex CharacteristicExponent::operator()(const Vec& xi) const {
  require_same_dim(xi.size(), dim_, "exponent argument");
  return fn_(xi);
}

Complex CharacteristicExponent::operator()(double xi) const {
  Vec v(1);
  v(0) = xi;
  return (*this)(v);
}

bool subadditivity_check(const CharacteristicExponent& psi, const Vec& xi, const Vec& eta,
                         double tol) {
  double lhs = std::sqrt(std::abs(psi(Vec(xi + eta))));
  double rhs = std::sqrt(std::abs(psi(xi))) + std::sqrt(std::abs(psi(eta)));
  return lhs <= rhs + tol;
}

double growth_constant(const CharacteristicExponent& psi, int points_per_axis) {
  const int d = psi.dim();
  int m = std::max(2, points_per_axis);
  while (d > 1 && std::pow(static_cast<double>(m), d) > 2e5) {
    m /= 2;
  }
  long total = 1;
  for (int i = 0; i < d; ++i) {
    total *= m;
  }
  double sup = 0.0;
  Vec eta(d);
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int i = 0; i < d; ++i) {
      eta(i) = -1.0 + 2.0 * static_cast<double>(rest % m) / (m - 1);
      rest /= m;
    }
    if (eta.norm() <= 1.0) {
      sup = std::max(sup, std::abs(psi(eta)));
    }
  }
  return 2.0 * sup;
}

DiffusionProbeReport triplet_from_exponent_probe(const CharacteristicExponent& psi, int n_max) {
  const int d = psi.dim();
  DiffusionProbeReport report;
  report.q_hat = Mat::Zero(d, d);

  auto quadratic_form = [&](const Vec& dir) {
    std::vector<double> raw;
    for (long n = 1; n <= n_max; n *= 2) {
      double nn = static_cast<double>(n);
      raw.push_back(2.0 * psi(Vec(nn * dir)).real() / (nn * nn));
    }
    auto extrapolate = [&](std::size_t k) {
      if (k < 2) {
        return raw[k];
      }
      double d1 = raw[k - 1] - raw[k - 2];
      double d2 = raw[k] - raw[k - 1];
      if (std::abs(d1) < 1e-300) {
        return raw[k];
      }
      double ratio = d2 / d1;
      if (!(ratio > 0.0 && ratio < 0.999)) {
        return raw[k];
      }
      return raw[k] - d2 * ratio / (1.0 - ratio);
    };
    std::size_t last = raw.size() - 1;
    double cur = extrapolate(last);
    double prev = last > 0 ? extrapolate(last - 1) : cur;
    double change = std::abs(cur - prev) / std::max(1.0, std::abs(cur));
    report.extrapolated.push_back(cur);
    report.raw_last.push_back(raw[last]);
    report.successive_change.push_back(change);
    if (change > 1e-3) {
      throw NoConvergence("quadratic-form estimate did not settle (change " +
                          std::to_string(change) + ")");
    }
    return cur;
  };

  std::vector<double> diag(d);
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Unit(d, i);
    diag[i] = quadratic_form(e);
    report.q_hat(i, i) = diag[i];
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Vec e = Vec::Unit(d, i) + Vec::Unit(d, j);
      double both = quadratic_form(e);
      report.q_hat(i, j) = report.q_hat(j, i) = 0.5 * (both - diag[i] - diag[j]);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// catalog

namespace catalog {

namespace {
std::vector<SphericalAtom> symmetric_line(double w) {
  return {{Vec::Constant(1, 1.0), w}, {Vec::Constant(1, -1.0), w}};
}
} // namespace

LevyTriplet brownian(int dim, double sigma, double drift) {
  return {Vec::Constant(dim, drift), sigma * sigma * Mat::Identity(dim, dim), LevyMeasureSpec::zero(dim)};
}

LevyTriplet poisson(double lambda) {
  if (!(lambda > 0.0)) {
    throw InvalidRate("Poisson rate must be > 0");
  }
  return {Vec::Zero(1), Mat::Zero(1, 1),
          LevyMeasureSpec::finite_atomic(1, {{Vec::Constant(1, 1.0), lambda}})};
}

LevyTriplet compound_poisson_gaussian(double lambda, double s) {
  double c = lambda / (s * std::sqrt(2.0 * kPi));
  return {Vec::Zero(1), Mat::Zero(1, 1),
          LevyMeasureSpec::radial_density(1, RadialProfile::gaussian(c, s), symmetric_line(1.0))};
}

LevyTriplet symmetric_stable_density(double alpha, double c) {
  return {Vec::Zero(1), Mat::Zero(1, 1),
          LevyMeasureSpec::radial_density(1, RadialProfile::power(c, alpha), symmetric_line(1.0))};
}

LevyTriplet symmetric_stable(double alpha, double scale) {
  double w = scale / (2.0 * stable_cosine_integral(alpha));
  return {Vec::Zero(1), Mat::Zero(1, 1), LevyMeasureSpec::alpha_stable(1, alpha, symmetric_line(w))};
}

LevyTriplet gamma_process() {
  return {Vec::Constant(1, 1.0 - std::exp(-1.0)), Mat::Zero(1, 1),
          LevyMeasureSpec::radial_density(1, RadialProfile::exp_power(1.0, 1.0, 1.0),
                                          {{Vec::Constant(1, 1.0), 1.0}})};
}

double stable_cosine_integral(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw InvalidAlpha("alpha must lie in (0, 2), got " + std::to_string(alpha));
  }
  if (std::abs(alpha - 1.0) < 1e-15) {
    return kPi / 2.0;
  }
  return -boost::math::tgamma(-alpha) * std::cos(kPi * alpha / 2.0);
}

double symmetric_stable_density_constant(double alpha) {
  return 1.0 / (2.0 * stable_cosine_integral(alpha));
}

} // namespace catalog

} // namespace levytype
