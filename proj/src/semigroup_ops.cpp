#include "levytype/semigroup_ops.hpp"

#include <algorithm>
#include <cmath>

#include "levytype/parallel.hpp"
#include "levytype/quadrature.hpp"

namespace levytype {

namespace {

constexpr double kTaylorRadius = 1e-5;
constexpr std::uint64_t kDirectTag = 0xd1;
constexpr std::uint64_t kOuterTag = 0x0d;
constexpr std::uint64_t kInnerTag = 0x1d;

struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  const double n = static_cast<double>(v.size());
  for (double x : v) {
    m.mean += x;
  }
  m.mean /= n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) {
      ss += (x - m.mean) * (x - m.mean);
    }
    m.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return m;
}

} // namespace

// ---------------------------------------------------------------------------

TestFunction::TestFunction(std::vector<Term> terms) : dim_(0), terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw InvalidArgument("InvalidArgument", "test function needs at least one term");
  }
  dim_ = static_cast<int>(terms_.front().center.size());
  if (dim_ < 1) {
    throw DimensionMismatch("test function centre must have dimension >= 1");
  }
  for (const auto& t : terms_) {
    require_same_dim(t.center.size(), dim_, "test function centre");
    if (!(t.a >= 0.0) || !std::isfinite(t.a) || !std::isfinite(t.weight) || !t.center.allFinite()) {
      throw InvalidArgument("InvalidArgument", "Gaussian terms need finite weight, centre and a >= 0");
    }
  }
}

TestFunction TestFunction::gaussian(int dim, double a, std::optional<Vec> center, double weight) {
  if (!(a > 0.0)) {
    throw InvalidArgument("InvalidArgument", "Gaussian width parameter must be > 0");
  }
  return TestFunction({{weight, a, center ? *center : Vec::Zero(dim)}});
}

TestFunction TestFunction::constant(int dim, double c) { return TestFunction({{c, 0.0, Vec::Zero(dim)}}); }

double TestFunction::operator()(const Vec& x) const {
  require_same_dim(x.size(), dim_, "x");
  double v = 0.0;
  for (const auto& t : terms_) {
    v += t.weight * std::exp(-t.a * (x - t.center).squaredNorm());
  }
  return v;
}

Vec TestFunction::gradient(const Vec& x) const {
  Vec g = Vec::Zero(dim_);
  for (const auto& t : terms_) {
    Vec u = x - t.center;
    g += -2.0 * t.a * t.weight * std::exp(-t.a * u.squaredNorm()) * u;
  }
  return g;
}

Mat TestFunction::hessian(const Vec& x) const {
  Mat h = Mat::Zero(dim_, dim_);
  for (const auto& t : terms_) {
    Vec u = x - t.center;
    double e = t.weight * std::exp(-t.a * u.squaredNorm());
    h += e * (4.0 * t.a * t.a * u * u.transpose() - 2.0 * t.a * Mat::Identity(dim_, dim_));
  }
  return h;
}

Complex TestFunction::fourier(const Vec& xi) const {
  require_same_dim(xi.size(), dim_, "xi");
  Complex v{};
  const double d = static_cast<double>(dim_);
  for (const auto& t : terms_) {
    if (t.a == 0.0) {
      continue;
    }
    double amp = t.weight * std::pow(2.0 * kPi, -d) * std::pow(kPi / t.a, d / 2.0) *
                 std::exp(-xi.squaredNorm() / (4.0 * t.a));
    v += amp * std::exp(Complex(0.0, -xi.dot(t.center)));
  }
  return v;
}

bool TestFunction::has_constant_part() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.a == 0.0; });
}

double TestFunction::constant_part() const {
  double c = 0.0;
  for (const auto& t : terms_) {
    if (t.a == 0.0) {
      c += t.weight;
    }
  }
  return c;
}

TestFunction TestFunction::shifted(const Vec& h) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) {
    t.center -= h;
  }
  return TestFunction(std::move(out));
}

TestFunction TestFunction::operator+(const TestFunction& other) const {
  require_same_dim(other.dim_, dim_, "test function");
  std::vector<Term> out = terms_;
  out.insert(out.end(), other.terms_.begin(), other.terms_.end());
  return TestFunction(std::move(out));
}

TestFunction TestFunction::scaled(double c) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) {
    t.weight *= c;
  }
  return TestFunction(std::move(out));
}

namespace {

template <class F>
void for_grid(int dim, double half_width, int points, F&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  Vec x(dim);
  const double step = 2.0 * half_width / (points - 1);
  while (true) {
    for (int i = 0; i < dim; ++i) {
      x(i) = -half_width + step * idx[static_cast<std::size_t>(i)];
    }
    visit(x);
    int i = 0;
    while (i < dim && ++idx[static_cast<std::size_t>(i)] == points) {
      idx[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == dim) {
      return;
    }
  }
}

} // namespace

TestFunction::Certificate TestFunction::certificate(double half_width, int points_per_axis) const {
  if (dim_ > 2) {
    points_per_axis = std::min(points_per_axis, 31);
  }
  Certificate c;
  double sup_g = 0.0;
  double sup_h = 0.0;
  // shift the grid onto the centres' span so the peaks are probed
  Vec mid = Vec::Zero(dim_);
  for (const auto& t : terms_) {
    mid += t.center;
  }
  mid /= static_cast<double>(terms_.size());
  for_grid(dim_, half_width, points_per_axis, [&](const Vec& p) {
    Vec x = p + mid;
    c.sup_norm = std::max(c.sup_norm, std::abs((*this)(x)));
    sup_g = std::max(sup_g, gradient(x).cwiseAbs().maxCoeff());
    sup_h = std::max(sup_h, hessian(x).cwiseAbs().maxCoeff());
  });
  for (const auto& t : terms_) {
    c.sup_norm = std::max(c.sup_norm, std::abs((*this)(t.center)));
    sup_h = std::max(sup_h, hessian(t.center).cwiseAbs().maxCoeff());
  }
  c.c2_norm = c.sup_norm + sup_g + sup_h;
  return c;
}

double TestFunction::derivative_mismatch(double half_width, int points_per_axis) const {
  const double h = 1e-4;
  double worst = 0.0;
  for_grid(dim_, half_width, points_per_axis, [&](const Vec& x) {
    Vec g = gradient(x);
    Mat H = hessian(x);
    for (int i = 0; i < dim_; ++i) {
      Vec e = Vec::Unit(dim_, i) * h;
      double fd = ((*this)(x + e) - (*this)(x - e)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - g(i)));
      Vec gd = (gradient(x + e) - gradient(x - e)) / (2.0 * h);
      worst = std::max(worst, (gd - H.col(i)).cwiseAbs().maxCoeff());
    }
  });
  return worst;
}

// ---------------------------------------------------------------------------

OperatorValue fourier_multiplier(const std::function<Complex(const Vec&)>& phi,
                                 const TestFunction& f, const Vec& x) {
  const int d = f.dim();
  require_same_dim(x.size(), d, "x");
  if (d > 2) {
    throw InvalidArgument("InvalidArgument", "Fourier generator quadrature supports d <= 2");
  }
  OperatorValue out;
  if (f.has_constant_part()) {
    out.value += (phi(Vec::Zero(d)) * f.constant_part()).real();
  }
  constexpr int kPieces = 8;
  for (const auto& t : f.terms()) {
    if (t.a == 0.0) {
      continue;
    }
    TestFunction single({t});
    const double L = std::sqrt(4.0 * t.a * 50.0);
    auto integrand = [&](const Vec& xi) {
      return phi(xi) * single.fourier(xi) * std::exp(Complex(0.0, xi.dot(x)));
    };
    Complex acc{};
    double err = 0.0;
    const double w = L / kPieces;
    if (d == 1) {
      for (int p = -kPieces; p < kPieces; ++p) {
        auto g = [&](double s) { return integrand(Vec::Constant(1, s)); };
        auto r = quad::gauss_kronrod(g, p * w, (p + 1) * w, 1e-12);
        acc += r.value;
        err += r.error;
      }
    } else {
      for (int p = -kPieces; p < kPieces; ++p) {
        auto outer = [&](double s1) {
          Complex inner{};
          for (int q = -kPieces; q < kPieces; ++q) {
            auto g = [&](double s2) {
              Vec xi(2);
              xi << s1, s2;
              return integrand(xi);
            };
            inner += quad::gauss_kronrod(g, q * w, (q + 1) * w, 1e-10).value;
          }
          return inner;
        };
        auto r = quad::gauss_kronrod(outer, p * w, (p + 1) * w, 1e-10);
        acc += r.value;
        err += r.error;
      }
    }
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
      throw QuadratureDivergence("Fourier integral of the generator is not finite");
    }
    out.value += acc.real();
    out.error += err + std::abs(acc.imag());
  }
  return out;
}

OperatorValue generator_fourier(const CharacteristicExponent& psi, const TestFunction& f, const Vec& x) {
  require_same_dim(psi.dim(), f.dim(), "exponent");
  return fourier_multiplier([&](const Vec& xi) { return -psi(xi); }, f, x);
}

OperatorValue generator_integro(const LevyTriplet& triplet, const TestFunction& f, const Vec& x) {
  const int d = f.dim();
  require_same_dim(triplet.dim(), d, "triplet");
  require_same_dim(x.size(), d, "x");
  const double fx = f(x);
  const Vec g = f.gradient(x);
  const Mat H = f.hessian(x);
  OperatorValue out;
  out.value = triplet.drift().dot(g) + 0.5 * (triplet.diffusion().cwiseProduct(H)).sum();

  const auto& nu = triplet.nu();
  if (nu.is_zero()) {
    return out;
  }
  auto bracket = [&](const Vec& y) {
    double v = f(x + y) - fx;
    if (y.norm() < 1.0) {
      v -= g.dot(y);
    }
    return v;
  };
  if (const auto* at = std::get_if<LevyMeasureSpec::FiniteAtomic>(&nu.variant())) {
    for (const auto& a : at->atoms) {
      out.value += a.mass * bracket(a.point);
    }
    return out;
  }
  const double total = nu.angular_mass();
  const double cut = std::max(kTaylorRadius, nu.floor());
  const double small = nu.second_moment_below(cut) / total;
  for (const auto& a : nu.directions()) {
    const Vec& z = a.direction;
    double taylor = 0.5 * z.dot(H * z) * small;
    auto h = [&](double r) { return bracket(r * z) * nu.radial(r); };
    auto r = quad::dyadic_integral(h, cut, std::numeric_limits<double>::infinity(), 1e-15, 1e-10);
    if (!std::isfinite(r.value)) {
      throw QuadratureDivergence("jump integral of the generator is not finite");
    }
    out.value += a.weight * (taylor + r.value);
    out.error += a.weight * r.error;
  }
  return out;
}

OperatorValue generator_integro(const StateSymbol& q, const TestFunction& f, const Vec& x) {
  OperatorValue out = generator_integro(q.triplet(x), f, x);
  out.value -= q.q0(x) * f(x);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_symmetric(const ProcessSampler& sampler) {
  auto psi = sampler.exponent();
  if (!psi) {
    throw InvalidArgument("InvalidArgument", "antithetic sampling needs a Lévy sampler");
  }
  for (const auto& u : {1.0, -1.0}) {
    for (double s : {0.3, 1.0, 3.0}) {
      for (int i = 0; i < sampler.dim(); ++i) {
        Complex v = (*psi)(Vec(u * s * Vec::Unit(sampler.dim(), i)));
        if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v))) {
          throw InvalidArgument("InvalidArgument", "antithetic sampling needs a symmetric exponent");
        }
      }
    }
  }
}

} // namespace

MonteCarloValue semigroup_apply(const ProcessSampler& sampler, const TestFunction& f, double t,
                                const Vec& x, std::size_t n, std::uint64_t seed,
                                std::uint64_t first_stream, bool antithetic) {
  require_same_dim(x.size(), sampler.dim(), "x");
  require_same_dim(f.dim(), sampler.dim(), "test function");
  if (!(t >= 0.0)) {
    throw InvalidArgument("InvalidArgument", "t must be >= 0");
  }
  if (n == 0) {
    throw EmptyEnsemble("n must be >= 1");
  }
  MonteCarloValue out;
  out.n = n;
  if (t == 0.0) {
    out.value = f(x);
    return out;
  }
  if (antithetic) {
    require_symmetric(sampler);
  }
  std::vector<double> v(n);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(seed, first_stream + k);
    Vec y = sampler.sample_endpoint(x, t, rng);
    v[k] = antithetic ? 0.5 * (f(y) + f(Vec(2.0 * x - y))) : f(y);
  });
  Moments m = moments(v);
  out.value = m.mean;
  out.se = m.se;
  return out;
}

GeneratorLimitReport generator_limit_check(const ProcessSampler& sampler, const TestFunction& f,
                                           const Vec& x, const std::vector<double>& t_grid,
                                           double reference, std::size_t n, std::uint64_t seed,
                                           std::optional<double> expected_slope, bool antithetic,
                                           double rel_tol) {
  if (t_grid.size() < 2) {
    throw InvalidArgument("InvalidArgument", "need at least two times");
  }
  const std::size_t m = t_grid.size();
  for (double t : t_grid) {
    if (!(t > 0.0)) {
      throw InvalidArgument("InvalidArgument", "limit check times must be > 0");
    }
  }
  if (antithetic) {
    require_symmetric(sampler);
  }
  const double fx = f(x);
  // common streams across t keep the quotients comparable
  std::vector<double> q(n * m);
  parallel_for(n, [&](std::size_t k) {
    for (std::size_t j = 0; j < m; ++j) {
      RandomSource rng(seed, k);
      Vec y = sampler.sample_endpoint(x, t_grid[j], rng);
      double v = antithetic ? 0.5 * (f(y) + f(Vec(2.0 * x - y))) : f(y);
      q[k * m + j] = (v - fx) / t_grid[j];
    }
  });
  GeneratorLimitReport out;
  out.reference = reference;
  out.expected_slope = expected_slope;
  double st = 0.0;
  double stt = 0.0;
  for (double t : t_grid) {
    st += t;
    stt += t * t;
  }
  const double md = static_cast<double>(m);
  const double det = md * stt - st * st;
  std::vector<double> per_path_limit(n, 0.0);
  std::vector<double> per_path_slope(n, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> col(n);
    const double wa = (stt - t_grid[j] * st) / det;
    const double wb = (md * t_grid[j] - st) / det;
    for (std::size_t k = 0; k < n; ++k) {
      col[k] = q[k * m + j];
      per_path_limit[k] += wa * col[k];
      per_path_slope[k] += wb * col[k];
    }
    Moments mj = moments(col);
    out.points.push_back({t_grid[j], mj.mean, mj.se, mj.mean - reference});
  }
  Moments ml = moments(per_path_limit);
  out.limit = ml.mean;
  out.limit_se = ml.se;
  out.fitted_slope = moments(per_path_slope).mean;
  out.pass = std::abs(out.limit - reference) <= std::max(3.0 * ml.se, rel_tol * std::abs(reference));
  if (expected_slope) {
    for (const auto& p : out.points) {
      double allowed = 3.0 * p.se + 0.5 * std::abs(*expected_slope) * p.t + 1e-12;
      if (std::abs(p.residual - *expected_slope * p.t) > allowed) {
        out.pass = false;
      }
    }
  }
  return out;
}

MonteCarloValue resolvent_apply(const ProcessSampler& sampler, const TestFunction& f, double lambda,
                                const Vec& x, std::size_t n, std::uint64_t seed, double time_cap,
                                std::uint64_t first_stream) {
  require_same_dim(x.size(), sampler.dim(), "x");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidRate("resolvent parameter must be finite and > 0");
  }
  if (n == 0) {
    throw EmptyEnsemble("n must be >= 1");
  }
  std::vector<double> v(n);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(seed, first_stream + k);
    double e = rng.exponential(lambda);
    v[k] = e > time_cap ? 0.0 : f(sampler.sample_endpoint(x, e, rng)) / lambda;
  });
  Moments m = moments(v);
  return {m.mean, m.se, n};
}

DissipativityReport dissipativity_check(const std::function<double(const Vec&)>& generator,
                                        const TestFunction& f, double lambda,
                                        const std::vector<Vec>& probes, double tol) {
  if (!(lambda > 0.0)) {
    throw InvalidRate("lambda must be > 0");
  }
  DissipativityReport out;
  double sup_f = 0.0;
  for (const auto& x : probes) {
    double fx = f(x);
    sup_f = std::max(sup_f, std::abs(fx));
    out.lhs = std::max(out.lhs, std::abs(lambda * fx - generator(x)));
  }
  out.rhs = lambda * sup_f;
  out.pass = out.lhs >= out.rhs - tol;
  return out;
}

DynkinReport dynkin_check(const ProcessSampler& sampler, const TestFunction& f,
                          const std::function<double(const Vec&)>& generator, const Vec& x,
                          double r, std::size_t n, double time_cap, std::uint64_t seed,
                          std::uint64_t first_stream) {
  require_same_dim(f.dim(), sampler.dim(), "test function");
  return dynkin_check(sampler, std::function<double(const Vec&)>([&f](const Vec& y) { return f(y); }),
                      generator, x, r, n, time_cap, seed, first_stream);
}

DynkinReport dynkin_check(const ProcessSampler& sampler, const std::function<double(const Vec&)>& f,
                          const std::function<double(const Vec&)>& generator, const Vec& x,
                          double r, std::size_t n, double time_cap, std::uint64_t seed,
                          std::uint64_t first_stream) {
  require_same_dim(x.size(), sampler.dim(), "x");
  if (!(r > 0.0) || !(time_cap > 0.0)) {
    throw InvalidArgument("InvalidArgument", "need r > 0 and time_cap > 0");
  }
  if (n < 2) {
    throw EmptyEnsemble("need at least two paths");
  }
  const double fx = f(x);
  std::vector<double> lhs(n);
  std::vector<double> rhs(n);
  std::vector<double> diff(n);
  std::vector<double> tau(n);
  std::vector<unsigned char> censored(n);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(seed, first_stream + k);
    StoppedSample s = sampler.sample_stopped(x, {time_cap}, r, rng, &generator);
    lhs[k] = f(s.final_position) - fx;
    rhs[k] = s.running_integral;
    diff[k] = lhs[k] - rhs[k];
    tau[k] = s.exited ? s.tau : time_cap;
    censored[k] = !s.exited;
  });
  DynkinReport out;
  out.n = n;
  double c = 0.0;
  for (auto v : censored) {
    c += v;
  }
  out.censored_fraction = c / static_cast<double>(n);
  if (out.censored_fraction > 0.01) {
    throw Censored(std::to_string(100.0 * out.censored_fraction) +
                   "% of paths did not exit before the time cap");
  }
  Moments ml = moments(lhs);
  Moments mr = moments(rhs);
  Moments md = moments(diff);
  out.lhs = ml.mean;
  out.rhs = mr.mean;
  out.lhs_se = ml.se;
  out.rhs_se = mr.se;
  out.se = md.se;
  out.mean_exit = moments(tau).mean;
  out.pass = std::abs(md.mean) <= 3.0 * md.se + 1e-12;
  return out;
}

MartingaleReport exponential_martingale_check(const ProcessSampler& sampler, const Vec& xi,
                                              const std::vector<double>& partition, std::size_t n,
                                              std::uint64_t seed, std::uint64_t first_stream) {
  auto psi = sampler.exponent();
  if (!psi) {
    throw InvalidArgument("InvalidArgument", "martingale check needs a Lévy sampler with an exponent");
  }
  const int d = sampler.dim();
  require_same_dim(xi.size(), d, "xi");
  if (partition.size() < 2) {
    throw InvalidArgument("InvalidArgument", "need at least two partition times");
  }
  if (n < 2) {
    throw EmptyEnsemble("need at least two paths");
  }
  const Complex p = (*psi)(xi);
  const std::size_t m = partition.size();
  const bool start_at_zero = partition.front() == 0.0;
  std::vector<double> times(partition.begin() + (start_at_zero ? 1 : 0), partition.end());
  const Vec x0 = Vec::Zero(d);
  constexpr std::size_t kG = 4;
  // products (M_{k+1} - M_k) conj(g_k) per path
  std::vector<Complex> prod(n * (m - 1) * kG);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(seed, first_stream + k);
    std::vector<Vec> obs;
    if (start_at_zero) {
      obs.push_back(x0);
    }
    StoppedSample s =
        sampler.sample_stopped(x0, times, std::numeric_limits<double>::infinity(), rng);
    obs.insert(obs.end(), s.observed.begin(), s.observed.end());
    for (std::size_t j = 0; j + 1 < m; ++j) {
      const Vec& a = obs[j];
      const Vec& b = obs[j + 1];
      Complex ma = std::exp(Complex(0.0, xi.dot(a)) + partition[j] * p);
      Complex mb = std::exp(Complex(0.0, xi.dot(b)) + partition[j + 1] * p);
      Complex dm = mb - ma;
      Complex g[kG] = {1.0, std::exp(Complex(0.0, a.sum())), a(0) > 0.0 ? 1.0 : 0.0, std::cos(a(0))};
      for (std::size_t q = 0; q < kG; ++q) {
        prod[(k * (m - 1) + j) * kG + q] = dm * std::conj(g[q]);
      }
    }
  });
  MartingaleReport out;
  out.n = n;
  const double nd = static_cast<double>(n);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    for (std::size_t q = 0; q < kG; ++q) {
      Complex mean{};
      for (std::size_t k = 0; k < n; ++k) {
        mean += prod[(k * (m - 1) + j) * kG + q];
      }
      mean /= nd;
      double var = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        var += std::norm(prod[(k * (m - 1) + j) * kG + q] - mean);
      }
      double se = std::sqrt(var / (nd - 1.0) / nd);
      double score = se > 0.0 ? std::abs(mean) / se : (std::abs(mean) > 1e-12 ? 1e300 : 0.0);
      out.max_score = std::max(out.max_score, score);
      ++out.tests;
    }
  }
  out.pass = out.max_score <= 3.0;
  return out;
}

ChapmanKolmogorovReport chapman_kolmogorov_check(const ProcessSampler& sampler,
                                                 const TestFunction& f, const Vec& x, double s,
                                                 double t, std::size_t outer, std::size_t inner,
                                                 std::uint64_t seed) {
  require_same_dim(x.size(), sampler.dim(), "x");
  if (!(s >= 0.0) || !(t >= 0.0)) {
    throw InvalidArgument("InvalidArgument", "s and t must be >= 0");
  }
  if (outer < 2 || inner < 1) {
    throw EmptyEnsemble("need at least two outer and one inner path");
  }
  const std::size_t n_direct = outer * inner;
  std::vector<double> direct(n_direct);
  parallel_for(n_direct, [&](std::size_t k) {
    RandomSource rng = RandomSource(seed, k).derive(kDirectTag);
    direct[k] = s + t > 0.0 ? f(sampler.sample_endpoint(x, s + t, rng)) : f(x);
  });
  ChapmanKolmogorovReport out;
  Moments md = moments(direct);
  out.direct = md.mean;
  if (s == 0.0) {
    out.nested = md.mean;
    out.se = md.se;
    out.pass = true;
    return out;
  }
  std::vector<double> nested(outer);
  parallel_for(outer, [&](std::size_t i) {
    RandomSource rng = RandomSource(seed, i).derive(kOuterTag);
    Vec y = sampler.sample_endpoint(x, s, rng);
    double acc = 0.0;
    for (std::size_t j = 0; j < inner; ++j) {
      RandomSource r2 = RandomSource(seed, i * inner + j).derive(kInnerTag);
      acc += t > 0.0 ? f(sampler.sample_endpoint(y, t, r2)) : f(y);
    }
    nested[i] = acc / static_cast<double>(inner);
  });
  Moments mn = moments(nested);
  out.nested = mn.mean;
  out.se = std::sqrt(md.se * md.se + mn.se * mn.se);
  out.pass = std::abs(out.direct - out.nested) <= 3.0 * out.se + 1e-12;
  return out;
}

} // namespace levytype
