#include "levytype/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "levytype/parallel.hpp"

namespace levytype {

JumpCounter::JumpCounter(std::function<bool(const Vec&)> contains, double exclusion_radius,
                         std::string label)
    : contains_(std::move(contains)), radius_(exclusion_radius), label_(std::move(label)) {
  if (!(exclusion_radius > 0.0)) {
    throw RegionTouchesOrigin("jump region needs an exclusion radius > 0");
  }
}

JumpCounter JumpCounter::annulus(double lo, double hi) {
  return {[lo, hi](const Vec& y) {
            double r = y.norm();
            return r >= lo && r < hi;
          },
          lo, "annulus"};
}

JumpCounter JumpCounter::point(Vec p) {
  double r = p.norm();
  return {[p](const Vec& y) { return (y - p).norm() <= 1e-12 * std::max(1.0, p.norm()); }, 0.5 * r,
          "point"};
}

JumpCounter JumpCounter::norm_above(double a) {
  return {[a](const Vec& y) { return y.norm() > a; }, a, "norm_above"};
}

bool JumpCounter::contains(const Vec& y) const {
  bool in = contains_(y);
  if (in && y.norm() < radius_) {
    throw RegionTouchesOrigin("jump of size " + std::to_string(y.norm()) +
                              " lies in the region but inside its exclusion radius");
  }
  return in;
}

std::size_t jump_measure(const CadlagPath& path, const JumpCounter& region, double t) {
  if (t < 0.0) {
    t = path.horizon();
  }
  std::size_t count = 0;
  for (const auto& j : path.jumps()) {
    if (j.time > t) {
      break;
    }
    if (region.contains(j.size)) {
      ++count;
    }
  }
  return count;
}

IntensityEstimate estimate_intensity(const Ensemble& ensemble, const JumpCounter& region, double t) {
  if (ensemble.size() == 0) {
    throw EmptyEnsemble("ensemble has no samples");
  }
  if (!(t > 0.0)) {
    throw InvalidArgument("InvalidArgument", "t must be > 0");
  }
  const auto& paths = ensemble.paths();
  double sum = 0.0;
  double sq = 0.0;
  for (const auto& p : paths) {
    double c = static_cast<double>(jump_measure(p, region, t)) / t;
    sum += c;
    sq += c * c;
  }
  const double n = static_cast<double>(paths.size());
  IntensityEstimate out;
  out.n = paths.size();
  out.nu_hat = sum / n;
  double var = n > 1 ? std::max(0.0, (sq - n * out.nu_hat * out.nu_hat) / (n - 1)) : 0.0;
  out.stderr_ = std::sqrt(var / n);
  return out;
}

CfEstimate empirical_cf(const Mat& samples, const std::vector<Vec>& xi_grid) {
  if (samples.cols() == 0) {
    throw EmptyEnsemble("no samples for the characteristic function");
  }
  CfEstimate out;
  out.n = static_cast<std::size_t>(samples.cols());
  out.xi = xi_grid;
  out.phi.resize(xi_grid.size());
  out.se.resize(xi_grid.size());
  const double n = static_cast<double>(out.n);
  parallel_for(xi_grid.size(), [&](std::size_t g) {
    require_same_dim(xi_grid[g].size(), samples.rows(), "xi");
    Eigen::RowVectorXd phase = xi_grid[g].transpose() * samples;
    double re = 0.0;
    double im = 0.0;
    for (Eigen::Index k = 0; k < phase.size(); ++k) {
      re += std::cos(phase(k));
      im += std::sin(phase(k));
    }
    Complex phi(re / n, im / n);
    out.phi[g] = phi;
    out.se[g] = std::sqrt(std::max(0.0, 1.0 - std::norm(phi)) / n);
  });
  return out;
}

CfEstimate empirical_cf(const Ensemble& ensemble, const std::vector<Vec>& xi_grid) {
  return empirical_cf(ensemble.endpoints(), xi_grid);
}

double StepFunction::operator()(double t) const {
  // (breaks[j], breaks[j+1]]
  auto it = std::lower_bound(breaks.begin(), breaks.end(), t);
  if (it == breaks.begin() || it == breaks.end()) {
    return 0.0;
  }
  return values[static_cast<std::size_t>(it - breaks.begin() - 1)];
}

void StepFunction::validate() const {
  if (breaks.size() != values.size() + 1) {
    throw UnsupportedF("step function needs one more break than values");
  }
  if (breaks.empty() || breaks.front() < 0.0) {
    throw UnsupportedF("step function must live on [0, inf)");
  }
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    if (!(breaks[i] > breaks[i - 1]) || !std::isfinite(breaks[i])) {
      throw UnsupportedF("step function breaks must be finite and strictly increasing");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw UnsupportedF("step function values must be finite");
    }
  }
}

CheckReport campbell_check(double lambda, const JumpLaw& mu, const StepFunction& f, std::size_t n,
                           std::uint64_t seed, std::uint64_t first_stream) {
  f.validate();
  if (mu.dim != 1) {
    throw UnsupportedF("Campbell check is implemented for real-valued jumps");
  }
  if (!mu.cf) {
    throw InvalidArgument("InvalidArgument", "jump law needs a characteristic function");
  }
  if (n == 0) {
    throw EmptyEnsemble("n must be >= 1");
  }
  // rhs: exact sum over the steps
  Complex exponent{};
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    double width = f.breaks[j + 1] - f.breaks[j];
    exponent += lambda * width * (mu.cf(Vec::Constant(1, f.values[j])) - 1.0);
  }
  CheckReport out;
  out.rhs = std::exp(exponent);
  out.n = n;

  const double T = f.breaks.back();
  std::vector<Complex> terms(n);
  parallel_for(n, [&](std::size_t k) {
    RandomSource rng(seed, first_stream + k);
    CadlagPath path = sample_compound_poisson(lambda, mu, T, rng);
    double integral = 0.0;
    for (const auto& j : path.jumps()) {
      integral += f(j.time) * j.size(0);
    }
    terms[k] = std::exp(Complex(0.0, integral));
  });
  Complex sum{};
  for (const auto& z : terms) {
    sum += z;
  }
  out.lhs = sum / static_cast<double>(n);
  out.se = std::sqrt(std::max(0.0, 1.0 - std::norm(out.lhs)) / static_cast<double>(n));
  out.pass = std::abs(out.lhs - out.rhs) <= 3.0 * out.se + 1e-12;
  return out;
}

IndependenceReport increment_independence_probe(const Ensemble& ensemble,
                                                const std::vector<double>& partition,
                                                const std::vector<Vec>& xi) {
  if (partition.size() != xi.size() || partition.empty()) {
    throw InvalidArgument("InvalidArgument", "need one xi per partition time");
  }
  const auto& paths = ensemble.paths();
  const std::size_t m = partition.size();
  const double n = static_cast<double>(paths.size());
  std::vector<Vec> eta(m);
  eta[m - 1] = xi[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) {
    eta[k] = eta[k + 1] + xi[k];
  }
  Complex joint{};
  std::vector<Complex> marginal(m);
  for (const auto& p : paths) {
    Vec prev = p.value_at(0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (!p.grid_index(partition[k])) {
        throw InvalidArgument("InvalidArgument", "partition time is not on the path grid");
      }
      Vec cur = p.value_at(partition[k]);
      double ph = eta[k].dot(cur - prev);
      total += ph;
      marginal[k] += std::exp(Complex(0.0, ph));
      prev = cur;
    }
    joint += std::exp(Complex(0.0, total));
  }
  IndependenceReport out;
  out.n = paths.size();
  out.joint = joint / n;
  out.product = 1.0;
  for (auto& z : marginal) {
    out.product *= z / n;
  }
  out.se = std::sqrt(std::max(0.0, 1.0 - std::norm(out.joint)) / n);
  out.pass = std::abs(out.joint - out.product) <= 3.0 * out.se + 1e-12;
  return out;
}

double total_variation_integer(const std::vector<long>& samples,
                               const std::function<double(long)>& pmf, long lo, long hi) {
  if (samples.empty()) {
    throw EmptyEnsemble("no samples");
  }
  std::map<long, double> freq;
  for (long s : samples) {
    freq[s] += 1.0;
  }
  const double n = static_cast<double>(samples.size());
  double tv = 0.0;
  double inside = 0.0;
  for (long k = lo; k <= hi; ++k) {
    double p = pmf(k);
    inside += p;
    auto it = freq.find(k);
    double q = it == freq.end() ? 0.0 : it->second / n;
    tv += std::abs(q - p);
  }
  for (const auto& [k, c] : freq) {
    if (k < lo || k > hi) {
      tv += c / n;
    }
  }
  tv += std::max(0.0, 1.0 - inside);
  return 0.5 * tv;
}

} // namespace levytype
