#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "levytype/types.hpp"

namespace levytype::quad {

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
};

//! Adaptive 15-point Gauss-Kronrod on a finite interval.
template <class F>
auto gauss_kronrod(F&& f, double a, double b, double rel_tol = 1e-10, unsigned max_depth = 10) {
  using R = decltype(f(a));
  Estimate<R> out;
  if (!(b > a)) {
    return out;
  }
  // Boost's error estimate misbehaves on very short intervals, so always
  // integrate over [0, 1].
  const double w = b - a;
  auto unit = [&](double t) { return f(a + w * t) * w; };
  out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      unit, 0.0, 1.0, max_depth, rel_tol, &out.error);
  return out;
}

//! Integral of f over [lo, hi) split along dyadic radii: annuli [2^-k-1, 2^-k)
//! below 1, shells [2^k, 2^k+1) above 1.
//!
//! `lo == 0` or `hi == inf` make the corresponding sum open-ended. It is
//! stopped once the last terms fall geometrically below `abs_tol`; the
//! geometric remainder is added and counted into the error. Throws
//! QuadratureDivergence when the sum does not settle.
template <class F>
auto dyadic_integral(F&& f, double lo, double hi, double abs_tol = 1e-14,
                     double rel_tol = 1e-10) {
  using R = decltype(f(1.0));
  Estimate<R> out;
  if (!(hi > lo)) {
    return out;
  }
  constexpr int kMaxTerms = 1000;
  constexpr int kMinTerms = 6;

  auto open_sum = [&](auto next_interval, double& err) {
    R acc{};
    R prev{};
    R prev_ratio{};
    double prev_mag = -1.0;
    int small_run = 0;
    int steady_run = 0;
    for (int k = 0; k < kMaxTerms; ++k) {
      auto [a, b] = next_interval(k);
      auto piece = gauss_kronrod(f, a, b, rel_tol);
      double mag = magnitude(piece.value);
      if (!std::isfinite(mag)) {
        break;
      }
      acc += piece.value;
      err += piece.error;
      double scale = std::max(abs_tol, rel_tol * magnitude(acc));
      if (mag == 0.0 && prev_mag == 0.0 && k >= kMinTerms) {
        return acc;
      }
      if (k >= 1 && prev_mag > 0.0) {
        R ratio = piece.value / prev;
        double rm = magnitude(ratio);
        // geometric remainder: exact for power-law pieces
        if (k >= 2 && rm < 0.999 && magnitude(ratio - prev_ratio) < 1e-9) {
          if (++steady_run >= 3) {
            R tail = piece.value * ratio / (R(1.0) - ratio);
            acc += tail;
            err += 1e-9 * magnitude(tail) / (1.0 - rm);
            return acc;
          }
        } else {
          steady_run = 0;
        }
        if (k >= kMinTerms && rm < 0.95 && mag * rm / (1.0 - rm) < scale) {
          if (++small_run >= 3) {
            R tail = piece.value * (rm / (1.0 - rm));
            acc += tail;
            err += magnitude(tail);
            return acc;
          }
        } else {
          small_run = 0;
        }
        prev_ratio = ratio;
      }
      prev = piece.value;
      prev_mag = mag;
    }
    throw QuadratureDivergence("dyadic sum did not converge on [" + std::to_string(lo) +
                               ", " + std::to_string(hi) + ")");
  };

  // below 1
  if (lo < 1.0) {
    double top = std::min(hi, 1.0);
    if (lo <= 0.0) {
      // annuli shrink to zero; first skip annuli above `top`
      int k0 = 0;
      while (std::ldexp(1.0, -k0 - 1) >= top) {
        ++k0;
      }
      auto next = [&](int k) {
        double a = std::ldexp(1.0, -(k0 + k) - 1);
        double b = (k == 0) ? top : std::ldexp(1.0, -(k0 + k));
        return std::pair{a, b};
      };
      out.value += open_sum(next, out.error);
    } else {
      double b = top;
      while (b > lo) {
        double a = std::max(lo, 0.5 * b);
        auto piece = gauss_kronrod(f, a, b, rel_tol);
        out.value += piece.value;
        out.error += piece.error;
        b = a;
      }
    }
  }
  // above 1
  if (hi > 1.0) {
    double start = std::max(lo, 1.0);
    if (std::isinf(hi)) {
      auto next = [&](int k) {
        double a = std::ldexp(start, k);
        return std::pair{a, 2.0 * a};
      };
      out.value += open_sum(next, out.error);
    } else {
      double a = start;
      while (a < hi) {
        double b = std::min(hi, 2.0 * a);
        auto piece = gauss_kronrod(f, a, b, rel_tol);
        out.value += piece.value;
        out.error += piece.error;
        a = b;
      }
    }
  }
  return out;
}

} // namespace levytype::quad
