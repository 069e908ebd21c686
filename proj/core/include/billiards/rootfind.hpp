#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "billiards/errors.hpp"

namespace billiards {

/// Safeguarded Newton on a bracket [lo, hi] with f(lo) < 0 < f(hi) (or the
/// reverse). Newton steps that leave the bracket fall back to bisection.
/// Converges to |f| <= f_tol or a bracket shorter than x_tol.
template <typename F, typename DF>
double newton_bisect(F f, DF df, double lo, double hi, double flo, double fhi,
                     double f_tol, double x_tol, int max_iter = 200) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw ConvergenceError("newton_bisect: endpoints do not bracket a root",
                           std::min(std::abs(flo), std::abs(fhi)));
  }
  double x = 0.5 * (lo + hi);
  double fx = f(x);
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fx) <= f_tol) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (std::abs(hi - lo) <= x_tol) return 0.5 * (lo + hi);
    const double d = df(x);
    double xn = (d != 0.0) ? x - fx / d : std::numeric_limits<double>::quiet_NaN();
    const double a = std::min(lo, hi);
    const double b = std::max(lo, hi);
    if (!(xn > a && xn < b)) xn = 0.5 * (lo + hi);
    x = xn;
    fx = f(x);
  }
  if (std::abs(fx) <= 64.0 * f_tol) return x;
  throw ConvergenceError("newton_bisect: no convergence", std::abs(fx));
}

/// Plain bisection for a sign change of f on [lo, hi], to bracket width x_tol.
template <typename F>
double bisect(F f, double lo, double hi, double flo, double fhi, double x_tol,
              int max_iter = 400) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw ConvergenceError("bisect: endpoints do not bracket a root",
                           std::min(std::abs(flo), std::abs(fhi)));
  }
  for (int it = 0; it < max_iter && std::abs(hi - lo) > x_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

/// Golden-section maximization of a unimodal function on [a, b].
template <typename F>
double golden_max(F f, double a, double b, double x_tol, int max_iter = 200) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > x_tol; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace billiards
