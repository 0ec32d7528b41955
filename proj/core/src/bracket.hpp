#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace killingbeck::detail {

struct BracketRoot {
  double x = 0.0;
  double fx = 0.0;
  double lo = 0.0;  // [lo, hi] still brackets a sign change of f (or fx == 0)
  double hi = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Brent's method (bisection safeguarded inverse-quadratic/secant steps).
// Requires f(lo) and f(hi) of opposite sign. The iterate is always one end of
// the current bracket. Stops when the bracket half-width is below tol_x / 2
// and |f| <= tol_f, or when the bracket cannot shrink further in double
// precision.
template <class F>
BracketRoot brent_refine(F&& f, double lo, double hi, double f_lo, double f_hi,
                         double tol_x, double tol_f, int max_iterations) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double a = lo, b = hi, fa = f_lo, fb = f_hi;
  double c = a, fc = fa;
  double d = b - a, e = d;

  BracketRoot out;
  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it;
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double floor = 2.0 * eps * std::abs(b) + std::numeric_limits<double>::min();
    const double xm = 0.5 * (c - b);
    const bool tight = std::abs(xm) <= 0.5 * tol_x;
    if (fb == 0.0 || (tight && std::abs(fb) <= tol_f) || std::abs(xm) <= floor) {
      out.converged = fb == 0.0 || (tight && std::abs(fb) <= tol_f) ||
                      std::abs(fb) <= tol_f;
      break;
    }
    if (std::abs(e) >= floor && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(floor * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > floor ? d : std::copysign(floor, xm);
    fb = f(b);
  }
  out.x = b;
  out.fx = fb;
  out.lo = std::min(b, c);
  out.hi = std::max(b, c);
  return out;
}

}  // namespace killingbeck::detail
