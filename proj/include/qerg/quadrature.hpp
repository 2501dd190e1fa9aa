#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "qerg/errors.hpp"

namespace qerg {

namespace detail {

template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol,
                            int depth, int min_depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= min_depth && std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth >= max_depth) {
    std::ostringstream msg;
    msg << "adaptive Simpson did not converge: interval [" << a << ", " << b
        << "], depth " << depth << ", residual " << std::abs(delta) / 15.0
        << " > tol " << tol;
    throw NumericalError(msg.str());
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1,
                              min_depth, max_depth) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth + 1, min_depth, max_depth);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
/// abs_tol. Throws NumericalError with diagnostics when the tolerance is
/// not met at max_depth subdivisions.
///
/// Long intervals are force-split down to panels of length ~1/8 before the
/// acceptance test applies: the Richardson estimate at a coarse stencil can
/// be fooled by cancellation across a feature it never samples.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol = 1e-10,
                        int max_depth = 40) {
  if (!(b >= a)) throw DomainError("adaptive_simpson: requires b >= a");
  if (a == b) return 0.0;
  const int min_depth = std::clamp(
      static_cast<int>(std::ceil(std::log2((b - a) / 0.125))), 0, 12);
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, 0,
                                      min_depth, max_depth);
}

}  // namespace qerg
