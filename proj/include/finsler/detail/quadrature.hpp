// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>

#include "finsler/types.hpp"

namespace finsler::detail {

// Gauss-Kronrod 7-15 pair on [a, b].
inline std::pair<double, double> gk15(const std::function<double(double)>& f, double a,
                                      double b) {
  static const double xgk[8] = {
      0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
      0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
  static const double wgk[8] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
      0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
  static const double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                               0.417959183673469};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = wgk[7] * fc, g = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double fl = f(c - h * xgk[i]), fr = f(c + h * xgk[i]);
    k += wgk[i] * (fl + fr);
    if (i % 2 == 1) g += wg[i / 2] * (fl + fr);
  }
  return {k * h, std::abs(k - g) * h};
}

inline double gk_recurse(const std::function<double(double)>& f, double a, double b, double tol,
                         int depth) {
  const auto [v, e] = gk15(f, a, b);
  if (e <= tol || depth >= 52) {
    if (depth >= 52 && e > 1e3 * tol)
      fail(Err::IntegrationFailure, "adaptive quadrature: depth exhausted");
    return v;
  }
  const double m = 0.5 * (a + b);
  return gk_recurse(f, a, m, 0.5 * tol, depth + 1) + gk_recurse(f, m, b, 0.5 * tol, depth + 1);
}

/// Adaptive Gauss-Kronrod integral of f over [a, b] to a relative tolerance.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10) {
  const auto [v0, e0] = gk15(f, a, b);
  (void)e0;
  const double tol = std::max(rel_tol * std::abs(v0), 1e-300);
  return gk_recurse(f, a, b, tol, 0);
}

}  // namespace finsler::detail
