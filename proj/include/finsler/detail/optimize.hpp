// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "finsler/types.hpp"

namespace finsler::detail {

// Golden-section minimum of f on [lo, hi]; returns the best value found.
inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         double tol, double* argmin = nullptr) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
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
  const double m = 0.5 * (a + b);
  if (argmin) *argmin = m;
  return f(m);
}

// Plain Nelder-Mead in 2D; good enough for refining valley minima of smooth
// scan fields.
inline double nelder_mead_2d(const std::function<double(const Vec&)>& f, const Vec& start,
                             double scale, int max_iter = 200, Vec* argmin = nullptr) {
  std::array<Vec, 3> p;
  std::array<double, 3> v;
  p[0] = start;
  p[1] = start + scale * Vec::Unit(2, 0);
  p[2] = start + scale * Vec::Unit(2, 1);
  for (int i = 0; i < 3; ++i) v[i] = f(p[i]);

  auto order = [&] {
    if (v[0] > v[1]) { std::swap(v[0], v[1]); std::swap(p[0], p[1]); }
    if (v[1] > v[2]) { std::swap(v[1], v[2]); std::swap(p[1], p[2]); }
    if (v[0] > v[1]) { std::swap(v[0], v[1]); std::swap(p[0], p[1]); }
  };

  for (int it = 0; it < max_iter; ++it) {
    order();
    if ((p[2] - p[0]).norm() < 1e-12) break;
    const Vec centroid = 0.5 * (p[0] + p[1]);
    const Vec refl = centroid + (centroid - p[2]);
    const double fr = f(refl);
    if (fr < v[0]) {
      const Vec exp = centroid + 2.0 * (centroid - p[2]);
      const double fe = f(exp);
      if (fe < fr) { p[2] = exp; v[2] = fe; } else { p[2] = refl; v[2] = fr; }
    } else if (fr < v[1]) {
      p[2] = refl;
      v[2] = fr;
    } else {
      const Vec con = centroid + 0.5 * (p[2] - centroid);
      const double fcn = f(con);
      if (fcn < v[2]) {
        p[2] = con;
        v[2] = fcn;
      } else {
        p[1] = p[0] + 0.5 * (p[1] - p[0]);
        p[2] = p[0] + 0.5 * (p[2] - p[0]);
        v[1] = f(p[1]);
        v[2] = f(p[2]);
      }
    }
  }
  order();
  if (argmin) *argmin = p[0];
  return v[0];
}

}  // namespace finsler::detail
