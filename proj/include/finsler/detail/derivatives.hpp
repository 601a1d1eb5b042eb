// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>

#include "finsler/types.hpp"

namespace finsler::detail {

// Central differences with one Richardson pass (effectively 4th order).

template <class F>
double diff1(F&& f, double h) {
  auto d = [&](double s) { return (f(s) - f(-s)) / (2.0 * s); };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

template <class F>
double diff2(F&& f, double f0, double h) {
  auto d = [&](double s) { return (f(s) - 2.0 * f0 + f(-s)) / (s * s); };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

// Mixed second derivative of f(s1, s2) at (0, 0).
template <class F>
double cross2(F&& f, double h) {
  auto d = [&](double s) {
    return (f(s, s) - f(s, -s) - f(-s, s) + f(-s, -s)) / (4.0 * s * s);
  };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& y,
                       double step_rel = 1e-5) {
  const double h = step_rel * std::max(1.0, y.norm());
  Vec g(y.size()), yw = y;
  for (int k = 0; k < y.size(); ++k) {
    const double yk = y[k];
    g[k] = diff1(
        [&](double s) {
          yw[k] = yk + s;
          const double v = f(yw);
          yw[k] = yk;
          return v;
        },
        h);
  }
  return g;
}

// Hessian of f by second central differences, symmetrized.
inline Mat fd_hessian(const std::function<double(const Vec&)>& f, const Vec& y, double step) {
  const int n = static_cast<int>(y.size());
  Mat h2(n, n);
  Vec yw = y;
  const double f0 = f(y);
  for (int i = 0; i < n; ++i) {
    const double yi = y[i];
    h2(i, i) = diff2(
        [&](double s) {
          yw[i] = yi + s;
          const double v = f(yw);
          yw[i] = yi;
          return v;
        },
        f0, step);
    for (int j = i + 1; j < n; ++j) {
      const double yj = y[j];
      const double c = cross2(
          [&](double s1, double s2) {
            yw[i] = yi + s1;
            yw[j] = yj + s2;
            const double v = f(yw);
            yw[i] = yi;
            yw[j] = yj;
            return v;
          },
          step);
      h2(i, j) = c;
      h2(j, i) = c;
    }
  }
  return h2;
}

// Limit of g(t) as t -> 0+ from samples at t, t/10, t/100 (Richardson, ratio 10).
template <class G>
double extrapolate_to_zero(G&& g, double t) {
  const double a = g(t), b = g(t / 10.0), c = g(t / 100.0);
  const double r1 = (10.0 * b - a) / 9.0;
  const double r2 = (10.0 * c - b) / 9.0;
  return (100.0 * r2 - r1) / 99.0;
}

}  // namespace finsler::detail
