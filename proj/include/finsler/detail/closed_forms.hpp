// SPDX-License-Identifier: Apache-2.0
//
// Closed-form metric evaluators templated on the scalar carried by y, so the
// same expressions serve plain evaluation (double) and exact y-derivatives
// (Dual2 seeds). Base points and parameters stay double.
#pragma once

#include <cmath>

#include "finsler/detail/dual2.hpp"
#include "finsler/types.hpp"

namespace finsler::detail::closed {

template <class T>
struct XY {
  double x1, x2;
  T y1, y2;

  double xx() const { return x1 * x1 + x2 * x2; }
  T yy() const { return y1 * y1 + y2 * y2; }
  T xy() const { return x1 * y1 + x2 * y2; }
};

template <class T>
T funk_ball(const XY<T>& p) {
  const double b = 1.0 - p.xx();
  const T q = b * p.yy() + p.xy() * p.xy();
  return (sqrt(q) + p.xy()) / T(b);
}

template <class T>
T berwald(const XY<T>& p) {
  const double b = 1.0 - p.xx();
  const T q = sqrt(b * p.yy() + p.xy() * p.xy());
  const T s = q + p.xy();
  return s * s / (T(b * b) * q);
}

template <class T>
T riemann(double lambda, const XY<T>& p) {
  const double d = 1.0 + lambda * p.xx();
  const T q = p.yy() + lambda * (p.xx() * p.yy() - p.xy() * p.xy());
  return sqrt(q) / T(d);
}

template <class T>
T bryant(double alpha, const XY<T>& p) {
  const double c2 = std::cos(2.0 * alpha), s2 = std::sin(2.0 * alpha);
  const double xx = p.xx();
  const T yy = p.yy(), xy = p.xy();
  const T B = c2 * yy + xx * yy - xy * xy;
  const T A = B * B + (s2 * s2) * (yy * yy);
  const T C = s2 * xy;
  const double D = xx * xx + 2.0 * xx * c2 + 1.0;
  return sqrt((sqrt(A) + B) / T(2.0 * D) + (C / T(D)) * (C / T(D))) + C / T(D);
}

// Randers K=0 family, psi = phi = |y| + <a, y>.
template <class T>
struct RandersK0 {
  double a1, a2;

  T ay(const XY<T>& p) const { return a1 * p.y1 + a2 * p.y2; }
  double ax(const XY<T>& p) const { return a1 * p.x1 + a2 * p.x2; }

  T A(const XY<T>& p) const {
    const double oax = 1.0 - ax(p);
    const T ayv = ay(p);
    return (oax * oax - p.xx()) * (p.yy() - ayv * ayv) +
           (p.xy() + oax * ayv) * (p.xy() + oax * ayv);
  }
  double B(const XY<T>& p) const {
    const double oax = 1.0 - ax(p);
    return oax * oax - p.xx();
  }
  T P(const XY<T>& p) const {
    return (sqrt(A(p)) + (1.0 - ax(p)) * ay(p) + p.xy()) / T(B(p));
  }
  // 1 + x^k P_{y^k}; the cross term is (1-<a,x>)<x,y> + |x|^2 <a,y>.
  T factor(const XY<T>& p) const {
    const double oax = 1.0 - ax(p);
    return (oax * p.xy() + p.xx() * ay(p)) / (sqrt(A(p)) * T(B(p))) + T(oax / B(p));
  }
  T F(const XY<T>& p) const { return P(p) * factor(p); }
};

// Randers K=-1 family, psi = |y| + <a, y>, phi = c psi: the signed solutions
// are the K=0 P-formula at arguments scaled by (c +- 1).
template <class T>
struct RandersKm1 {
  double a1, a2, c;

  T phi_pm(double s, const XY<T>& p) const {
    const RandersK0<T> k0{a1, a2};
    const XY<T> q{s * p.x1, s * p.x2, s * p.y1, s * p.y2};
    return k0.P(q);
  }
  T F(const XY<T>& p) const {
    return 0.5 * (phi_pm(c + 1.0, p) - phi_pm(c - 1.0, p));
  }
  T P(const XY<T>& p) const {
    return 0.5 * (phi_pm(c + 1.0, p) + phi_pm(c - 1.0, p));
  }
};

/// Exact fundamental tensor g = 1/2 [F^2]_{yy} of a templated 2D evaluator.
template <class Fn>
Mat exact_g2(Fn&& eval, double x1, double x2, double y1, double y2) {
  XY<Dual2> p{x1, x2, Dual2::seed_x(y1), Dual2::seed_y(y2)};
  const Dual2 F = eval(p);
  const Dual2 F2 = F * F;
  Mat g(2, 2);
  g << 0.5 * F2.hxx, 0.5 * F2.hxy, 0.5 * F2.hxy, 0.5 * F2.hyy;
  return g;
}

}  // namespace finsler::detail::closed
