// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace finsler::detail {

// Forward-mode scalar carrying first and second partials with respect to two
// seed variables. Enough for exact y-Hessians of the 2D closed-form metrics.
struct Dual2 {
  double v = 0.0;
  double gx = 0.0, gy = 0.0;
  double hxx = 0.0, hxy = 0.0, hyy = 0.0;

  Dual2() = default;
  Dual2(double value) : v(value) {}  // NOLINT(google-explicit-constructor)

  static Dual2 seed_x(double value) {
    Dual2 d(value);
    d.gx = 1.0;
    return d;
  }
  static Dual2 seed_y(double value) {
    Dual2 d(value);
    d.gy = 1.0;
    return d;
  }
};

inline Dual2 operator+(const Dual2& a, const Dual2& b) {
  Dual2 r;
  r.v = a.v + b.v;
  r.gx = a.gx + b.gx;
  r.gy = a.gy + b.gy;
  r.hxx = a.hxx + b.hxx;
  r.hxy = a.hxy + b.hxy;
  r.hyy = a.hyy + b.hyy;
  return r;
}

inline Dual2 operator-(const Dual2& a, const Dual2& b) {
  Dual2 r;
  r.v = a.v - b.v;
  r.gx = a.gx - b.gx;
  r.gy = a.gy - b.gy;
  r.hxx = a.hxx - b.hxx;
  r.hxy = a.hxy - b.hxy;
  r.hyy = a.hyy - b.hyy;
  return r;
}

inline Dual2 operator-(const Dual2& a) { return Dual2(0.0) - a; }

inline Dual2 operator*(const Dual2& a, const Dual2& b) {
  Dual2 r;
  r.v = a.v * b.v;
  r.gx = a.v * b.gx + b.v * a.gx;
  r.gy = a.v * b.gy + b.v * a.gy;
  r.hxx = a.v * b.hxx + b.v * a.hxx + 2.0 * a.gx * b.gx;
  r.hxy = a.v * b.hxy + b.v * a.hxy + a.gx * b.gy + a.gy * b.gx;
  r.hyy = a.v * b.hyy + b.v * a.hyy + 2.0 * a.gy * b.gy;
  return r;
}

inline Dual2 inv(const Dual2& b) {
  const double w = 1.0 / b.v, w2 = w * w, w3 = w2 * w;
  Dual2 r;
  r.v = w;
  r.gx = -b.gx * w2;
  r.gy = -b.gy * w2;
  r.hxx = -b.hxx * w2 + 2.0 * b.gx * b.gx * w3;
  r.hxy = -b.hxy * w2 + 2.0 * b.gx * b.gy * w3;
  r.hyy = -b.hyy * w2 + 2.0 * b.gy * b.gy * w3;
  return r;
}

inline Dual2 operator/(const Dual2& a, const Dual2& b) { return a * inv(b); }

inline Dual2 sqrt(const Dual2& a) {
  const double s = std::sqrt(a.v);
  const double i1 = 0.5 / s, i2 = -0.25 / (s * a.v);
  Dual2 r;
  r.v = s;
  r.gx = a.gx * i1;
  r.gy = a.gy * i1;
  r.hxx = a.hxx * i1 + a.gx * a.gx * i2;
  r.hxy = a.hxy * i1 + a.gx * a.gy * i2;
  r.hyy = a.hyy * i1 + a.gy * a.gy * i2;
  return r;
}

using std::sqrt;  // so templated code finds both overloads

}  // namespace finsler::detail
