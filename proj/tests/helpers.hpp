// SPDX-License-Identifier: Apache-2.0
//
// Test-local oracles, written straight from the closed formulas and kept
// independent of the library implementation paths they check.
#pragma once

#include <cmath>
#include <random>

#include "finsler/types.hpp"

namespace oracle {

using finsler::Vec;

inline double sq(double v) { return v * v; }

// Funk metric of the unit Euclidean ball.
inline double funk_ball(const Vec& x, const Vec& y) {
  const double q = (1.0 - x.squaredNorm()) * y.squaredNorm() + sq(x.dot(y));
  return (std::sqrt(q) + x.dot(y)) / (1.0 - x.squaredNorm());
}

inline double berwald(const Vec& x, const Vec& y) {
  const double q = std::sqrt((1.0 - x.squaredNorm()) * y.squaredNorm() + sq(x.dot(y)));
  return sq(q + x.dot(y)) / (sq(1.0 - x.squaredNorm()) * q);
}

inline double riemann(double lambda, const Vec& x, const Vec& y) {
  return std::sqrt(y.squaredNorm() +
                   lambda * (x.squaredNorm() * y.squaredNorm() - sq(x.dot(y)))) /
         (1.0 + lambda * x.squaredNorm());
}

// Randers K=0 family quantities (psi = phi = |y| + <a,y>).
inline double randers_A(const Vec& a, const Vec& x, const Vec& y) {
  const double ax = a.dot(x), ay = a.dot(y);
  return (sq(1.0 - ax) - x.squaredNorm()) * (y.squaredNorm() - ay * ay) +
         sq(x.dot(y) + (1.0 - ax) * ay);
}

inline double randers_B(const Vec& a, const Vec& x) {
  return sq(1.0 - a.dot(x)) - x.squaredNorm();
}

inline double randers_P(const Vec& a, const Vec& x, const Vec& y) {
  return (std::sqrt(randers_A(a, x, y)) + (1.0 - a.dot(x)) * a.dot(y) + x.dot(y)) /
         randers_B(a, x);
}

inline double randers_factor(const Vec& a, const Vec& x, const Vec& y) {
  const double ax = a.dot(x);
  return ((1.0 - ax) * x.dot(y) + x.squaredNorm() * a.dot(y)) /
             (std::sqrt(randers_A(a, x, y)) * randers_B(a, x)) +
         (1.0 - ax) / randers_B(a, x);
}

inline double randers_k0_F(const Vec& a, const Vec& x, const Vec& y) {
  return randers_P(a, x, y) * randers_factor(a, x, y);
}

// Isotropic K=-1 family (psi = |.|, phi = c |.|): the two signed solutions.
inline double km1_iso_phi(double s, const Vec& x, const Vec& y) {
  const double b = 1.0 - s * s * x.squaredNorm();
  return (s * std::sqrt(b * y.squaredNorm() + s * s * sq(x.dot(y))) + s * s * x.dot(y)) / b;
}

inline double km1_iso_F(double c, const Vec& x, const Vec& y) {
  return 0.5 * (km1_iso_phi(c + 1.0, x, y) - km1_iso_phi(c - 1.0, x, y));
}

inline double critical_lambda(double c) {
  const double p = std::pow(c + 1.0, 2.0 / 3.0), q = std::pow(c - 1.0, 2.0 / 3.0);
  return 0.5 * (p - q) * std::sqrt(p + q);
}

// Seeded sampling helpers.
struct Rng {
  std::mt19937_64 gen;
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif{0.0, 1.0};

  explicit Rng(std::uint64_t seed = 42) : gen(seed) {}

  Vec vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(gen);
    return v;
  }
  Vec unit(int n) {
    Vec v = vector(n);
    while (v.norm() < 1e-8) v = vector(n);
    return v.normalized();
  }
  /// Point at a uniform fraction of the Euclidean ball radius.
  Vec in_ball(int n, double rmax) { return Vec(rmax * std::cbrt(unif(gen)) * unit(n)); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unif(gen); }
};

}  // namespace oracle
