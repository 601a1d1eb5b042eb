// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "finsler/homogeneous.hpp"
#include "finsler/types.hpp"

namespace finsler {

/// Result of solving Phi(x,y) = phi(y + x Phi(x,y)).
struct FunkSolution {
  double value = 0.0;
  double lo = 0.0, hi = 0.0;  // final bracket
  int iterations = 0;
  double residual = 0.0;
  int sign_changes = -1;  // -1 when the diagnostic scan was not requested
};

enum class Branch { nonneg, nonpos, largest };

struct FunkOptions {
  double tol = 1e-13;  // Newton converges quadratically; near machine precision is cheap
  int max_iter = 200;
  bool scan_roots = false;  // count sign changes of h(t) = t - phi(y + t x)
  int scan_points = 1000;
};

/// Unique root of h(t) = t - phi(y + t x) for quasi-regular positive phi with
/// phi(x) < 1. Bisection-safeguarded Newton from the upper bracket end
/// phi(y)/(1 - phi(x)); h is concave, so the largest root is the unique one.
FunkSolution solve_phi(const HomogeneousFn& phi, const Vec& x, const Vec& y,
                       const FunkOptions& opts = {});

/// Signed variant: roots of t = tilde_phi(y + t x) where tilde_phi may change
/// sign but is dominated by a positive quasi-regular norm. Case split on the
/// sign of tilde_phi(y): positive -> root in (0, solve_phi(dominating,x,y));
/// negative -> the largest negative root; zero -> 0.
FunkSolution solve_phi_signed(const HomogeneousFn& tilde_phi,
                              const HomogeneousFn& dominating_phi, const Vec& x, const Vec& y,
                              Branch branch = Branch::largest, const FunkOptions& opts = {});

/// Number of sign changes of h(t) on [0, phi(y)/(1-phi(x)) + 1].
int count_ray_roots(const HomogeneousFn& phi, const Vec& x, const Vec& y, int points = 1000);

/// Max sampled deviation |Phi(x + xbar, y) - Phibar(x, y)| where Phibar solves
/// the equation with base norm phibar(y) = Phi(xbar, y).
double translate_base_check(const HomogeneousFn& phi, const Vec& xbar, int samples,
                            std::uint64_t seed = 42);

/// Max Euclidean deviation between the unit level set of Phi(x,.) and the
/// translate {phi = 1} - x, sampled over directions.
double indicatrix_translation_check(const HomogeneousFn& phi, const Vec& x, int samples);

}  // namespace finsler
