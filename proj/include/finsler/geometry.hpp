// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "finsler/metrics.hpp"
#include "finsler/types.hpp"

namespace finsler {

struct ProjectiveData {
  double P = 0.0;
  Vec dP_dx;  // gradient of P in x
  Vec dP_dy;  // gradient of P in y
};

/// P = y^k F_{x^k} / (2F) by central differences in x; derivative fields by
/// nested differences. Always the finite-difference route, so it doubles as a
/// cross-check of metrics that carry a closed-form projective factor.
ProjectiveData projective_factor(const FinslerMetric& F, const Vec& x, const Vec& y);

/// Closed-form projective factor when the metric carries one, FD otherwise.
double projective_value(const FinslerMetric& F, const Vec& x, const Vec& y);

struct BerwaldResiduals {
  Vec r1;  // F_{x^k} - [PF]_{y^k}
  Vec r2;  // P_{x^k} - P P_{y^k} + K F F_{y^k}
};

/// Residuals of the projective-flatness PDE system for an expected constant
/// curvature; near-zero certifies projective flatness with that curvature.
BerwaldResiduals berwald_residuals(const FinslerMetric& F, double K_expected, const Vec& x,
                                   const Vec& y);

struct CurvatureReport {
  double K_formula = 0.0;  // (P^2 - y^i P_{x^i}) / F^2
  double K_profile = 0.0;  // from the integrated geodesic profile
  BerwaldResiduals residuals;  // computed with K = K_formula
};

CurvatureReport flag_curvature(const FinslerMetric& F, const Vec& x, const Vec& y);

enum class GeodesicFamily { k0_line, k0_fractional, km1_a, km1_b, km1_c, k1 };

struct GeodesicResult {
  std::vector<double> ts;
  std::vector<double> fs;   // scalar profile f(t); path is x + f(t) y
  std::vector<double> fps;  // f'(t)
  GeodesicFamily family = GeodesicFamily::k0_line;
  double c = 0.0;           // family parameter
  double fit_residual = 0.0;
  double escape_time = std::numeric_limits<double>::infinity();
  std::function<double(double)> closed_f;  // fitted closed-form profile
};

/// Integrate the scalar reparametrization ODE f'' = -2 f'^2 P(x + f y, y)
/// along the fixed line and fit the closed-form profile family of the given
/// curvature. Throws LeftDomain when the line exits a bounded domain before
/// t_end; unbounded blowup is reported via escape_time.
GeodesicResult geodesic(const FinslerMetric& F, const Vec& x, const Vec& y, double t_end,
                        int curvature, int steps = 1000);

struct DistanceResult {
  double formula = 0.0;
  double integral = 0.0;
  double rel_err = 0.0;
};

/// Distance formula for the given constant curvature against the adaptive
/// line integral (valid by projective flatness).
DistanceResult distance(const FinslerMetric& F, int curvature, const Vec& x1, const Vec& x2);

struct ReversibilityReport {
  double sup = 1.0;               // over sampled interior points
  double sup_near_boundary = 1.0; // at fractions 0.9 / 0.99 of the boundary ray
  bool diverging = false;
};

ReversibilityReport reversibility(const FinslerMetric& F, int region_samples = 32);

struct CompletenessRow {
  double fraction = 0.0;
  double forward = 0.0;   // d(0, x)
  double backward = 0.0;  // d(x, 0)
};

struct CompletenessReport {
  std::vector<CompletenessRow> rows;
  bool forward_divergent = false;
  bool backward_bounded = false;
};

/// Distance from/to the origin along a ray at fractions of the boundary
/// parameter, using the closed initial-data formulas of the K=0 / K=-1
/// families.
CompletenessReport completeness_probe(const HomogeneousFn& psi, const HomogeneousFn& phi,
                                      int curvature, const Vec& ray,
                                      const std::vector<double>& fractions = {0.9, 0.99, 0.999,
                                                                              0.9999});

/// Busemann-Mayer limit of d(x, x + t y)/t as t -> 0+, Richardson-extrapolated
/// over t in {1e-3, 1e-4, 1e-5}.
double busemann_mayer_recover(const std::function<double(const Vec&, const Vec&)>& d,
                              const Vec& x, const Vec& y);

/// Length of the full straight line {x0 + t u} under F, integrated over
/// [-T, T] with a 1/t substitution on the tails.
double line_length(const FinslerMetric& F, const Vec& x0, const Vec& u, double T);

}  // namespace finsler
