// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "finsler/metrics.hpp"
#include "finsler/types.hpp"

namespace finsler {

struct CoMetricValue {
  double value = 0.0;
  Vec maximizer;  // Euclidean-unit direction achieving the supremum
};

/// Co-metric F*(x, xi) = sup <y, xi> / F(x, y): golden-section on the angle in
/// 2D, projected ascent with restarts otherwise.
CoMetricValue co_metric(const FinslerMetric& F, const Vec& x, const Vec& xi);

/// Gradient of r(x) = d_F(0, x) for the K=0 / K=-1 families from initial data;
/// satisfies F(x, grad r) = 1.
Vec grad_r(int curvature, const HomogeneousFn& psi, const HomogeneousFn& phi, const Vec& x);

struct AnalyticReport {
  double S = 0.0;                // (n+1) P(x,y)
  double S_divergence = 0.0;     // sum_i d(P y^i)/dy^i by finite differences
  double distortion_rate = 0.0;  // d/dt of tau along the unit-speed geodesic
};

/// S-curvature with Lebesgue measure, plus the independent distortion-rate
/// oracle; S is 1-homogeneous in y while the rate matches S(x, y/F).
AnalyticReport s_curvature(const FinslerMetric& F, const Vec& x, const Vec& y);

struct GrowthRow {
  double fraction = 0.0;
  double r = 0.0;
  double fstar = 0.0;  // F*(x, -dr)
  double ratio = 0.0;  // fstar / r^2 (K=0) or fstar / e^{2r} (K=-1)
};

/// Growth of F*(x, -dr) along a ray at boundary fractions for the
/// non-backward-complete families; throws WrongClass otherwise.
std::vector<GrowthRow> growth_check(int curvature, const HomogeneousFn& psi,
                                    const HomogeneousFn& phi, const Vec& ray,
                                    const std::vector<double>& fractions = {0.9, 0.99, 0.999});

}  // namespace finsler
