// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <utility>

#include "finsler/metrics.hpp"
#include "finsler/types.hpp"

namespace finsler {

/// Hemisphere map p(x) = (x, 1)/sqrt(1 + |x|^2) into R^{n+1}.
Vec sphere_project(const Vec& x);
/// Inverse on the open upper hemisphere; throws NotUpperHemisphere otherwise.
Vec sphere_unproject(const Vec& w);

/// Spherical coordinates zeta = (phi, theta^1..theta^{n-1}) on S^n, with
/// p^{-1} at x = tan(phi) u(theta). phi in (-pi/2, pi/2); theta^s in (0, pi)
/// for s <= n-2.
class SphereChart {
 public:
  explicit SphereChart(int n);

  int dim() const { return n_; }

  Vec chart_to_plane(const Vec& zeta) const;  // x(zeta)
  Vec plane_to_chart(const Vec& x) const;     // exact inverse in 2D
  /// J(k, i) = d x^k / d zeta^i; closed form. Throws CoordinateSingularity at
  /// theta^s in {0, pi}, s <= n-2 (n >= 3).
  Mat jacobian(const Vec& zeta) const;

  /// (p^{-1})^* F at chart point zeta on chart vector V: F(x(zeta), J V).
  double pullback(const FinslerMetric& F, const Vec& zeta, const Vec& V) const;

 private:
  int n_;
  Vec sphere_dir(const Vec& theta) const;            // u(theta) in S^{n-1}
  Mat sphere_dir_jac(const Vec& theta) const;        // du/dtheta, n x (n-1)
};

/// Closed-form equator limit of the Bryant pull-back for n = 2, as a Minkowski
/// norm of V = (V_phi, V_theta).
double bryant_equator_norm(double alpha, const Vec& V);

struct EquatorReport {
  double min_eig = 0.0;                // min fundamental-tensor eigenvalue of the limit norm
  double max_extrapolation_dev = 0.0;  // extrapolated pull-back vs closed form
  Mat g_theta_dir;                     // fundamental tensor at V = d/dtheta
};

/// Evaluates the Bryant pull-back at phi -> pi/2 (extrapolated from
/// phi = pi/2 - 10^{-k}) against the closed-form equator norm, n = 2.
EquatorReport equator_extension_check(double alpha);

/// Line data (x, y) whose geodesic maps under p to the upper half great circle
/// hitting +-w with tangents +-V. Requires w on the equator, <w,V> = 0 and
/// V^{n+1} < 0.
std::pair<Vec, Vec> boundary_line(const Vec& w, const Vec& V, double lambda);

/// Speed of the glued sphere metric at w (|w^{n+1}| > 0) for tangent V in
/// R^{n+1}: the pull-back on the upper hemisphere, and its antipodal transport
/// F(-w, -V) on the lower one.
double glued_speed(const FinslerMetric& F, const Vec& w, const Vec& V);

/// Length of the great circle through orthonormal A, B in R^{n+1} under the
/// glued metric (midpoint rule; equator crossings have measure zero).
double great_circle_length(const FinslerMetric& F, const Vec& A, const Vec& B,
                           int samples = 8192);

/// Plot-ready samples of a great circle under the glued metric:
/// CSV rows (phi, theta, speed), n = 2.
void write_great_circle_csv(const FinslerMetric& F, const Vec& A, const Vec& B, int samples,
                            std::ostream& os);

}  // namespace finsler
