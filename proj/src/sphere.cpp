// SPDX-License-Identifier: Apache-2.0
#include "finsler/sphere.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <ostream>

#include "finsler/detail/derivatives.hpp"
#include "finsler/detail/optimize.hpp"

namespace finsler {

Vec sphere_project(const Vec& x) {
  const int n = static_cast<int>(x.size());
  Vec w(n + 1);
  const double s = 1.0 / std::sqrt(1.0 + x.squaredNorm());
  w.head(n) = s * x;
  w[n] = s;
  return w;
}

Vec sphere_unproject(const Vec& w) {
  const int n = static_cast<int>(w.size()) - 1;
  if (!(w[n] > 0.0)) fail(Err::NotUpperHemisphere, "sphere_unproject: w^{n+1} <= 0");
  return Vec(w.head(n) / w[n]);
}

SphereChart::SphereChart(int n) : n_(n) {
  if (n < 2) fail(Err::BadParameter, "SphereChart: n must be >= 2");
}

Vec SphereChart::sphere_dir(const Vec& theta) const {
  Vec u(n_);
  double sinprod = 1.0;
  for (int i = 0; i < n_ - 1; ++i) {
    u[i] = std::cos(theta[i]) * sinprod;
    sinprod *= std::sin(theta[i]);
  }
  u[n_ - 1] = sinprod;
  return u;
}

Mat SphereChart::sphere_dir_jac(const Vec& theta) const {
  // du^k/dtheta^s for u as in sphere_dir.
  Mat J = Mat::Zero(n_, n_ - 1);
  for (int k = 0; k < n_; ++k) {
    for (int s = 0; s < n_ - 1; ++s) {
      if (k < n_ - 1) {
        if (s > k) continue;
        double v = 1.0;
        for (int a = 0; a < k; ++a) v *= (a == s) ? std::cos(theta[a]) : std::sin(theta[a]);
        v *= (s == k) ? -std::sin(theta[k]) : std::cos(theta[k]);
        J(k, s) = v;
      } else {
        double v = 1.0;
        for (int a = 0; a < n_ - 1; ++a)
          v *= (a == s) ? std::cos(theta[a]) : std::sin(theta[a]);
        J(k, s) = v;
      }
    }
  }
  return J;
}

Vec SphereChart::chart_to_plane(const Vec& zeta) const {
  return Vec(std::tan(zeta[0]) * sphere_dir(zeta.tail(n_ - 1)));
}

Vec SphereChart::plane_to_chart(const Vec& x) const {
  Vec zeta = Vec::Zero(n_);
  const double r = x.norm();
  if (r == 0.0) return zeta;
  if (n_ == 2) {
    double beta = std::atan2(x[1], x[0]);
    double phi = std::atan(r);
    if (beta < 0.0) {
      beta += M_PI;
      phi = -phi;
    }
    zeta << phi, beta;
    return zeta;
  }
  // n >= 3: positive-phi representative with theta^{n-1} in [0, 2 pi).
  zeta[0] = std::atan(r);
  Vec u = x / r;
  double sinprod = 1.0;
  for (int s = 0; s < n_ - 2; ++s) {
    const double c = std::clamp(u[s] / std::max(sinprod, 1e-300), -1.0, 1.0);
    zeta[1 + s] = std::acos(c);
    sinprod *= std::sin(zeta[1 + s]);
  }
  double last = std::atan2(u[n_ - 1], u[n_ - 2]);
  if (last < 0.0) last += 2.0 * M_PI;
  zeta[n_ - 1 + 0] = last;  // theta^{n-1}
  return zeta;
}

Mat SphereChart::jacobian(const Vec& zeta) const {
  const double phi = zeta[0];
  const Vec theta = zeta.tail(n_ - 1);
  if (n_ >= 3) {
    for (int s = 0; s < n_ - 2; ++s) {
      if (std::abs(std::sin(theta[s])) < 1e-12)
        fail(Err::CoordinateSingularity, "jacobian: theta^s in {0, pi}");
    }
  }
  const double t = std::tan(phi), sec2 = 1.0 + t * t;
  Mat J(n_, n_);
  J.col(0) = sec2 * sphere_dir(theta);
  J.rightCols(n_ - 1) = t * sphere_dir_jac(theta);
  return J;
}

double SphereChart::pullback(const FinslerMetric& F, const Vec& zeta, const Vec& V) const {
  const Vec x = chart_to_plane(zeta);
  const Vec y = jacobian(zeta) * V;
  return F(x, y);
}

double bryant_equator_norm(double alpha, const Vec& V) {
  const double c2 = std::cos(2.0 * alpha), s2 = std::sin(2.0 * alpha);
  const double A = V[0] * V[0];  // (d phi)^2 coefficient
  const double B = V[1] * V[1];  // g_{S^1}
  const double inner = A + c2 * B;
  return std::sqrt(0.5 * (c2 * A + B + std::sqrt(inner * inner + s2 * s2 * B * B)));
}

EquatorReport equator_extension_check(double alpha) {
  if (!(alpha > 0.0) || alpha > M_PI / 4.0 + 1e-15)
    fail(Err::BadParameter, "equator_extension_check: alpha in (0, pi/4]");

  const FinslerMetric bry = bryant_metric(alpha, 2);
  const SphereChart chart(2);
  const double theta0 = 0.3;  // spherically symmetric limit; any azimuth works

  EquatorReport rep;
  rep.max_extrapolation_dev = 0.0;
  for (int k = 0; k < 64; ++k) {
    const Vec V = detail::unit2(2.0 * M_PI * k / 64 + 0.1);
    auto at_eps = [&](double eps) {
      Vec zeta(2);
      zeta << 0.5 * M_PI - eps, theta0;
      return chart.pullback(bry, zeta, V);
    };
    const double extrap = detail::extrapolate_to_zero(at_eps, 1e-3);
    rep.max_extrapolation_dev =
        std::max(rep.max_extrapolation_dev, std::abs(extrap - bryant_equator_norm(alpha, V)));
  }

  auto norm2 = [&](const Vec& V) {
    const double v = bryant_equator_norm(alpha, V);
    return v * v;
  };
  auto rel_min_at = [&](double th) {
    const Mat g = 0.5 * detail::fd_hessian(norm2, detail::unit2(th), 3e-4);
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    return es.eigenvalues().minCoeff();
  };
  double worst = std::numeric_limits<double>::infinity(), worst_th = 0.0;
  for (int k = 0; k < 256; ++k) {
    const double th = 2.0 * M_PI * k / 256;
    const double r = rel_min_at(th);
    if (r < worst) {
      worst = r;
      worst_th = th;
    }
  }
  rep.min_eig =
      detail::golden_min(rel_min_at, worst_th - 0.05, worst_th + 0.05, 1e-9);
  rep.min_eig = std::min(rep.min_eig, worst);

  Vec etheta(2);
  etheta << 0.0, 1.0;
  rep.g_theta_dir = 0.5 * detail::fd_hessian(norm2, etheta, 3e-4);
  return rep;
}

std::pair<Vec, Vec> boundary_line(const Vec& w, const Vec& V, double lambda) {
  const int n = static_cast<int>(w.size()) - 1;
  if (V.size() != w.size()) fail(Err::BadInput, "boundary_line: dimension mismatch");
  if (std::abs(w.norm() - 1.0) > 1e-10 || std::abs(w[n]) > 1e-12)
    fail(Err::BadInput, "boundary_line: w must lie on the equator");
  if (std::abs(w.dot(V)) > 1e-10) fail(Err::BadInput, "boundary_line: <w, V> != 0");
  if (!(V[n] < 0.0)) fail(Err::BadInput, "boundary_line: V^{n+1} must be negative");

  Vec x(n), y(n);
  for (int a = 0; a < n; ++a) {
    x[a] = (V[a] - lambda * w[a]) / V[n];
    y[a] = -w[a] / V[n];
  }
  return {x, y};
}

double glued_speed(const FinslerMetric& F, const Vec& w, const Vec& V) {
  const int n = static_cast<int>(w.size()) - 1;
  if (std::abs(w[n]) < 1e-300)
    fail(Err::CoordinateSingularity, "glued_speed: on the equator");
  if (w[n] < 0.0) return glued_speed(F, -w, -V);
  const double wn = w[n];
  Vec x(n), y(n);
  for (int a = 0; a < n; ++a) {
    x[a] = w[a] / wn;
    y[a] = (V[a] * wn - w[a] * V[n]) / (wn * wn);
  }
  return F(x, y);
}

void write_great_circle_csv(const FinslerMetric& F, const Vec& A, const Vec& B, int samples,
                            std::ostream& os) {
  os << "phi,theta,speed\n";
  const double ds = 2.0 * M_PI / samples;
  for (int k = 0; k < samples; ++k) {
    const double s = (k + 0.5) * ds;
    const Vec w = std::cos(s) * A + std::sin(s) * B;
    const Vec wp = -std::sin(s) * A + std::cos(s) * B;
    if (std::abs(w[w.size() - 1]) < 1e-9) continue;
    // signed polar angle from the north pole, azimuth of the planar shadow
    const double phi = std::acos(std::clamp(w[w.size() - 1], -1.0, 1.0));
    const double theta = std::atan2(w[1], w[0]);
    os << phi << ',' << theta << ',' << glued_speed(F, w, wp) << '\n';
  }
}

double great_circle_length(const FinslerMetric& F, const Vec& A, const Vec& B, int samples) {
  const int m = static_cast<int>(A.size());
  if (B.size() != m) fail(Err::BadInput, "great_circle_length: dimension mismatch");
  if (std::abs(A.norm() - 1.0) > 1e-10 || std::abs(B.norm() - 1.0) > 1e-10 ||
      std::abs(A.dot(B)) > 1e-10)
    fail(Err::BadInput, "great_circle_length: A, B must be orthonormal");

  const double ds = 2.0 * M_PI / samples;
  double total = 0.0;
  for (int k = 0; k < samples; ++k) {
    double s = (k + 0.5) * ds;
    Vec w = std::cos(s) * A + std::sin(s) * B;
    if (std::abs(w[m - 1]) < 1e-9) {  // nudge off the equator
      s += 1e-7 * ds;
      w = std::cos(s) * A + std::sin(s) * B;
    }
    const Vec wp = -std::sin(s) * A + std::cos(s) * B;
    total += glued_speed(F, w, wp) * ds;
  }
  return total;
}

}  // namespace finsler
