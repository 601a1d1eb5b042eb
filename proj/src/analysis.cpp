// SPDX-License-Identifier: Apache-2.0
#include "finsler/analysis.hpp"

#include <Eigen/LU>
#include <cmath>
#include <random>

#include "finsler/detail/derivatives.hpp"
#include "finsler/detail/optimize.hpp"
#include "finsler/geometry.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

CoMetricValue co_metric(const FinslerMetric& F, const Vec& x, const Vec& xi) {
  if (!F.domain().contains(x)) fail(Err::OutsideDomain, "co_metric");
  const int n = F.dim();
  auto h = [&](const Vec& u) { return u.dot(xi) / F(x, u); };

  CoMetricValue best;
  if (n == 2) {
    double best_th = 0.0, best_v = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 128; ++k) {
      const double th = 2.0 * M_PI * k / 128;
      const double v = h(detail::unit2(th));
      if (v > best_v) {
        best_v = v;
        best_th = th;
      }
    }
    const double w = 2.0 * M_PI / 128;
    double arg = best_th;
    const double v = -detail::golden_min(
        [&](double th) { return -h(detail::unit2(th)); }, best_th - w, best_th + w, 1e-10,
        &arg);
    best.value = std::max(v, best_v);
    best.maximizer = detail::unit2(arg);
    return best;
  }

  // Projected gradient ascent with restarts.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  best.value = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < 64; ++restart) {
    Vec z(n);
    for (int i = 0; i < n; ++i) z[i] = gauss(rng);
    z.normalize();
    double step = 0.1;
    double hz = h(z);
    for (int it = 0; it < 200 && step > 1e-12; ++it) {
      Vec g = detail::fd_gradient(h, z, 1e-6);
      g -= g.dot(z) * z;
      Vec znew = (z + step * g).normalized();
      const double hnew = h(znew);
      if (hnew > hz) {
        z = znew;
        hz = hnew;
        step *= 1.2;
      } else {
        step *= 0.5;
      }
    }
    if (hz > best.value) {
      best.value = hz;
      best.maximizer = z;
    }
  }
  return best;
}

Vec grad_r(int curvature, const HomogeneousFn& psi, const HomogeneousFn& phi, const Vec& x) {
  if (x.norm() == 0.0) fail(Err::OriginExcluded, "grad_r: x = 0");
  const double p = phi(x), s = psi(x);
  if (curvature == 0) {
    if (p >= 1.0 - DomainSpec::kMargin) fail(Err::OutsideDomain, "grad_r");
    const double r = s / (1.0 - p);
    return Vec(s / ((s + r * p) * (s + r * p)) * x);
  }
  if (curvature == -1) {
    if (p + s >= 1.0 - DomainSpec::kMargin) fail(Err::OutsideDomain, "grad_r");
    return Vec((1.0 - p + s) * (1.0 - p - s) / s * x);
  }
  fail(Err::BadParameter, "grad_r: curvature must be 0 or -1");
}

AnalyticReport s_curvature(const FinslerMetric& F, const Vec& x, const Vec& y) {
  if (y.norm() == 0.0) fail(Err::ZeroVector, "s_curvature: y = 0");
  if (!F.domain().contains(x)) fail(Err::OutsideDomain, "s_curvature");

  const int n = F.dim();
  AnalyticReport rep;
  const double P = projective_value(F, x, y);
  rep.S = (n + 1) * P;

  // Divergence of G^i = P y^i in y, by finite differences.
  const double hy = 1e-5 * std::max(1.0, y.norm());
  double div = 0.0;
  Vec yw = y;
  for (int k = 0; k < n; ++k) {
    const double yk = y[k];
    div += detail::diff1(
        [&](double s) {
          yw[k] = yk + s;
          const double v = projective_value(F, x, yw) * yw[k];
          yw[k] = yk;
          return v;
        },
        hy);
  }
  rep.S_divergence = div;

  // Distortion rate along the unit-speed geodesic through (x, y/F): tau is
  // 0-homogeneous in the direction, and the path is the straight line.
  const Vec u = y / F(x, y);
  auto tau = [&](const Vec& z) {
    const Mat g = fundamental_tensor(F, z, u).g;
    return 0.5 * std::log(g.determinant());
  };
  const double h = 3e-3 * std::max(1.0, x.norm());
  rep.distortion_rate = detail::diff1([&](double s) { return tau(x + s * u); }, h);
  return rep;
}

std::vector<GrowthRow> growth_check(int curvature, const HomogeneousFn& psi,
                                    const HomogeneousFn& phi, const Vec& ray,
                                    const std::vector<double>& fractions) {
  const Classification cls = classify(psi, phi, curvature);
  if (cls.backward_complete)
    fail(Err::WrongClass, "growth_check: family is backward complete");

  const FinslerMetric F = (curvature == 0) ? build_k0(psi, phi) : build_km1(psi, phi);
  const Vec u = ray.normalized();
  const double denom = (curvature == 0) ? phi(u) : phi(u) + psi(u);
  if (!(denom > 0.0)) fail(Err::BadParameter, "growth_check: unbounded ray");
  const double s_star = 1.0 / denom;

  auto r_of = [&](const Vec& z) {
    if (curvature == 0) return psi(z) / (1.0 - phi(z));
    return 0.5 * std::log((1.0 - phi(z) + psi(z)) / (1.0 - phi(z) - psi(z)));
  };

  std::vector<GrowthRow> rows;
  for (double f : fractions) {
    const Vec x = (f * s_star) * u;
    GrowthRow row;
    row.fraction = f;
    row.r = r_of(x);
    const Vec dr = detail::fd_gradient(r_of, x, 1e-7);
    row.fstar = co_metric(F, x, Vec(-dr)).value;
    row.ratio = (curvature == 0) ? row.fstar / (row.r * row.r)
                                 : row.fstar / std::exp(2.0 * row.r);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace finsler
