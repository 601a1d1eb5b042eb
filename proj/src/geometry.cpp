// SPDX-License-Identifier: Apache-2.0
#include "finsler/geometry.hpp"

#include <cmath>

#include "finsler/detail/derivatives.hpp"
#include "finsler/detail/quadrature.hpp"

namespace finsler {

namespace {

constexpr double kStepX = 1e-5;        // first-derivative step in x
constexpr double kStepNested = 7e-4;   // nested derivatives of an FD quantity

double fd_projective(const FinslerMetric& F, const Vec& x, const Vec& y) {
  const Vec u = y.normalized();
  const double h = kStepX * std::max(1.0, x.norm());
  const double dF = detail::diff1([&](double s) { return F(x + s * u, y); }, h);
  return y.norm() * dF / (2.0 * F(x, y));
}

// Sample x uniformly inside the domain at a radial fraction band.
Vec point_at_fraction(const DomainSpec& dom, const Vec& u, double fraction) {
  const double r = dom.boundary_radius(u);
  if (!std::isfinite(r)) return fraction * u;  // all-space: just scale
  return (fraction * r) * u;
}

}  // namespace

double projective_value(const FinslerMetric& F, const Vec& x, const Vec& y) {
  if (y.norm() == 0.0) return 0.0;
  if (F.has_projective()) return F.projective(x, y);
  return fd_projective(F, x, y);
}

ProjectiveData projective_factor(const FinslerMetric& F, const Vec& x, const Vec& y) {
  if (y.norm() == 0.0) fail(Err::ZeroVector, "projective_factor: y = 0");
  if (!F.domain().contains(x)) fail(Err::OutsideDomain, "projective_factor");

  ProjectiveData pd;
  pd.P = fd_projective(F, x, y);

  const int n = F.dim();
  const double hx = kStepNested * std::max(1.0, x.norm());
  const double hy = kStepNested * std::max(1.0, y.norm());
  pd.dP_dx.resize(n);
  pd.dP_dy.resize(n);
  Vec xw = x, yw = y;
  for (int k = 0; k < n; ++k) {
    const double xk = x[k];
    pd.dP_dx[k] = detail::diff1(
        [&](double s) {
          xw[k] = xk + s;
          const double v = fd_projective(F, xw, y);
          xw[k] = xk;
          return v;
        },
        hx);
    const double yk = y[k];
    pd.dP_dy[k] = detail::diff1(
        [&](double s) {
          yw[k] = yk + s;
          const double v = fd_projective(F, x, yw);
          yw[k] = yk;
          return v;
        },
        hy);
  }
  return pd;
}

BerwaldResiduals berwald_residuals(const FinslerMetric& F, double K_expected, const Vec& x,
                                   const Vec& y) {
  if (y.norm() == 0.0) fail(Err::ZeroVector, "berwald_residuals: y = 0");
  if (!F.domain().contains(x)) fail(Err::OutsideDomain, "berwald_residuals");

  const int n = F.dim();
  const bool closed_p = F.has_projective();
  auto P = [&](const Vec& xx, const Vec& yy) {
    return closed_p ? F.projective(xx, yy) : fd_projective(F, xx, yy);
  };

  const double hx = kStepX * std::max(1.0, x.norm());
  const double hy = kStepX * std::max(1.0, y.norm());
  const double hpx = (closed_p ? kStepX : kStepNested) * std::max(1.0, x.norm());
  const double hpy = (closed_p ? kStepX : kStepNested) * std::max(1.0, y.norm());

  const double Fv = F(x, y), Pv = P(x, y);
  BerwaldResiduals res;
  res.r1.resize(n);
  res.r2.resize(n);
  Vec xw = x, yw = y;
  for (int k = 0; k < n; ++k) {
    const double xk = x[k], yk = y[k];
    const double Fx = detail::diff1(
        [&](double s) {
          xw[k] = xk + s;
          const double v = F(xw, y);
          xw[k] = xk;
          return v;
        },
        hx);
    const double PFy = detail::diff1(
        [&](double s) {
          yw[k] = yk + s;
          const double v = P(x, yw) * F(x, yw);
          yw[k] = yk;
          return v;
        },
        hy);
    const double Fy = detail::diff1(
        [&](double s) {
          yw[k] = yk + s;
          const double v = F(x, yw);
          yw[k] = yk;
          return v;
        },
        hy);
    const double Px = detail::diff1(
        [&](double s) {
          xw[k] = xk + s;
          const double v = P(xw, y);
          xw[k] = xk;
          return v;
        },
        hpx);
    const double Py = detail::diff1(
        [&](double s) {
          yw[k] = yk + s;
          const double v = P(x, yw);
          yw[k] = yk;
          return v;
        },
        hpy);
    res.r1[k] = Fx - PFy;
    res.r2[k] = Px - Pv * Py + K_expected * Fv * Fy;
  }
  return res;
}

CurvatureReport flag_curvature(const FinslerMetric& F, const Vec& x, const Vec& y) {
  if (y.norm() == 0.0) fail(Err::ZeroVector, "flag_curvature: y = 0");
  if (!F.domain().contains(x)) fail(Err::OutsideDomain, "flag_curvature");

  CurvatureReport rep;
  const double Fv = F(x, y);
  const double P0 = fd_projective(F, x, y);
  const Vec u = y.normalized();
  const double H = kStepNested * std::max(1.0, x.norm());
  const double yPx =
      y.norm() * detail::diff1([&](double s) { return fd_projective(F, x + s * u, y); }, H);
  rep.K_formula = (P0 * P0 - yPx) / (Fv * Fv);

  // Geodesic-profile oracle: integrate f'' = -2 f'^2 P(x + f y, y) over a short
  // window and read the curvature from 2 f''' f' - 3 f''^2.
  const int n_steps = 1000;
  const double T = 0.1 / Fv;
  const double dt = T / n_steps;
  std::vector<double> fpp(n_steps + 1);
  double f = 0.0, fp = 1.0;
  auto Pline = [&](double fv) {
    const Vec z = x + fv * y;
    if (!F.domain().contains(z)) fail(Err::IntegrationFailure, "flag_curvature: left domain");
    return projective_value(F, z, y);
  };
  auto acc = [&](double fv, double fpv) { return -2.0 * fpv * fpv * Pline(fv); };
  std::vector<double> fs(n_steps + 1), fps(n_steps + 1);
  fs[0] = f;
  fps[0] = fp;
  fpp[0] = acc(f, fp);
  for (int i = 0; i < n_steps; ++i) {
    const double k1f = fp, k1p = acc(f, fp);
    const double k2f = fp + 0.5 * dt * k1p, k2p = acc(f + 0.5 * dt * k1f, fp + 0.5 * dt * k1p);
    const double k3f = fp + 0.5 * dt * k2p, k3p = acc(f + 0.5 * dt * k2f, fp + 0.5 * dt * k2p);
    const double k4f = fp + dt * k3p, k4p = acc(f + dt * k3f, fp + dt * k3p);
    f += dt * (k1f + 2.0 * (k2f + k3f) + k4f) / 6.0;
    fp += dt * (k1p + 2.0 * (k2p + k3p) + k4p) / 6.0;
    fs[i + 1] = f;
    fps[i + 1] = fp;
    fpp[i + 1] = acc(f, fp);
  }
  const int mid = n_steps / 2, m = 8;
  const double fppp = (fpp[mid + m] - fpp[mid - m]) / (2.0 * m * dt);
  const double num = 2.0 * fppp * fps[mid] - 3.0 * fpp[mid] * fpp[mid];
  rep.K_profile = num / (4.0 * fps[mid] * fps[mid] * Fv * Fv);

  rep.residuals = berwald_residuals(F, rep.K_formula, x, y);
  return rep;
}

GeodesicResult geodesic(const FinslerMetric& F, const Vec& x, const Vec& y, double t_end,
                        int curvature, int steps) {
  if (y.norm() == 0.0) fail(Err::ZeroVector, "geodesic: y = 0");
  if (!F.domain().contains(x)) fail(Err::OutsideDomain, "geodesic");
  if (!(t_end > 0.0) || steps < 2) fail(Err::BadParameter, "geodesic: bad t_span");

  GeodesicResult res;
  const double Fv = F(x, y);
  const double Pv = projective_value(F, x, y);

  const double dt = t_end / steps;
  double f = 0.0, fp = 1.0;
  auto acc = [&](double fv, double fpv) -> double {
    const Vec z = x + fv * y;
    if (!F.domain().contains(z)) fail(Err::LeftDomain, "geodesic: line exits the domain");
    return -2.0 * fpv * fpv * projective_value(F, z, y);
  };
  res.ts.push_back(0.0);
  res.fs.push_back(0.0);
  res.fps.push_back(1.0);
  for (int i = 0; i < steps; ++i) {
    if (std::abs(f) > 1e12 || fp > 1e12 || !std::isfinite(f) || !std::isfinite(fp)) {
      res.escape_time = res.ts.back();
      break;
    }
    const double k1f = fp, k1p = acc(f, fp);
    const double k2f = fp + 0.5 * dt * k1p, k2p = acc(f + 0.5 * dt * k1f, fp + 0.5 * dt * k1p);
    const double k3f = fp + 0.5 * dt * k2p, k3p = acc(f + 0.5 * dt * k2f, fp + 0.5 * dt * k2p);
    const double k4f = fp + dt * k3p, k4p = acc(f + dt * k3f, fp + dt * k3p);
    f += dt * (k1f + 2.0 * (k2f + k3f) + k4f) / 6.0;
    fp += dt * (k1p + 2.0 * (k2p + k3p) + k4p) / 6.0;
    res.ts.push_back((i + 1) * dt);
    res.fs.push_back(f);
    res.fps.push_back(fp);
  }

  // Closed-form profile fit.
  const double rho = Pv / Fv;
  if (curvature == 0) {
    if (std::abs(Pv) <= 1e-12 * (1.0 + Fv)) {
      res.family = GeodesicFamily::k0_line;
      res.closed_f = [](double t) { return t; };
    } else {
      res.family = GeodesicFamily::k0_fractional;
      res.c = 1.0 / Pv;
      const double c = res.c;
      res.closed_f = [c](double t) { return c * t / (c + t); };
    }
  } else if (curvature == -1) {
    const double s = Fv;  // curvature scale: unit-speed profiles composed with F t
    if (std::abs(rho + 1.0) < 1e-9) {
      res.family = GeodesicFamily::km1_a;
      res.closed_f = [s](double t) { return (std::exp(2.0 * s * t) - 1.0) / (2.0 * s); };
    } else if (std::abs(rho - 1.0) < 1e-9) {
      res.family = GeodesicFamily::km1_b;
      res.closed_f = [s](double t) { return (1.0 - std::exp(-2.0 * s * t)) / (2.0 * s); };
    } else {
      res.family = GeodesicFamily::km1_c;
      res.c = (Pv + Fv) / (Pv - Fv);
      const double c = res.c;
      res.closed_f = [s, c](double t) {
        const double e = std::exp(2.0 * s * t);
        return (c - 1.0) * (e - 1.0) / (2.0 * s * (c * e - 1.0));
      };
    }
  } else if (curvature == 1) {
    res.family = GeodesicFamily::k1;
    const double c = std::atan(-rho);
    res.c = c;
    const double s = Fv;
    res.closed_f = [s, c](double t) {
      return std::cos(c) * std::cos(c) * (std::tan(s * t + c) - std::tan(c)) / s;
    };
    res.escape_time = std::min(res.escape_time, (0.5 * M_PI - c) / s);
  } else {
    fail(Err::BadParameter, "geodesic: curvature must be 0, -1 or 1");
  }

  double worst = 0.0;
  for (size_t i = 0; i < res.ts.size(); ++i) {
    if (res.ts[i] >= 0.95 * res.escape_time || std::abs(res.fs[i]) > 1e6) break;
    worst = std::max(worst, std::abs(res.fs[i] - res.closed_f(res.ts[i])));
  }
  res.fit_residual = worst;
  return res;
}

DistanceResult distance(const FinslerMetric& F, int curvature, const Vec& x1, const Vec& x2) {
  const Vec y = x2 - x1;
  if (y.norm() == 0.0) fail(Err::BadInput, "distance: x1 == x2");
  for (int k = 0; k <= 64; ++k) {
    if (!F.domain().contains(x1 + (static_cast<double>(k) / 64) * y))
      fail(Err::SegmentExitsDomain, "distance: segment leaves the domain");
  }

  const double Fv = F(x1, y);
  const double Pv = projective_value(F, x1, y);

  DistanceResult res;
  if (curvature == 0) {
    const double den = 1.0 - Pv;
    if (den <= 1e-12) fail(Err::DegenerateFormula, "distance: 1 - P <= 0 (K=0)");
    res.formula = Fv / den;
  } else if (curvature == -1) {
    const double a = 1.0 - Pv + Fv, b = 1.0 - Pv - Fv;
    if (b <= 1e-12) fail(Err::DegenerateFormula, "distance: denominator <= 0 (K=-1)");
    res.formula = 0.5 * std::log(a / b);
  } else if (curvature == 1) {
    res.formula = std::atan((Fv * Fv + Pv * Pv - Pv) / Fv) + std::atan(Pv / Fv);
  } else {
    fail(Err::BadParameter, "distance: curvature must be 0, -1 or 1");
  }

  res.integral =
      detail::integrate([&](double t) { return F(x1 + t * y, y); }, 0.0, 1.0, 1e-10);
  res.rel_err = std::abs(res.formula - res.integral) / std::max(res.formula, 1e-12);
  return res;
}

ReversibilityReport reversibility(const FinslerMetric& F, int region_samples) {
  ReversibilityReport rep;
  const auto dirs = detail::direction_samples(F.dim(), region_samples);
  auto sup_at = [&](double fraction) {
    double sup = 1.0;
    for (const Vec& ux : dirs) {
      const Vec x = point_at_fraction(F.domain(), ux, fraction);
      if (!F.domain().contains(x)) continue;
      for (const Vec& uy : dirs) sup = std::max(sup, F(x, -uy) / F(x, uy));
    }
    return sup;
  };
  rep.sup = std::max({sup_at(0.2), sup_at(0.5), sup_at(0.8)});
  if (!F.domain().is_all_space()) {
    const double s90 = sup_at(0.9), s99 = sup_at(0.99);
    rep.sup_near_boundary = std::max(s90, s99);
    rep.diverging = s99 > 1.5 * s90;
    rep.sup = std::max(rep.sup, rep.sup_near_boundary);
  } else {
    rep.sup_near_boundary = rep.sup;
  }
  return rep;
}

CompletenessReport completeness_probe(const HomogeneousFn& psi, const HomogeneousFn& phi,
                                      int curvature, const Vec& ray,
                                      const std::vector<double>& fractions) {
  if (curvature != 0 && curvature != -1)
    fail(Err::BadParameter, "completeness_probe: curvature must be 0 or -1");
  const Vec u = ray.normalized();

  double denom = (curvature == 0) ? phi(u) : phi(u) + psi(u);
  if (!(denom > 0.0))
    fail(Err::BadParameter, "completeness_probe: domain is unbounded along the ray");
  const double s_star = 1.0 / denom;

  CompletenessReport rep;
  for (double f : fractions) {
    const Vec x = (f * s_star) * u;
    CompletenessRow row;
    row.fraction = f;
    if (curvature == 0) {
      row.forward = psi(x) / (1.0 - phi(x));
      row.backward = psi(-x) / (1.0 + phi(-x));
    } else {
      row.forward = 0.5 * std::log((1.0 - phi(x) + psi(x)) / (1.0 - phi(x) - psi(x)));
      row.backward =
          0.5 * std::log((1.0 + phi(-x) + psi(-x)) / (1.0 + phi(-x) - psi(-x)));
    }
    rep.rows.push_back(row);
  }

  auto trend = [](const std::vector<double>& v) {
    // divergent iff the last increment has not decayed
    const size_t n = v.size();
    if (n < 3) return false;
    const double inc1 = v[n - 1] - v[n - 2], inc0 = v[n - 2] - v[n - 3];
    return inc1 >= 0.5 * inc0 && inc1 > 0.0;
  };
  std::vector<double> fwd, bwd;
  for (const auto& r : rep.rows) {
    fwd.push_back(r.forward);
    bwd.push_back(r.backward);
  }
  rep.forward_divergent = trend(fwd);
  rep.backward_bounded = !trend(bwd);
  return rep;
}

double busemann_mayer_recover(const std::function<double(const Vec&, const Vec&)>& d,
                              const Vec& x, const Vec& y) {
  if (y.norm() == 0.0) fail(Err::ZeroVector, "busemann_mayer_recover: y = 0");
  const double v = detail::extrapolate_to_zero(
      [&](double t) { return d(x, x + t * y) / t; }, 1e-3);
  if (!std::isfinite(v)) fail(Err::NonFinite, "busemann_mayer_recover: limit not finite");
  return v;
}

double line_length(const FinslerMetric& F, const Vec& x0, const Vec& u, double T) {
  if (T <= 1.0) fail(Err::BadParameter, "line_length: T must exceed 1");
  auto f = [&](double t) { return F(x0 + t * u, u); };
  double total = detail::integrate(f, -1.0, 1.0, 1e-10);
  // tails via t = 1/s
  total += detail::integrate([&](double s) { return f(1.0 / s) / (s * s); }, 1.0 / T, 1.0,
                             1e-10);
  total += detail::integrate([&](double s) { return f(-1.0 / s) / (s * s); }, 1.0 / T, 1.0,
                             1e-10);
  return total;
}

}  // namespace finsler
