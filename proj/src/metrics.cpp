// SPDX-License-Identifier: Apache-2.0
#include "finsler/metrics.hpp"

#include <cmath>

#include "finsler/detail/closed_forms.hpp"
#include "finsler/detail/derivatives.hpp"

namespace finsler {

DomainSpec DomainSpec::all_space(int dim) {
  DomainSpec d;
  d.dim_ = dim;
  return d;
}

DomainSpec DomainSpec::sublevel(const HomogeneousFn& f, double level) {
  DomainSpec d;
  d.dim_ = f.dim();
  d.fn_ = f;
  d.level_ = level;
  return d;
}

bool DomainSpec::contains(const Vec& x) const {
  if (is_all_space()) return true;
  return (*fn_)(x) < level_ - kMargin;
}

double DomainSpec::boundary_radius(const Vec& u) const {
  if (is_all_space()) return std::numeric_limits<double>::infinity();
  const double v = (*fn_)(u);
  if (v <= 0.0) return std::numeric_limits<double>::infinity();
  return level_ / v;
}

namespace {

bool sampled_positive(const HomogeneousFn& f, int samples = 64) {
  for (const Vec& u : detail::direction_samples(f.dim(), samples))
    if (!(f(u) > 0.0)) return false;
  return true;
}

namespace closed = detail::closed;

template <class T>
closed::XY<T> pack2(const Vec& x, T y1, T y2) {
  return closed::XY<T>{x[0], x[1], y1, y2};
}

// Generic n-dimensional doubles version of the templated closed forms; the
// 2D hot paths additionally get exact Hessians through Dual2 seeds.
double funk_euclid_eval(const Vec& x, const Vec& y) {
  const double b = 1.0 - x.squaredNorm();
  const double q = b * y.squaredNorm() + x.dot(y) * x.dot(y);
  return (std::sqrt(q) + x.dot(y)) / b;
}

double berwald_eval(const Vec& x, const Vec& y) {
  if (y.norm() == 0.0) return 0.0;
  const double b = 1.0 - x.squaredNorm();
  const double q = std::sqrt(b * y.squaredNorm() + x.dot(y) * x.dot(y));
  const double s = q + x.dot(y);
  return s * s / (b * b * q);
}

double riemann_eval(double lambda, const Vec& x, const Vec& y) {
  const double d = 1.0 + lambda * x.squaredNorm();
  const double q = y.squaredNorm() + lambda * (x.squaredNorm() * y.squaredNorm() -
                                               x.dot(y) * x.dot(y));
  return std::sqrt(std::max(q, 0.0)) / d;
}

double bryant_eval(double alpha, const Vec& x, const Vec& y) {
  const double c2 = std::cos(2.0 * alpha), s2 = std::sin(2.0 * alpha);
  const double xx = x.squaredNorm(), yy = y.squaredNorm(), xy = x.dot(y);
  const double B = yy * c2 + xx * yy - xy * xy;
  const double A = B * B + yy * s2 * yy * s2;
  const double C = xy * s2;
  const double D = xx * xx + 2.0 * xx * c2 + 1.0;
  return std::sqrt((std::sqrt(A) + B) / (2.0 * D) + (C / D) * (C / D)) + C / D;
}

}  // namespace

FinslerMetric build_k0(const HomogeneousFn& psi, const HomogeneousFn& phi) {
  if (psi.dim() != phi.dim()) fail(Err::BadParameter, "build_k0: dimension mismatch");
  const bool phi_zero = (phi.kind() == NormKind::zero);
  if (!phi_zero && !sampled_positive(phi))
    fail(Err::Inadmissible, "build_k0: phi must vanish identically or be positive");

  if (phi_zero) {
    return FinslerMetric("k0", DomainSpec::all_space(psi.dim()),
                         [psi](const Vec&, const Vec& y) { return psi(y); },
                         [](const Vec&, const Vec&) { return 0.0; });
  }

  DomainSpec dom = DomainSpec::sublevel(phi);
  // 1 + x^k P_{y^k} = 1 / (1 - x^i phi_{y^i}(y + x P)), from differentiating
  // the defining equation; exact given the solved P.
  auto eval = [psi, phi](const Vec& x, const Vec& y) {
    if (y.norm() == 0.0) return 0.0;
    const double P = solve_phi(phi, x, y).value;
    const Vec xi = y + P * x;
    return psi(xi) / (1.0 - phi.directional(xi, x));
  };
  auto proj = [phi](const Vec& x, const Vec& y) { return solve_phi(phi, x, y).value; };
  return FinslerMetric("k0", std::move(dom), std::move(eval), std::move(proj));
}

FinslerMetric build_km1(const HomogeneousFn& psi, const HomogeneousFn& phi) {
  if (psi.dim() != phi.dim()) fail(Err::BadParameter, "build_km1: dimension mismatch");
  if (!sampled_positive(psi)) fail(Err::Inadmissible, "build_km1: psi must be positive");

  HomogeneousFn plus = HomogeneousFn::sum(phi, psi);
  HomogeneousFn minus = HomogeneousFn::difference(phi, psi);
  if (!sampled_positive(plus)) fail(Err::Inadmissible, "build_km1: phi + psi must be positive");

  // Admissible cases: phi = psi, phi >= psi, or -psi <= phi <= psi.
  bool all_eq = true, all_ge = true, all_between = true;
  for (const Vec& u : detail::direction_samples(psi.dim(), 64)) {
    const double p = phi(u), s = psi(u);
    if (std::abs(p - s) > 1e-12 * (1.0 + std::abs(s))) all_eq = false;
    if (p - s < 0.0) all_ge = false;
    if (p > s || p < -s) all_between = false;
  }
  if (!all_eq && !all_ge && !all_between)
    fail(Err::Inadmissible, "build_km1: (psi, phi) matches no admissible case");

  DomainSpec dom = DomainSpec::sublevel(plus);
  auto phi_minus = [minus, plus, all_eq](const Vec& x, const Vec& y) {
    if (all_eq) return 0.0;
    return solve_phi_signed(minus, plus, x, y).value;
  };
  auto eval = [plus, phi_minus](const Vec& x, const Vec& y) {
    if (y.norm() == 0.0) return 0.0;
    return 0.5 * (solve_phi(plus, x, y).value - phi_minus(x, y));
  };
  auto proj = [plus, phi_minus](const Vec& x, const Vec& y) {
    if (y.norm() == 0.0) return 0.0;
    return 0.5 * (solve_phi(plus, x, y).value + phi_minus(x, y));
  };
  return FinslerMetric("km1", std::move(dom), std::move(eval), std::move(proj));
}

FinslerMetric minkowski_metric(const HomogeneousFn& psi) {
  return FinslerMetric("minkowski", DomainSpec::all_space(psi.dim()),
                       [psi](const Vec&, const Vec& y) { return psi(y); },
                       [](const Vec&, const Vec&) { return 0.0; });
}

FinslerMetric euclid_funk_metric(int dim) {
  DomainSpec dom = DomainSpec::sublevel(HomogeneousFn::euclidean(dim));
  FinslerMetric m(
      "funk:euclid", std::move(dom),
      [](const Vec& x, const Vec& y) { return funk_euclid_eval(x, y); },
      [](const Vec& x, const Vec& y) { return 0.5 * funk_euclid_eval(x, y); });
  if (dim == 2)
    m.set_exact_hessian([](const Vec& x, const Vec& y) {
      return closed::exact_g2([](const auto& p) { return closed::funk_ball(p); }, x[0], x[1],
                              y[0], y[1]);
    });
  return m;
}

FinslerMetric berwald_metric(int dim) {
  DomainSpec dom = DomainSpec::sublevel(HomogeneousFn::euclidean(dim));
  FinslerMetric m(
      "berwald", std::move(dom),
      [](const Vec& x, const Vec& y) { return berwald_eval(x, y); },
      [](const Vec& x, const Vec& y) { return funk_euclid_eval(x, y); });
  if (dim == 2)
    m.set_exact_hessian([](const Vec& x, const Vec& y) {
      return closed::exact_g2([](const auto& p) { return closed::berwald(p); }, x[0], x[1],
                              y[0], y[1]);
    });
  return m;
}

FinslerMetric riemann_metric(double lambda, int dim) {
  DomainSpec dom = (lambda >= 0.0)
                       ? DomainSpec::all_space(dim)
                       : DomainSpec::sublevel(
                             HomogeneousFn::scaled(HomogeneousFn::euclidean(dim),
                                                   std::sqrt(-lambda)));
  FinslerMetric m(
      "riemann(" + std::to_string(lambda) + ")", std::move(dom),
      [lambda](const Vec& x, const Vec& y) { return riemann_eval(lambda, x, y); },
      [lambda](const Vec& x, const Vec& y) {
        return -lambda * x.dot(y) / (1.0 + lambda * x.squaredNorm());
      });
  if (dim == 2)
    m.set_exact_hessian([lambda](const Vec& x, const Vec& y) {
      return closed::exact_g2([lambda](const auto& p) { return closed::riemann(lambda, p); },
                              x[0], x[1], y[0], y[1]);
    });
  return m;
}

FinslerMetric bryant_metric(double alpha, int dim) {
  if (!(alpha > 0.0) || alpha > M_PI / 4.0 + 1e-15)
    fail(Err::BadParameter, "bryant: alpha must lie in (0, pi/4]");
  FinslerMetric m(
      "bryant(" + std::to_string(alpha) + ")", DomainSpec::all_space(dim),
      [alpha](const Vec& x, const Vec& y) { return bryant_eval(alpha, x, y); });
  if (dim == 2)
    m.set_exact_hessian([alpha](const Vec& x, const Vec& y) {
      return closed::exact_g2([alpha](const auto& p) { return closed::bryant(alpha, p); },
                              x[0], x[1], y[0], y[1]);
    });
  return m;
}

FinslerMetric randers_k0_metric(const Vec& a) {
  const closed::RandersK0<double> md{a[0], a[1]};
  DomainSpec dom = DomainSpec::sublevel(HomogeneousFn::randers(a));
  FinslerMetric m(
      "randers_k0", std::move(dom),
      [md](const Vec& x, const Vec& y) {
        return y.norm() == 0.0 ? 0.0 : md.F(pack2(x, y[0], y[1]));
      },
      [md](const Vec& x, const Vec& y) {
        return y.norm() == 0.0 ? 0.0 : md.P(pack2(x, y[0], y[1]));
      });
  const double a1 = a[0], a2 = a[1];
  m.set_exact_hessian([a1, a2](const Vec& x, const Vec& y) {
    const closed::RandersK0<detail::Dual2> mk{a1, a2};
    return closed::exact_g2([&mk](const auto& p) { return mk.F(p); }, x[0], x[1], y[0], y[1]);
  });
  return m;
}

FinslerMetric randers_km1_metric(const Vec& a, double c) {
  if (!(c > 1.0)) fail(Err::BadParameter, "randers_km1: requires c > 1");
  const closed::RandersKm1<double> md{a[0], a[1], c};
  DomainSpec dom =
      DomainSpec::sublevel(HomogeneousFn::scaled(HomogeneousFn::randers(a), 1.0 + c));
  FinslerMetric m(
      "randers_km1", std::move(dom),
      [md](const Vec& x, const Vec& y) {
        return y.norm() == 0.0 ? 0.0 : md.F(pack2(x, y[0], y[1]));
      },
      [md](const Vec& x, const Vec& y) {
        return y.norm() == 0.0 ? 0.0 : md.P(pack2(x, y[0], y[1]));
      });
  const double a1 = a[0], a2 = a[1];
  m.set_exact_hessian([a1, a2, c](const Vec& x, const Vec& y) {
    const closed::RandersKm1<detail::Dual2> mk{a1, a2, c};
    return closed::exact_g2([&mk](const auto& p) { return mk.F(p); }, x[0], x[1], y[0], y[1]);
  });
  return m;
}

FinslerMetric hilbert_of(const FinslerMetric& funk) {
  if (funk.source().rfind("funk", 0) != 0)
    fail(Err::BadInput, "hilbert_of: argument is not a Funk metric");
  FinslerMetric base = funk;
  return FinslerMetric(
      "hilbert", funk.domain(),
      [base](const Vec& x, const Vec& y) { return 0.5 * (base(x, y) + base(x, -y)); },
      [base](const Vec& x, const Vec& y) { return 0.5 * (base(x, y) - base(x, -y)); });
}

FinslerMetric reverse_of(const FinslerMetric& metric) {
  FinslerMetric base = metric;
  FinslerMetric::Eval proj;
  if (metric.has_projective())
    proj = [base](const Vec& x, const Vec& y) { return -base.projective(x, -y); };
  FinslerMetric m("reverse(" + metric.source() + ")", metric.domain(),
                  [base](const Vec& x, const Vec& y) { return base(x, -y); },
                  std::move(proj));
  if (metric.has_exact_hessian())
    m.set_exact_hessian(
        [base](const Vec& x, const Vec& y) { return base.exact_hessian(x, -y); });
  return m;
}

const char* classification_name(Classification::Case c) {
  switch (c) {
    case Classification::Case::minkowski: return "minkowski";
    case Classification::Case::weak_funk: return "weak_funk";
    case Classification::Case::hilbert: return "hilbert";
    case Classification::Case::funk: return "funk";
    case Classification::Case::p_ge_f: return "p_ge_f";
    case Classification::Case::p_le_f: return "p_le_f";
  }
  return "unknown";
}

Classification classify(const HomogeneousFn& psi, const HomogeneousFn& phi, int curvature,
                        int samples) {
  if (curvature != 0 && curvature != -1)
    fail(Err::BadParameter, "classify: curvature must be 0 or -1");
  Classification cls;
  cls.curvature = curvature;

  const auto dirs = detail::direction_samples(psi.dim(), samples);
  const double tol = 1e-12;

  if (curvature == 0) {
    double max_abs_phi = 0.0;
    bool phi_pos = true;
    for (const Vec& u : dirs) {
      const double p = phi(u);
      max_abs_phi = std::max(max_abs_phi, std::abs(p));
      if (!(p > 0.0)) phi_pos = false;
    }
    if (max_abs_phi <= tol) {
      cls.label = Classification::Case::minkowski;
      cls.backward_complete = true;
      cls.reversibility_finite = true;
      return cls;
    }
    if (phi_pos) {
      cls.label = Classification::Case::weak_funk;
      cls.backward_complete = false;
      cls.reversibility_finite = false;
      return cls;
    }
    fail(Err::Inadmissible, "classify: phi neither zero nor positive");
  }

  bool rev_psi = true, odd_phi = true, eq = true, ge = true, between = true;
  for (const Vec& u : dirs) {
    const double p = phi(u), pm = phi(-u), s = psi(u), sm = psi(-u);
    if (std::abs(s - sm) > tol * (1.0 + s)) rev_psi = false;
    if (std::abs(p + pm) > tol * (1.0 + std::abs(p))) odd_phi = false;
    if (std::abs(p - s) > tol * (1.0 + s)) eq = false;
    if (!(p - s > tol * s)) ge = false;
    if (!(p < s * (1.0 - tol)) || !(p > -s * (1.0 - tol))) between = false;
  }

  if (eq) {
    cls.label = Classification::Case::funk;
    cls.backward_complete = false;
    cls.reversibility_finite = false;
  } else if (rev_psi && odd_phi && between) {
    cls.label = Classification::Case::hilbert;
    cls.backward_complete = true;
    cls.reversibility_finite = true;
  } else if (ge) {
    cls.label = Classification::Case::p_ge_f;
    cls.backward_complete = false;
    cls.reversibility_finite = false;
  } else if (between) {
    cls.label = Classification::Case::p_le_f;
    cls.backward_complete = false;
    cls.reversibility_finite = false;
  } else {
    fail(Err::Inadmissible, "classify: sampled data match no K=-1 case");
  }
  return cls;
}

double critical_lambda(double c) {
  if (!(c > 1.0)) fail(Err::BadParameter, "critical_lambda: requires c > 1");
  const double p = std::cbrt((c + 1.0) * (c + 1.0));
  const double q = std::cbrt((c - 1.0) * (c - 1.0));
  return 0.5 * (p - q) * std::sqrt(p + q);
}

}  // namespace finsler
