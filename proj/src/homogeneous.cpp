// SPDX-License-Identifier: Apache-2.0
#include "finsler/homogeneous.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <vector>

#include "finsler/detail/derivatives.hpp"
#include "finsler/detail/optimize.hpp"

namespace finsler {

namespace {

constexpr double kGoldenAngle = 2.399963229728653;  // pi (3 - sqrt 5)

}  // namespace

namespace detail {

Vec unit2(double theta) {
  Vec u(2);
  u << std::cos(theta), std::sin(theta);
  return u;
}

std::vector<Vec> direction_samples(int dim, int count) {
  std::vector<Vec> dirs;
  dirs.reserve(count);
  if (dim == 2) {
    for (int k = 0; k < count; ++k) dirs.push_back(unit2(k * kGoldenAngle));
    return dirs;
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < count; ++k) {
    Vec u(dim);
    do {
      for (int i = 0; i < dim; ++i) u[i] = gauss(rng);
    } while (u.norm() < 1e-8);
    dirs.push_back(u.normalized());
  }
  return dirs;
}

}  // namespace detail

HomogeneousFn HomogeneousFn::euclidean(int dim) {
  if (dim < 2) fail(Err::BadParameter, "euclidean: dim must be >= 2");
  HomogeneousFn f;
  f.dim_ = dim;
  f.kind_ = NormKind::euclidean;
  f.eval_ = [](const Vec& y) { return y.norm(); };
  f.grad_ = [](const Vec& y) { return Vec(y.normalized()); };
  return f;
}

HomogeneousFn HomogeneousFn::randers(const Vec& a) {
  if (a.size() < 2) fail(Err::BadParameter, "randers: dim must be >= 2");
  if (a.norm() >= 1.0) fail(Err::BadParameter, "randers: requires |a| < 1");
  HomogeneousFn f;
  f.dim_ = static_cast<int>(a.size());
  f.kind_ = NormKind::randers;
  f.a_ = a;
  Vec av = a;
  f.eval_ = [av](const Vec& y) { return y.norm() + av.dot(y); };
  f.grad_ = [av](const Vec& y) { return Vec(y.normalized() + av); };
  return f;
}

HomogeneousFn HomogeneousFn::linear(const Vec& a) {
  HomogeneousFn f;
  f.dim_ = static_cast<int>(a.size());
  f.kind_ = NormKind::linear;
  f.a_ = a;
  Vec av = a;
  f.eval_ = [av](const Vec& y) { return av.dot(y); };
  f.grad_ = [av](const Vec&) { return av; };
  return f;
}

HomogeneousFn HomogeneousFn::zero(int dim) {
  HomogeneousFn f;
  f.dim_ = dim;
  f.kind_ = NormKind::zero;
  f.eval_ = [](const Vec&) { return 0.0; };
  f.grad_ = [dim](const Vec&) { return Vec(Vec::Zero(dim)); };
  return f;
}

HomogeneousFn HomogeneousFn::scaled(const HomogeneousFn& base, double c) {
  HomogeneousFn f;
  f.dim_ = base.dim();
  f.kind_ = NormKind::scaled;
  f.c_ = c;
  f.base_ = std::make_shared<HomogeneousFn>(base);
  auto b = f.base_;
  f.eval_ = [b, c](const Vec& y) { return c * (*b)(y); };
  if (base.has_closed_grad()) {
    f.grad_ = [b, c](const Vec& y) { return Vec(c * b->grad(y)); };
  }
  return f;
}

HomogeneousFn HomogeneousFn::sum(const HomogeneousFn& lhs, const HomogeneousFn& rhs) {
  if (lhs.dim() != rhs.dim()) fail(Err::BadParameter, "sum: dimension mismatch");
  HomogeneousFn f;
  f.dim_ = lhs.dim();
  f.kind_ = NormKind::sum;
  f.base_ = std::make_shared<HomogeneousFn>(lhs);
  f.rhs_ = std::make_shared<HomogeneousFn>(rhs);
  auto l = f.base_, r = f.rhs_;
  f.eval_ = [l, r](const Vec& y) { return (*l)(y) + (*r)(y); };
  if (lhs.has_closed_grad() && rhs.has_closed_grad()) {
    f.grad_ = [l, r](const Vec& y) { return Vec(l->grad(y) + r->grad(y)); };
  }
  return f;
}

HomogeneousFn HomogeneousFn::difference(const HomogeneousFn& lhs, const HomogeneousFn& rhs) {
  if (lhs.dim() != rhs.dim()) fail(Err::BadParameter, "difference: dimension mismatch");
  HomogeneousFn f;
  f.dim_ = lhs.dim();
  f.kind_ = NormKind::difference;
  f.base_ = std::make_shared<HomogeneousFn>(lhs);
  f.rhs_ = std::make_shared<HomogeneousFn>(rhs);
  auto l = f.base_, r = f.rhs_;
  f.eval_ = [l, r](const Vec& y) { return (*l)(y) - (*r)(y); };
  if (lhs.has_closed_grad() && rhs.has_closed_grad()) {
    f.grad_ = [l, r](const Vec& y) { return Vec(l->grad(y) - r->grad(y)); };
  }
  return f;
}

HomogeneousFn HomogeneousFn::custom(int dim, std::function<double(const Vec&)> eval) {
  HomogeneousFn f;
  f.dim_ = dim;
  f.kind_ = NormKind::custom;
  f.eval_ = std::move(eval);
  return f;
}

Vec HomogeneousFn::grad(const Vec& y) const {
  if (kind_ != NormKind::zero && kind_ != NormKind::linear && y.norm() == 0.0)
    fail(Err::ZeroVector, "gradient requested at y = 0");
  if (grad_) return grad_(y);
  return detail::fd_gradient(eval_, y);
}

double HomogeneousFn::directional(const Vec& y, const Vec& v) const {
  if (grad_) return grad_(y).dot(v);
  const double h = 1e-5 * std::max(1.0, y.norm()) / std::max(1.0, v.norm());
  return detail::diff1([&](double s) { return eval_(y + s * v); }, h);
}

std::pair<double, Vec> eval_and_grad(const HomogeneousFn& f, const Vec& y) {
  const double v = f(y);
  if (!std::isfinite(v)) fail(Err::NonFinite, "eval overflow");
  return {v, f.grad(y)};
}

RegularityReport regularity_check(const HomogeneousFn& f, int samples) {
  const int n = f.dim();
  RegularityReport rep;

  std::vector<Vec> dirs;
  if (n == 2) {
    // Uniform angles so that indicatrix points come out angularly ordered.
    dirs.reserve(samples);
    for (int k = 0; k < samples; ++k)
      dirs.push_back(detail::unit2(2.0 * M_PI * k / samples));
  } else {
    dirs = detail::direction_samples(n, samples);
  }

  std::vector<double> vals(dirs.size());
  for (size_t i = 0; i < dirs.size(); ++i) {
    vals[i] = f(dirs[i]);
    if (!(vals[i] > 0.0)) fail(Err::NotPositive, "f(y) <= 0 on a sampled direction");
  }

  // Triangle inequality on sampled pairs.
  rep.quasi_regular = true;
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<size_t> pick(0, dirs.size() - 1);
  for (int t = 0; t < 4 * samples; ++t) {
    const size_t i = pick(rng), j = pick(rng);
    const double lhs = f(dirs[i] + dirs[j]);
    if (lhs > vals[i] + vals[j] + 1e-12 * (1.0 + lhs)) {
      rep.quasi_regular = false;
      break;
    }
  }

  // Strict convexity of the indicatrix: consecutive-triple collinearity in 2D.
  if (n == 2) {
    rep.strictly_convex = true;
    const size_t m = dirs.size();
    for (size_t i = 0; i < m; ++i) {
      const Vec p0 = dirs[i] / vals[i];
      const Vec p1 = dirs[(i + 1) % m] / vals[(i + 1) % m];
      const Vec p2 = dirs[(i + 2) % m] / vals[(i + 2) % m];
      const Vec d1 = p1 - p0, d2 = p2 - p1;
      const double cross = d1[0] * d2[1] - d1[1] * d2[0];
      if (std::abs(cross) <= 1e-9 * d1.norm() * d2.norm()) {
        rep.strictly_convex = false;
        break;
      }
    }
  }

  // Hessian of 1/2 f^2 on sampled unit directions.
  auto rel_min_eig = [&](const Vec& u) {
    const double h = 3e-4;
    Mat g = 0.5 * detail::fd_hessian([&](const Vec& y) { const double v = f(y); return v * v; },
                                     u, h);
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    const double tr = g.trace() / n;
    return es.eigenvalues().minCoeff() / std::max(tr, 1e-300);
  };

  int pd = 0;
  double worst = std::numeric_limits<double>::infinity();
  double worst_theta = 0.0;
  for (size_t i = 0; i < dirs.size(); ++i) {
    const double r = rel_min_eig(dirs[i]);
    if (r > 1e-9) ++pd;
    if (r < worst) {
      worst = r;
      worst_theta = std::atan2(dirs[i][1], dirs[i][0]);
    }
  }
  rep.hessian_pd_rate = static_cast<double>(pd) / dirs.size();
  rep.min_rel_eig = worst;
  if (n == 2) {
    const double w = 2.0 * M_PI / samples;
    rep.min_rel_eig = detail::golden_min(
        [&](double th) { return rel_min_eig(detail::unit2(th)); }, worst_theta - w,
        worst_theta + w, 1e-8);
  }

  if (rep.min_rel_eig > 1e-6) {
    rep.strength = NormStrength::strong;
    if (n > 2) rep.strictly_convex = true;  // strong convexity implies it
  } else if (rep.strictly_convex) {
    rep.strength = NormStrength::weak;
  } else {
    rep.strength = NormStrength::pseudo;
  }
  return rep;
}

MinkowskiNorm make_minkowski(const HomogeneousFn& f, int samples) {
  return MinkowskiNorm{f, regularity_check(f, samples).strength};
}

}  // namespace finsler
