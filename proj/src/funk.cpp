// SPDX-License-Identifier: Apache-2.0
#include "finsler/funk.hpp"

#include <cmath>
#include <random>

namespace finsler {

namespace {

constexpr double kDomainMargin = 1e-12;

int scan_sign_changes(const std::function<double(double)>& h, double lo, double hi, int points) {
  int changes = 0;
  double prev = h(lo);
  for (int i = 1; i <= points; ++i) {
    const double t = lo + (hi - lo) * i / points;
    const double cur = h(t);
    if (prev < 0.0 ? cur >= 0.0 : cur < 0.0) ++changes;
    prev = cur;
  }
  return changes;
}

// Newton iteration on h(t) = t - phi(y + t x), kept inside a sign-changing
// bracket [lo, hi] with h(lo) < 0 <= h(hi); falls back to bisection whenever a
// step leaves the bracket.
FunkSolution newton_on_bracket(const HomogeneousFn& phi, const Vec& x, const Vec& y, double lo,
                               double hi, const FunkOptions& opts) {
  auto h = [&](double t) { return t - phi(y + t * x); };
  FunkSolution sol;
  double t = hi;
  for (int it = 0; it < opts.max_iter; ++it) {
    ++sol.iterations;
    const double hv = h(t);
    if (!std::isfinite(hv)) fail(Err::NonFinite, "solve_phi: non-finite residual");
    if (hv >= 0.0)
      hi = t;
    else
      lo = t;
    if (std::abs(hv) <= opts.tol * (1.0 + std::abs(t))) {
      sol.value = t;
      sol.lo = lo;
      sol.hi = hi;
      sol.residual = std::abs(hv);
      return sol;
    }
    const double hp = 1.0 - phi.directional(y + t * x, x);
    double next = (std::abs(hp) > 1e-14) ? t - hv / hp : 0.5 * (lo + hi);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= opts.tol * (1.0 + std::abs(t))) {
      sol.value = 0.5 * (lo + hi);
      sol.lo = lo;
      sol.hi = hi;
      sol.residual = std::abs(h(sol.value));
      if (sol.residual > 1e3 * opts.tol * (1.0 + std::abs(sol.value)))
        fail(Err::NoConvergence, "solve_phi: bracket collapsed without residual convergence");
      return sol;
    }
    t = next;
  }
  fail(Err::NoConvergence, "solve_phi: max iterations exceeded");
}

}  // namespace

FunkSolution solve_phi(const HomogeneousFn& phi, const Vec& x, const Vec& y,
                       const FunkOptions& opts) {
  const double phix = phi(x);
  if (phix >= 1.0 - kDomainMargin) fail(Err::OutsideDomain, "solve_phi: phi(x) >= 1");
  if (y.norm() == 0.0) return {};

  const double phiy = phi(y);
  if (!(phiy > 0.0)) fail(Err::NotPositive, "solve_phi: phi(y) <= 0 for y != 0");

  auto h = [&](double t) { return t - phi(y + t * x); };
  double hi = phiy / (1.0 - std::max(phix, 0.0));
  // Quasi-regular phi gives h(hi) >= 0 analytically; expand otherwise.
  int guard = 0;
  while (h(hi) < 0.0) {
    hi = 2.0 * hi + 1.0;
    if (++guard > 60) fail(Err::NoConvergence, "solve_phi: no upper bracket found");
  }

  FunkSolution sol = newton_on_bracket(phi, x, y, 0.0, hi, opts);
  if (opts.scan_roots)
    sol.sign_changes = scan_sign_changes(h, 0.0, phiy / (1.0 - std::max(phix, 0.0)) + 1.0,
                                         opts.scan_points);
  return sol;
}

FunkSolution solve_phi_signed(const HomogeneousFn& tilde_phi,
                              const HomogeneousFn& dominating_phi, const Vec& x, const Vec& y,
                              Branch branch, const FunkOptions& opts) {
  const double tv = (y.norm() == 0.0) ? 0.0 : tilde_phi(y);
  auto h = [&](double t) { return t - tilde_phi(y + t * x); };

  if (tv == 0.0) return {};

  FunkSolution sol;
  if (tv > 0.0) {
    if (branch == Branch::nonpos)
      fail(Err::BranchMissing, "solve_phi_signed: tilde_phi(y) > 0 has no nonpositive root");
    double hi = solve_phi(dominating_phi, x, y, opts).value;
    int guard = 0;
    while (h(hi) < 0.0) {  // tilde < dominating makes h(hi) > 0 analytically
      hi = 2.0 * hi + 1.0;
      if (++guard > 60) fail(Err::BranchMissing, "solve_phi_signed: no positive bracket");
    }
    sol = newton_on_bracket(tilde_phi, x, y, 0.0, hi, opts);
  } else {
    if (branch == Branch::nonneg)
      fail(Err::BranchMissing, "solve_phi_signed: tilde_phi(y) < 0 has no nonnegative root");
    // h(0) = -tv > 0; walk down geometrically until the sign changes, so the
    // bracket holds the largest negative root. The linear bound from the
    // dominating norm caps how far the walk can need to go.
    double lo = -std::max(opts.tol, std::abs(tv));
    const double cap = -1e9 * (1.0 + std::abs(tv));
    while (h(lo) >= 0.0) {
      lo *= 2.0;
      if (lo < cap) fail(Err::BranchMissing, "solve_phi_signed: no negative root by bound");
    }
    // Mirror to s = -t so the loop keeps hm(a) < 0 <= hm(b) as in the positive case.
    auto hm = [&](double s) { return -h(-s); };
    double a = 0.0, b = -lo;  // hm(0) = tv < 0, hm(-lo) = -h(lo) > 0
    double s = b;
    for (int it = 0;; ++it) {
      if (it >= opts.max_iter) fail(Err::NoConvergence, "solve_phi_signed: max iterations");
      ++sol.iterations;
      const double hv = hm(s);
      if (hv >= 0.0)
        b = s;
      else
        a = s;
      if (std::abs(hv) <= opts.tol * (1.0 + std::abs(s))) break;
      const double hp = 1.0 - tilde_phi.directional(y - s * x, x);  // d/ds hm(s)
      double next = (std::abs(hp) > 1e-14) ? s - hv / hp : 0.5 * (a + b);
      if (!(next > a) || !(next < b)) next = 0.5 * (a + b);
      if (b - a <= opts.tol * (1.0 + std::abs(s))) {
        s = 0.5 * (a + b);
        break;
      }
      s = next;
    }
    sol.value = -s;
    sol.lo = -b;
    sol.hi = -a;
    sol.residual = std::abs(h(-s));
  }

  if (opts.scan_roots) {
    const double span_hi = std::max(1.0, 2.0 * std::abs(sol.value) + 1.0);
    sol.sign_changes = scan_sign_changes(h, -span_hi, span_hi, opts.scan_points);
  }
  return sol;
}

int count_ray_roots(const HomogeneousFn& phi, const Vec& x, const Vec& y, int points) {
  const double phix = phi(x);
  if (phix >= 1.0 - kDomainMargin) fail(Err::OutsideDomain, "count_ray_roots: phi(x) >= 1");
  auto h = [&](double t) { return t - phi(y + t * x); };
  const double hi = phi(y) / (1.0 - std::max(phix, 0.0)) + 1.0;
  return scan_sign_changes(h, 0.0, hi, points);
}

double translate_base_check(const HomogeneousFn& phi, const Vec& xbar, int samples,
                            std::uint64_t seed) {
  if (phi(xbar) >= 1.0 - kDomainMargin) fail(Err::OutsideDomain, "translate_base_check");
  const int n = phi.dim();

  HomogeneousFn phibar = HomogeneousFn::custom(
      n, [phi, xbar](const Vec& y) { return solve_phi(phi, xbar, y).value; });

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.05, 0.8);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    Vec u(n), y(n);
    for (int i = 0; i < n; ++i) u[i] = gauss(rng);
    for (int i = 0; i < n; ++i) y[i] = gauss(rng);
    if (u.norm() < 1e-8 || y.norm() < 1e-8) continue;
    u.normalize();
    const Vec z = (unif(rng) / phi(u)) * u;  // z in Omega, away from the boundary
    const Vec x = z - xbar;
    const double lhs = solve_phi(phi, z, y).value;
    const double rhs = solve_phi(phibar, x, y).value;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double indicatrix_translation_check(const HomogeneousFn& phi, const Vec& x, int samples) {
  if (phi(x) >= 1.0 - kDomainMargin) fail(Err::OutsideDomain, "indicatrix_translation_check");
  const auto dirs = detail::direction_samples(phi.dim(), samples);
  double worst = 0.0;
  for (const Vec& u : dirs) {
    const double v = solve_phi(phi, x, u).value;
    const Vec p = u / v;       // on {Phi(x,.) = 1}
    const Vec z = p + x;       // should land on {phi = 1}
    const double pz = phi(z);  // radial projection gap
    worst = std::max(worst, (z - z / pz).norm());
  }
  return worst;
}

}  // namespace finsler
