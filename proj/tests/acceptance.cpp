// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "finsler/analysis.hpp"
#include "finsler/detail/derivatives.hpp"
#include "finsler/geometry.hpp"
#include "finsler/metrics.hpp"
#include "finsler/sphere.hpp"
#include "finsler/tensor.hpp"
#include "helpers.hpp"

using namespace finsler;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec interior(oracle::Rng& rng, const FinslerMetric& F, double max_frac) {
  const Vec u = rng.unit(F.dim());
  const double r = F.domain().boundary_radius(u);
  return std::isfinite(r) ? Vec(rng.uniform(0.05, max_frac) * r * u)
                          : Vec(2.0 * rng.uniform(0.05, max_frac) * u);
}

struct Harness {
  int failures = 0;

  void report(int id, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

}  // namespace

int main() {
  Harness h;
  oracle::Rng rng(42);
  const auto euclid = HomogeneousFn::euclidean(2);

  // 1. Funk solver vs the ball closed form.
  {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Vec x = rng.in_ball(2, 0.97);
      Vec y = rng.vector(2);
      if (y.norm() < 1e-8) y = v2(1, 0);
      const double want = oracle::funk_ball(x, y);
      worst = std::max(worst, std::abs(solve_phi(euclid, x, y).value - want) / want);
    }
    const double dt = seconds_since(t0);
    h.report(1, worst < 1e-10 && dt < 1.0,
             fmt("funk solver vs closed form: max rel err %.2e (tol 1e-10), %.2f s", worst, dt));
  }

  // 2. Builders vs closed forms.
  {
    const FinslerMetric k0 = build_k0(euclid, euclid);
    const FinslerMetric km1 = build_km1(euclid, HomogeneousFn::zero(2));
    double w0 = 0.0, w1 = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Vec x = rng.in_ball(2, 0.9);
      Vec y = rng.vector(2);
      if (y.norm() < 1e-8) y = v2(1, 0);
      w0 = std::max(w0, std::abs(k0(x, y) - oracle::berwald(x, y)) / oracle::berwald(x, y));
      w1 = std::max(w1, std::abs(km1(x, y) - oracle::riemann(-1, x, y)) /
                            oracle::riemann(-1, x, y));
    }
    h.report(2, w0 < 1e-8 && w1 < 1e-8,
             fmt("builders vs closed forms: berwald %.2e, klein %.2e (tol 1e-8)", w0, w1));
  }

  // 3. Flag curvature and Berwald residuals by finite differences.
  {
    struct Case {
      const char* name;
      FinslerMetric F;
      double K, tol;
    };
    const Case cases[] = {{"berwald", berwald_metric(2), 0.0, 1e-5},
                          {"hilbert", hilbert_of(euclid_funk_metric(2)), -1.0, 1e-5},
                          {"funk", euclid_funk_metric(2), -0.25, 1e-5},
                          {"bryant", bryant_metric(0.3, 2), 1.0, 1e-4}};
    bool ok = true;
    std::string detail = "K dev:";
    for (const auto& c : cases) {
      double kdev = 0.0, rmax = 0.0;
      for (int k = 0; k < 100; ++k) {
        const Vec x = interior(rng, c.F, 0.6);
        const Vec y = rng.unit(2);
        const CurvatureReport rep = flag_curvature(c.F, x, y);
        kdev = std::max(kdev, std::abs(rep.K_formula - c.K));
        const BerwaldResiduals res = berwald_residuals(c.F, c.K, x, y);
        rmax = std::max({rmax, res.r1.norm(), res.r2.norm()});
      }
      ok = ok && kdev < c.tol && rmax < 1e-4;
      detail += fmt(" %s %.1e/r %.1e", c.name, kdev, rmax);
    }
    h.report(3, ok, detail + " (residual tol 1e-4)");
  }

  // 4. Curvature cross-oracle: formula vs geodesic profile.
  {
    struct Case {
      const char* name;
      FinslerMetric F;
    };
    const Case cases[] = {{"berwald", berwald_metric(2)},
                          {"hilbert", hilbert_of(euclid_funk_metric(2))},
                          {"funk", euclid_funk_metric(2)},
                          {"bryant", bryant_metric(0.3, 2)}};
    bool ok = true;
    double worst = 0.0;
    for (const auto& c : cases) {
      for (int k = 0; k < 50; ++k) {
        const Vec x = interior(rng, c.F, 0.6);
        const Vec y = rng.unit(2);
        const CurvatureReport rep = flag_curvature(c.F, x, y);
        worst = std::max(worst, std::abs(rep.K_formula - rep.K_profile));
      }
    }
    ok = worst < 1e-3;
    h.report(4, ok, fmt("profile cross-oracle: max |K_formula - K_profile| %.2e (tol 1e-3)",
                        worst));
  }

  // 5. Distance formulas vs adaptive line integrals.
  {
    struct Case {
      const char* name;
      FinslerMetric F;
      int K;
    };
    const Case cases[] = {{"berwald", berwald_metric(2), 0},
                          {"hilbert", hilbert_of(euclid_funk_metric(2)), -1},
                          {"bryant", bryant_metric(0.3, 2), 1}};
    double worst = 0.0;
    for (const auto& c : cases) {
      for (int k = 0; k < 200; ++k) {
        const Vec x1 = interior(rng, c.F, 0.8), x2 = interior(rng, c.F, 0.8);
        if ((x2 - x1).norm() < 1e-3) continue;
        worst = std::max(worst, distance(c.F, c.K, x1, x2).rel_err);
      }
    }
    const double sb = distance(berwald_metric(2), 0, Vec::Zero(2), v2(0.5, 0)).formula;
    const double sh =
        distance(hilbert_of(euclid_funk_metric(2)), -1, Vec::Zero(2), v2(0.5, 0)).formula;
    const double sr = distance(riemann_metric(1, 2), 1, Vec::Zero(2), v2(1, 0)).formula;
    const bool spots = std::abs(sb - 1.0) < 1e-10 &&
                       std::abs(sh - 0.5 * std::log(3.0)) < 1e-10 &&
                       std::abs(sr - M_PI / 4) < 1e-10;
    h.report(5, worst < 1e-6 && spots,
             fmt("distance rel err %.2e (tol 1e-6); spots %.6f, %.6f, %.6f", worst, sb, sh, sr));
  }

  // 6. K=0 domain evolution at resolution 400^2.
  double scan_seconds = 0.0;
  {
    ScanOptions opts;
    opts.resolution = 400;
    opts.directions = 64;
    opts.threads = 8;

    const auto t0 = std::chrono::steady_clock::now();
    const DomainScan s1 = scan_domain_2d(randers_k0_metric(v2(std::sqrt(5.0) / 3.0, 0)), opts);
    const DomainScan s2 =
        scan_domain_2d(randers_k0_metric(v2(2.0 * std::sqrt(2.0) / 3.0, 0)), opts);
    const DomainScan s3 =
        scan_domain_2d(randers_k0_metric(v2(std::sqrt(34.0) / 6.0, 0)), opts);
    scan_seconds = seconds_since(t0) / 3.0;

    double frontier_worst = 0.0;
    int traced = 0;
    for (const auto& pt : s3.frontier) {
      if (!pt.converged) continue;
      frontier_worst =
          std::max(frontier_worst, std::abs(hyperbola_residual(std::sqrt(34.0) / 6.0, pt.x)));
      ++traced;
    }

    ScanOptions bopts;
    bopts.resolution = 200;
    bopts.directions = 48;
    bopts.threads = 8;
    auto comps = [&](double a1) {
      return scan_domain_2d(randers_k0_metric(v2(a1, 0)), bopts).components;
    };
    double lo = 0.92, hi = 0.96;
    bool bisect_ok = comps(lo) == 1 && comps(hi) >= 2;
    while (bisect_ok && hi - lo > 0.004) {
      const double mid = 0.5 * (lo + hi);
      (comps(mid) >= 2 ? hi : lo) = mid;
    }
    const double astar = 0.5 * (lo + hi);
    bisect_ok = bisect_ok && std::abs(astar - 2.0 * std::sqrt(2.0) / 3.0) <= 0.01;

    const bool ok = s1.components == 1 && s1.configuration == ScanConfiguration::connected &&
                    s2.configuration == ScanConfiguration::line_split && s3.components == 2 &&
                    traced > 100 && frontier_worst < 1e-4 && bisect_ok &&
                    scan_seconds < 60.0;
    h.report(6, ok,
             fmt("domain evolution: comps %d/%s/%d, frontier |res| %.2e (tol 1e-4, %d pts), "
                 "a1* %.4f (want 0.9428 +- 0.01), %.1f s/scan",
                 s1.components, configuration_name(s2.configuration), s3.components,
                 frontier_worst, traced, astar, scan_seconds));
  }

  // 7. K=-1 domain transition at Lambda(2).
  {
    ScanOptions opts;
    opts.resolution = 200;
    opts.directions = 48;
    opts.threads = 8;
    auto comps = [&](double a1) {
      return scan_domain_2d(randers_km1_metric(v2(a1, 0), 2.0), opts).components;
    };
    double lo = 0.93, hi = 0.965;
    bool ok = comps(lo) == 1 && comps(hi) >= 2;
    while (ok && hi - lo > 0.004) {
      const double mid = 0.5 * (lo + hi);
      (comps(mid) >= 2 ? hi : lo) = mid;
    }
    const double astar = 0.5 * (lo + hi);
    const double want = critical_lambda(2.0);
    ok = ok && std::abs(astar - want) <= 0.01;
    h.report(7, ok, fmt("K=-1 transition: a1* %.4f vs Lambda(2) %.4f (+- 0.01)", astar, want));
  }

  // 8. K=1 global geometry.
  {
    const FinslerMetric bry = bryant_metric(0.3, 2);
    const double line = line_length(bry, Vec::Zero(2), v2(1, 0), 1e6);
    const double line_r = line_length(riemann_metric(1, 2), Vec::Zero(2), v2(1, 0), 1e6);

    double diam = 0.0;
    for (int k = 0; k < 200; ++k) {
      const Vec a = 3.0 * rng.vector(2), b = 3.0 * rng.vector(2);
      if ((a - b).norm() < 1e-3) continue;
      diam = std::max(diam, distance(bry, 1, a, b).formula);
    }

    Vec A(3), B(3), C(3);
    A << 0, 0, 1;
    B << 1, 0, 0;
    C << 0, std::sqrt(0.5), std::sqrt(0.5);
    const double circ1 = great_circle_length(bry, A, B);
    const double circ2 = great_circle_length(bry, B, C);

    const EquatorReport deg = equator_extension_check(M_PI / 4.0);
    const EquatorReport fine = equator_extension_check(0.3);

    const bool ok = std::abs(line - M_PI) < 1e-3 && std::abs(line_r - M_PI) < 1e-3 &&
                    diam <= M_PI + 1e-9 && std::abs(circ1 - 2 * M_PI) < 2e-3 &&
                    std::abs(circ2 - 2 * M_PI) < 2e-3 && deg.min_eig < 1e-6 &&
                    fine.min_eig > 1e-3;
    h.report(8, ok,
             fmt("K=1: line %.5f/%.5f (pi +- 1e-3), diam %.5f <= pi, circles %.5f/%.5f "
                 "(2pi +- 2e-3), equator eig %.1e / %.2e",
                 line, line_r, diam, circ1, circ2, deg.min_eig, fine.min_eig));
  }

  // 9. Analytic layer.
  {
    const FinslerMetric ber = build_k0(euclid, euclid);
    const FinslerMetric hil = build_km1(euclid, HomogeneousFn::zero(2));
    double unit_worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Vec x0 = interior(rng, ber, 0.85);
      if (x0.norm() < 0.05) continue;
      unit_worst = std::max(
          unit_worst, std::abs(ber(x0, grad_r(0, euclid, euclid, x0)) - 1.0));
      const Vec x1 = interior(rng, hil, 0.85);
      if (x1.norm() < 0.05) continue;
      unit_worst = std::max(
          unit_worst,
          std::abs(hil(x1, grad_r(-1, euclid, HomogeneousFn::zero(2), x1)) - 1.0));
    }

    double s_div_worst = 0.0, s_tau_worst = 0.0;
    const FinslerMetric ber_closed = berwald_metric(2);
    const FinslerMetric klein = riemann_metric(-1.0, 2);
    for (int k = 0; k < 10; ++k) {
      const Vec x = interior(rng, ber, 0.6);
      const Vec y = rng.unit(2);
      const AnalyticReport rep = s_curvature(ber, x, y);
      s_div_worst = std::max(s_div_worst, std::abs(rep.S - rep.S_divergence));
      // The independent distortion oracle differentiates the tensor's log-det,
      // so it runs on the closed-form instances of the two families.
      for (const FinslerMetric* M : {&ber_closed, &klein}) {
        const Vec xc = interior(rng, *M, 0.6);
        const AnalyticReport rc = s_curvature(*M, xc, y);
        s_tau_worst =
            std::max(s_tau_worst, std::abs(rc.S / (*M)(xc, y) - rc.distortion_rate));
      }
    }

    const auto rows = growth_check(0, euclid, euclid, v2(1, 0), {0.9, 0.99, 0.999});
    double ratio_min = 1e300;
    for (const auto& r : rows) ratio_min = std::min(ratio_min, r.ratio);

    const auto phi2 = HomogeneousFn::scaled(euclid, 2.0);
    const FinslerMetric km12 = build_km1(euclid, phi2);
    const double e16 = std::exp(16.0);
    const Vec x8 = ((e16 - 1.0) / (3.0 * e16 - 1.0)) * v2(1, 0);
    const AnalyticReport slim = s_curvature(km12, x8, grad_r(-1, euclid, phi2, x8));
    const double slim_dev = std::abs(slim.S / 3.0 - 1.0);

    const bool ok = unit_worst < 1e-6 && s_div_worst < 1e-8 && s_tau_worst < 1e-3 &&
                    ratio_min >= 0.5 && slim_dev < 1e-2;
    h.report(9, ok,
             fmt("analytic: |F(grad r)-1| %.1e (1e-6), |S-(n+1)P| %.1e (1e-8), |S-dtau| %.1e "
                 "(1e-3), growth ratio min %.2f (>=0.5), S-limit dev %.1e (1e-2)",
                 unit_worst, s_div_worst, s_tau_worst, ratio_min, slim_dev));
  }

  // 10. Property suites.
  {
    const double ind1 = indicatrix_translation_check(euclid, v2(0.5, 0), 128);
    const double ind2 =
        indicatrix_translation_check(HomogeneousFn::randers(v2(0.3, 0)), v2(0.2, 0.1), 128);
    const double tr1 = translate_base_check(euclid, v2(0.3, 0), 100);
    const double tr2 = translate_base_check(HomogeneousFn::randers(v2(0.2, 0)), v2(0.1, 0.1), 100);

    double hom_worst = 0.0;
    const auto phi = HomogeneousFn::randers(v2(0.4, 0));
    for (int k = 0; k < 100; ++k) {
      const Vec x = rng.in_ball(2, 0.5);
      Vec y = rng.vector(2);
      if (y.norm() < 1e-8) y = v2(1, 0);
      const double alpha = rng.uniform(0.01, 20.0);
      const double a = solve_phi(phi, x, y).value;
      const double b = solve_phi(phi, x, alpha * y).value;
      hom_worst = std::max(hom_worst, std::abs(b - alpha * a) / (1.0 + alpha * a));
    }

    const FinslerMetric ber = berwald_metric(2);
    double slack = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Vec x = rng.in_ball(2, 0.8);
      Vec y = rng.vector(2), xi = rng.vector(2);
      if (y.norm() < 1e-8) y = v2(1, 0);
      const double fs = co_metric(ber, x, xi).value;
      slack = std::min(slack, ber(x, y) * fs - y.dot(xi));
    }

    // Midpoint convexity of scanned strong components.
    ScanOptions opts;
    opts.resolution = 160;
    opts.directions = 48;
    opts.threads = 8;
    const DomainScan scan = scan_domain_2d(randers_k0_metric(v2(std::sqrt(34.0) / 6.0, 0)), opts);
    std::vector<std::pair<Vec, int>> strong;
    for (int j = 0; j < scan.ny; ++j)
      for (int i = 0; i < scan.nx; ++i) {
        const size_t idx = static_cast<size_t>(j) * scan.nx + i;
        if (scan.labels[idx] == CellLabel::strong)
          strong.push_back({scan.cell_center(i, j), scan.component_of[idx]});
      }
    int violations = 0;
    for (int k = 0; k < 200 && !strong.empty(); ++k) {
      const auto& [p, cp] = strong[static_cast<size_t>(rng.uniform(0, strong.size() - 1e-9))];
      const auto& [q, cq] = strong[static_cast<size_t>(rng.uniform(0, strong.size() - 1e-9))];
      if (cp != cq || (p - q).norm() < 4.0 * std::max(scan.dx, scan.dy)) continue;
      const Vec m = 0.5 * (p + q);
      const int i = static_cast<int>(std::lround((m[0] - scan.x0) / scan.dx));
      const int j = static_cast<int>(std::lround((m[1] - scan.y0) / scan.dy));
      if (i >= 0 && j >= 0 && i < scan.nx && j < scan.ny &&
          scan.label(i, j) == CellLabel::degenerate)
        ++violations;
    }

    const bool ok = ind1 < 1e-9 && ind2 < 1e-9 && tr1 < 1e-9 && tr2 < 1e-9 &&
                    hom_worst < 1e-10 && slack >= -1e-9 && violations == 0;
    h.report(10, ok,
             fmt("properties: indicatrix %.1e/%.1e, translation %.1e/%.1e (1e-9), "
                 "homogeneity %.1e (1e-10), duality slack %.1e (>=-1e-9), midpoint "
                 "violations %d",
                 ind1, ind2, tr1, tr2, hom_worst, slack, violations));
  }

  std::printf("%d of 10 criteria passed\n", 10 - h.failures);
  return h.failures == 0 ? 0 : 1;
}
