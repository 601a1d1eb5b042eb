// SPDX-License-Identifier: Apache-2.0
#include "finsler/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <ostream>

#include "finsler/detail/derivatives.hpp"
#include "finsler/detail/optimize.hpp"
#include "finsler/detail/parallel.hpp"

namespace finsler {

namespace {

constexpr double kGoldenAngle = 2.399963229728653;
constexpr double kPdRel = 1e-9;       // relative positive-definiteness threshold
constexpr double kHessStep = 3e-4;    // base second-difference step for F^2
constexpr double kRefineBand = 3e-2;  // coarse verdicts below this get refined

struct Eig2 {
  double g11, g12, g22;
  double min_eig() const {
    const double m = 0.5 * (g11 + g22);
    const double d = std::hypot(0.5 * (g11 - g22), g12);
    return m - d;
  }
  double rel_min_eig() const {
    const double tr = 0.5 * (g11 + g22);
    return min_eig() / std::max(tr, 1e-300);
  }
};

// 2x2 Hessian of (y1,y2) -> F(x,y)^2 at a unit direction, one Richardson pass.
Eig2 hess2_fd(const FinslerMetric::Eval& F, const Vec& x, double u1, double u2) {
  Vec y(2);
  auto f2 = [&](double a, double b) {
    y[0] = a;
    y[1] = b;
    const double v = F(x, y);
    return v * v;
  };
  const double f0 = f2(u1, u2);
  const double h = kHessStep;

  auto d11 = [&](double s) { return (f2(u1 + s, u2) - 2.0 * f0 + f2(u1 - s, u2)) / (s * s); };
  auto d22 = [&](double s) { return (f2(u1, u2 + s) - 2.0 * f0 + f2(u1, u2 - s)) / (s * s); };
  auto d12 = [&](double s) {
    return (f2(u1 + s, u2 + s) - f2(u1 + s, u2 - s) - f2(u1 - s, u2 + s) + f2(u1 - s, u2 - s)) /
           (4.0 * s * s);
  };
  Eig2 g;
  g.g11 = 0.5 * (4.0 * d11(0.5 * h) - d11(h)) / 3.0;
  g.g22 = 0.5 * (4.0 * d22(0.5 * h) - d22(h)) / 3.0;
  g.g12 = 0.5 * (4.0 * d12(0.5 * h) - d12(h)) / 3.0;
  return g;
}

// Point evaluator for g(x, u(theta)): exact dual-number Hessian when the
// metric carries one, Richardson finite differences otherwise.
struct Gauge2 {
  const FinslerMetric* F;

  Eig2 at(const Vec& x, double u1, double u2) const {
    if (F->has_exact_hessian()) {
      Vec y(2);
      y << u1, u2;
      const Mat g = F->exact_hessian(x, y);
      return Eig2{g(0, 0), g(0, 1), g(1, 1)};
    }
    return hess2_fd(F->evaluator(), x, u1, u2);
  }
};

struct DirScan {
  double rel = 0.0;
  double theta = 0.0;
};

// Minimum over directions of the relative min eigenvalue of g(x, .) in 2D,
// with golden-section refinement of the lowest sampled angles.
DirScan dir_min_rel_2d(const Gauge2& G, const Vec& x, int ndirs, bool refine) {
  auto at = [&](double th) { return G.at(x, std::cos(th), std::sin(th)).rel_min_eig(); };

  DirScan best;
  best.rel = std::numeric_limits<double>::infinity();
  double second = best.rel, second_theta = 0.0;
  for (int k = 0; k < ndirs; ++k) {
    const double th = k * kGoldenAngle;
    const double r = at(th);
    if (r < best.rel) {
      second = best.rel;
      second_theta = best.theta;
      best.rel = r;
      best.theta = th;
    } else if (r < second) {
      second = r;
      second_theta = th;
    }
  }
  if (refine) {
    const double w = 3.0 * 2.0 * M_PI / ndirs;
    double arg = best.theta;
    double r = detail::golden_min(at, best.theta - w, best.theta + w, 1e-7, &arg);
    if (r < best.rel) best = {r, arg};
    if (std::isfinite(second)) {
      r = detail::golden_min(at, second_theta - w, second_theta + w, 1e-7, &arg);
      if (r < best.rel) best = {r, arg};
    }
  }
  return best;
}

}  // namespace

Vec DomainScan::cell_center(int i, int j) const {
  Vec c(2);
  c << x0 + i * dx, y0 + j * dy;
  return c;
}

FundamentalTensor fundamental_tensor(const FinslerMetric& F, const Vec& x, const Vec& y) {
  if (y.norm() == 0.0) fail(Err::ZeroVector, "fundamental_tensor: y = 0");
  if (!F.domain().contains(x)) fail(Err::OutsideDomain, "fundamental_tensor");

  FundamentalTensor t;
  t.y_direction = y.normalized();
  const double step = kHessStep * std::max(1.0, y.norm());
  const auto& eval = F.evaluator();
  Mat h = detail::fd_hessian(
      [&](const Vec& yy) {
        const double v = eval(x, yy);
        return v * v;
      },
      y, step);
  t.g = 0.25 * (h + h.transpose());  // 1/2 Hessian, symmetrized
  Eigen::SelfAdjointEigenSolver<Mat> es(t.g);
  t.min_eig = es.eigenvalues().minCoeff();
  return t;
}

ConvexityVerdict is_strongly_convex(const FinslerMetric& F, const Vec& x, int directions) {
  if (!F.domain().contains(x)) fail(Err::OutsideDomain, "is_strongly_convex");
  ConvexityVerdict v;
  if (F.dim() == 2) {
    const Gauge2 G{&F};
    const DirScan s = dir_min_rel_2d(G, x, directions, true);
    v.min_rel_eig = s.rel;
    v.worst_direction = detail::unit2(s.theta);
    const Eig2 g = G.at(x, v.worst_direction[0], v.worst_direction[1]);
    v.min_eig = g.min_eig();
    v.strong = s.rel > kPdRel;
    return v;
  }
  double worst = std::numeric_limits<double>::infinity();
  for (const Vec& u : detail::direction_samples(F.dim(), directions)) {
    const FundamentalTensor t = fundamental_tensor(F, x, u);
    const double rel = t.min_eig / std::max(t.g.trace() / F.dim(), 1e-300);
    if (rel < worst) {
      worst = rel;
      v.min_eig = t.min_eig;
      v.worst_direction = u;
    }
  }
  v.min_rel_eig = worst;
  v.strong = worst > kPdRel;
  return v;
}

DomainScan scan_domain_2d(const FinslerMetric& F, const ScanOptions& opts) {
  if (F.dim() != 2) fail(Err::BadParameter, "scan_domain_2d: dim must be 2");
  if (F.domain().is_all_space())
    fail(Err::BadParameter, "scan_domain_2d: domain must be a bounded sublevel set");

  // Bounding box from boundary radii.
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (int k = 0; k < 720; ++k) {
    const Vec u = detail::unit2(2.0 * M_PI * k / 720);
    const double r = F.domain().boundary_radius(u);
    if (!std::isfinite(r)) fail(Err::BadParameter, "scan_domain_2d: unbounded domain");
    xmin = std::min(xmin, r * u[0]);
    xmax = std::max(xmax, r * u[0]);
    ymin = std::min(ymin, r * u[1]);
    ymax = std::max(ymax, r * u[1]);
  }

  DomainScan scan;
  scan.nx = opts.resolution;
  scan.ny = opts.resolution;
  scan.dx = (xmax - xmin) / scan.nx;
  scan.dy = (ymax - ymin) / scan.ny;
  scan.x0 = xmin + 0.5 * scan.dx;
  scan.y0 = ymin + 0.5 * scan.dy;
  const size_t ncells = static_cast<size_t>(scan.nx) * scan.ny;
  scan.labels.assign(ncells, CellLabel::outside);
  scan.min_eigs.assign(ncells, std::numeric_limits<double>::quiet_NaN());
  scan.component_of.assign(ncells, -1);

  const Gauge2 gauge{&F};
  const auto& dom = F.domain();

  // Cells whose square straddles the rim are not reliable samples of the open
  // domain; keep a one-cell-diagonal margin.
  const double celldiag = std::hypot(scan.dx, scan.dy);
  auto well_inside = [&](const Vec& x) {
    if (!dom.contains(x)) return false;
    const double r = x.norm();
    if (r == 0.0) return true;
    return r <= dom.boundary_radius(Vec(x / r)) - celldiag;
  };

  detail::parallel_for(ncells, opts.threads, [&](size_t idx) {
    const int i = static_cast<int>(idx) % scan.nx;
    const int j = static_cast<int>(idx) / scan.nx;
    const Vec x = scan.cell_center(i, j);
    if (!well_inside(x)) return;
    DirScan s = dir_min_rel_2d(gauge, x, opts.directions, false);
    if (s.rel < kRefineBand) s = dir_min_rel_2d(gauge, x, opts.verdict_directions, true);
    scan.min_eigs[idx] = s.rel;
    scan.labels[idx] = (s.rel > kPdRel) ? CellLabel::strong : CellLabel::degenerate;
  });

  // Flood fill strong cells, 4-connectivity.
  int inside = 0, degenerate = 0;
  for (size_t idx = 0; idx < ncells; ++idx) {
    if (scan.labels[idx] != CellLabel::outside) ++inside;
    if (scan.labels[idx] == CellLabel::degenerate) ++degenerate;
  }
  scan.degenerate_fraction = inside ? static_cast<double>(degenerate) / inside : 0.0;

  std::vector<size_t> stack;
  for (size_t seed = 0; seed < ncells; ++seed) {
    if (scan.labels[seed] != CellLabel::strong || scan.component_of[seed] >= 0) continue;
    const int comp = scan.components++;
    stack.push_back(seed);
    scan.component_of[seed] = comp;
    while (!stack.empty()) {
      const size_t cur = stack.back();
      stack.pop_back();
      const int ci = static_cast<int>(cur) % scan.nx;
      const int cj = static_cast<int>(cur) / scan.nx;
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int ni = ci + di[k], nj = cj + dj[k];
        if (ni < 0 || nj < 0 || ni >= scan.nx || nj >= scan.ny) continue;
        const size_t nidx = static_cast<size_t>(nj) * scan.nx + ni;
        if (scan.labels[nidx] == CellLabel::strong && scan.component_of[nidx] < 0) {
          scan.component_of[nidx] = comp;
          stack.push_back(nidx);
        }
      }
    }
  }

  // Trace the frontier by bisection between flipped neighbours, on the sign
  // of the refined minimum itself: the classification threshold would bias
  // the traced points off the degeneracy locus where the eigenvalue slope is
  // shallow.
  auto refined = [&](const Vec& x) {
    return dir_min_rel_2d(gauge, x, opts.verdict_directions, true).rel;
  };
  auto strong_at = [&](const Vec& x) { return refined(x) > 0.0; };

  std::vector<std::pair<size_t, size_t>> flips;
  for (size_t idx = 0; idx < ncells; ++idx) {
    const int i = static_cast<int>(idx) % scan.nx;
    const int j = static_cast<int>(idx) / scan.nx;
    const bool s0 = scan.labels[idx] == CellLabel::strong;
    const bool d0 = scan.labels[idx] == CellLabel::degenerate;
    if (!s0 && !d0) continue;
    if (i + 1 < scan.nx) {
      const size_t r = idx + 1;
      if ((s0 && scan.labels[r] == CellLabel::degenerate) ||
          (d0 && scan.labels[r] == CellLabel::strong))
        flips.emplace_back(idx, r);
    }
    if (j + 1 < scan.ny) {
      const size_t up = idx + scan.nx;
      if ((s0 && scan.labels[up] == CellLabel::degenerate) ||
          (d0 && scan.labels[up] == CellLabel::strong))
        flips.emplace_back(idx, up);
    }
  }

  scan.frontier.resize(flips.size());
  detail::parallel_for(flips.size(), opts.threads, [&](size_t k) {
    const auto [ia, ib] = flips[k];
    Vec a = scan.cell_center(static_cast<int>(ia) % scan.nx, static_cast<int>(ia) / scan.nx);
    Vec b = scan.cell_center(static_cast<int>(ib) % scan.nx, static_cast<int>(ib) / scan.nx);
    bool sa = strong_at(a), sb = strong_at(b);
    FrontierPoint pt;
    if (sa == sb) {
      pt.x = 0.5 * (a + b);
      pt.converged = false;  // sub-cell verdicts disagree with the grid labels
    } else {
      while ((b - a).norm() > opts.frontier_tol) {
        Vec m = 0.5 * (a + b);
        if (strong_at(m) == sa)
          a = m;
        else
          b = m;
      }
      pt.x = 0.5 * (a + b);
    }
    scan.frontier[k] = pt;
  });

  // Chain frontier points into polylines (greedy nearest neighbour).
  const double link = 3.0 * std::max(scan.dx, scan.dy);
  std::vector<bool> used(scan.frontier.size(), false);
  for (size_t s = 0; s < scan.frontier.size(); ++s) {
    if (used[s] || !scan.frontier[s].converged) continue;
    std::vector<Vec> line{scan.frontier[s].x};
    used[s] = true;
    for (bool grew = true; grew;) {
      grew = false;
      double best = link;
      size_t pick = 0;
      for (size_t t = 0; t < scan.frontier.size(); ++t) {
        if (used[t] || !scan.frontier[t].converged) continue;
        const double d = (scan.frontier[t].x - line.back()).norm();
        if (d < best) {
          best = d;
          pick = t;
          grew = true;
        }
      }
      if (grew) {
        used[pick] = true;
        line.push_back(scan.frontier[pick].x);
      }
    }
    scan.polylines.push_back(std::move(line));
  }

  // Configuration: when the grid reads connected, refine the interior minimum
  // of the field; a measure-zero degeneracy line rarely hits cell centers.
  // The minimum decays to zero toward the rim for the whole family, so the
  // valley search stays away from it.
  const double cell = std::max(scan.dx, scan.dy);
  auto interior = [&](const Vec& x) {
    const double r = x.norm();
    if (r == 0.0) return true;
    const double rim = dom.boundary_radius(Vec(x / r));
    return r <= rim - 3.0 * cell;
  };

  if (scan.components >= 2) {
    scan.configuration = ScanConfiguration::disconnected;
    double lowest = std::numeric_limits<double>::infinity();
    for (size_t idx = 0; idx < ncells; ++idx)
      if (scan.labels[idx] != CellLabel::outside)
        lowest = std::min(lowest, scan.min_eigs[idx]);
    scan.refined_min_rel_eig = lowest;
  } else {
    double lowest = std::numeric_limits<double>::infinity();
    size_t at = 0;
    for (size_t idx = 0; idx < ncells; ++idx) {
      if (scan.labels[idx] == CellLabel::outside) continue;
      const Vec c = scan.cell_center(static_cast<int>(idx) % scan.nx,
                                     static_cast<int>(idx) / scan.nx);
      if (!interior(c)) continue;
      if (scan.min_eigs[idx] < lowest) {
        lowest = scan.min_eigs[idx];
        at = idx;
      }
    }
    double refined_min = lowest;
    if (std::isfinite(lowest)) {
      const Vec start = scan.cell_center(static_cast<int>(at) % scan.nx,
                                         static_cast<int>(at) / scan.nx);
      auto guarded = [&](const Vec& x) {
        if (!dom.contains(x) || !interior(x)) return 1e9;
        if ((x - start).cwiseAbs().maxCoeff() > 1.5 * cell) return 1e9;
        return refined(x);
      };
      refined_min = std::min(lowest, detail::nelder_mead_2d(guarded, start, 0.5 * cell));
    }
    scan.refined_min_rel_eig = refined_min;
    scan.configuration = (refined_min < 1e-6) ? ScanConfiguration::line_split
                                              : ScanConfiguration::connected;
  }
  return scan;
}

double hyperbola_residual(double a1, const Vec& x) {
  const double lo = 2.0 * std::sqrt(2.0) / 3.0;
  if (!(a1 > lo) || !(a1 < 1.0))
    fail(Err::BadParameter, "hyperbola_residual: a1 must lie in (2 sqrt2/3, 1)");
  const double one_m = 1.0 - a1 * a1;
  const double nine = 9.0 * a1 * a1 - 8.0;
  const double t = x[0] + a1 / (4.0 * one_m);
  return 8.0 * one_m * t * t - nine * x[1] * x[1] - nine / (2.0 * one_m);
}

void write_scan_csv(const DomainScan& scan, std::ostream& os) {
  os << "x1,x2,label,min_eig\n";
  for (int j = 0; j < scan.ny; ++j) {
    for (int i = 0; i < scan.nx; ++i) {
      const size_t idx = static_cast<size_t>(j) * scan.nx + i;
      const Vec c = scan.cell_center(i, j);
      const char* lbl = scan.labels[idx] == CellLabel::strong      ? "strong"
                        : scan.labels[idx] == CellLabel::degenerate ? "degenerate"
                                                                    : "outside";
      os << c[0] << ',' << c[1] << ',' << lbl << ',';
      if (std::isnan(scan.min_eigs[idx]))
        os << "nan";
      else
        os << scan.min_eigs[idx];
      os << '\n';
    }
  }
}

void write_scan_json(const DomainScan& scan, std::ostream& os) {
  os << "{\n  \"components\": " << scan.components << ",\n  \"configuration\": \""
     << configuration_name(scan.configuration) << "\",\n  \"degenerate_fraction\": "
     << scan.degenerate_fraction << ",\n  \"refined_min_rel_eig\": "
     << scan.refined_min_rel_eig << ",\n  \"boundary_polylines\": [";
  for (size_t p = 0; p < scan.polylines.size(); ++p) {
    os << (p ? ",\n    [" : "\n    [");
    for (size_t k = 0; k < scan.polylines[p].size(); ++k) {
      if (k) os << ", ";
      os << '[' << scan.polylines[p][k][0] << ", " << scan.polylines[p][k][1] << ']';
    }
    os << ']';
  }
  os << "\n  ]\n}\n";
}

const char* configuration_name(ScanConfiguration c) {
  switch (c) {
    case ScanConfiguration::connected: return "connected";
    case ScanConfiguration::line_split: return "line_split";
    case ScanConfiguration::disconnected: return "disconnected";
  }
  return "unknown";
}

}  // namespace finsler
