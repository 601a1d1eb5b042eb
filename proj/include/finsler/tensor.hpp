// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <vector>

#include "finsler/metrics.hpp"
#include "finsler/types.hpp"

namespace finsler {

struct FundamentalTensor {
  Mat g;             // symmetric n x n at (x, y)
  double min_eig = 0.0;
  Vec y_direction;   // unit y
};

/// g_ij = 1/2 [F^2]_{y^i y^j} by second central differences
/// (step 3e-4 max(1,|y|), one Richardson pass), symmetrized.
FundamentalTensor fundamental_tensor(const FinslerMetric& F, const Vec& x, const Vec& y);

struct ConvexityVerdict {
  bool strong = false;
  double min_eig = 0.0;        // absolute, over sampled directions
  double min_rel_eig = 0.0;    // min_eig relative to tr(g)/n at the minimizer
  Vec worst_direction;
};

/// Minimum eigenvalue of g(x, .) over sampled unit directions (golden-angle),
/// with golden-section refinement of the worst angle in 2D. Strong iff the
/// minimum clears the scale-aware threshold 1e-9 tr(g)/n.
ConvexityVerdict is_strongly_convex(const FinslerMetric& F, const Vec& x, int directions = 512);

enum class CellLabel : unsigned char { outside = 0, strong = 1, degenerate = 2 };

enum class ScanConfiguration { connected, line_split, disconnected };

struct FrontierPoint {
  Vec x;
  bool converged = true;
};

struct DomainScan {
  int nx = 0, ny = 0;
  double x0 = 0, y0 = 0, dx = 0, dy = 0;  // cell centers at (x0 + i dx, y0 + j dy)
  std::vector<CellLabel> labels;          // row-major, j * nx + i
  std::vector<double> min_eigs;           // relative min eigenvalue per inside cell
  std::vector<int> component_of;          // -1 outside/degenerate
  int components = 0;
  double degenerate_fraction = 0.0;       // of inside cells
  std::vector<FrontierPoint> frontier;
  std::vector<std::vector<Vec>> polylines;
  ScanConfiguration configuration = ScanConfiguration::connected;
  double refined_min_rel_eig = 0.0;       // global refined minimum of the field

  CellLabel label(int i, int j) const { return labels[static_cast<size_t>(j) * nx + i]; }
  Vec cell_center(int i, int j) const;
};

struct ScanOptions {
  int resolution = 400;    // cells along the longer bounding-box edge
  int directions = 64;
  int verdict_directions = 512;  // near verdict flips and for refinement
  int threads = 0;               // 0 = hardware
  double frontier_tol = 1e-6;    // spatial bisection tolerance
};

/// Classify a 2D grid over the metric's (bounded) domain by strong convexity,
/// flood-fill connected components, and trace the degeneracy frontier by
/// bisection between flipped neighbours.
DomainScan scan_domain_2d(const FinslerMetric& F, const ScanOptions& opts = {});

/// 8(1-a1^2)(x1 + a1/(4(1-a1^2)))^2 - (9a1^2-8) x2^2 - (9a1^2-8)/(2(1-a1^2));
/// zero on the degeneracy frontier of the K=0 Randers family, positive inside
/// the strongly convex region. Requires a1 in (2 sqrt2 / 3, 1).
double hyperbola_residual(double a1, const Vec& x);

void write_scan_csv(const DomainScan& scan, std::ostream& os);
void write_scan_json(const DomainScan& scan, std::ostream& os);

const char* configuration_name(ScanConfiguration c);

}  // namespace finsler
