// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "finsler/types.hpp"

namespace finsler {

enum class NormKind { euclidean, randers, scaled, sum, difference, linear, zero, custom };

// pseudo: positive and 1-homogeneous only; weak: smooth away from 0 with strictly
// convex indicatrix; strong: positive definite Hessian of the square.
enum class NormStrength { pseudo, weak, strong };

/// Positively 1-homogeneous function on R^n with derivative access.
/// Built-in kinds carry closed-form gradients; custom callables fall back to
/// central differences (relative step 1e-5, one Richardson pass).
class HomogeneousFn {
 public:
  static HomogeneousFn euclidean(int dim);
  static HomogeneousFn randers(const Vec& a);  // |y| + <a,y>, requires |a| < 1
  static HomogeneousFn linear(const Vec& a);   // <a,y>
  static HomogeneousFn zero(int dim);
  static HomogeneousFn scaled(const HomogeneousFn& base, double c);
  static HomogeneousFn sum(const HomogeneousFn& lhs, const HomogeneousFn& rhs);
  static HomogeneousFn difference(const HomogeneousFn& lhs, const HomogeneousFn& rhs);
  static HomogeneousFn custom(int dim, std::function<double(const Vec&)> eval);

  int dim() const { return dim_; }
  NormKind kind() const { return kind_; }

  double operator()(const Vec& y) const { return eval_(y); }

  bool has_closed_grad() const { return static_cast<bool>(grad_); }
  /// Gradient at y != 0 (closed form when available, FD otherwise).
  Vec grad(const Vec& y) const;
  /// Directional derivative d/ds f(y + s v) at s=0.
  double directional(const Vec& y, const Vec& v) const;

  // Structured parameters (valid for the matching kind only).
  const Vec& param_a() const { return a_; }
  double param_c() const { return c_; }
  const HomogeneousFn& base() const { return *base_; }
  const HomogeneousFn& rhs() const { return *rhs_; }

 private:
  HomogeneousFn() = default;

  int dim_ = 0;
  NormKind kind_ = NormKind::custom;
  std::function<double(const Vec&)> eval_;
  std::function<Vec(const Vec&)> grad_;
  Vec a_;
  double c_ = 0.0;
  std::shared_ptr<const HomogeneousFn> base_, rhs_;
};

/// Evaluate f and its gradient. Throws ZeroVector at y=0 and NonFinite when the
/// value overflows.
std::pair<double, Vec> eval_and_grad(const HomogeneousFn& f, const Vec& y);

struct RegularityReport {
  bool quasi_regular = false;    // sampled triangle inequality
  bool strictly_convex = false;  // no three collinear sampled indicatrix points (2D)
  double hessian_pd_rate = 0.0;  // fraction of sampled directions with PD Hessian of f^2
  double min_rel_eig = 0.0;      // refined minimum eigenvalue of 1/2 [f^2]_yy / (tr/n)
  NormStrength strength = NormStrength::pseudo;
};

/// Sample-based regularity diagnostics. Throws NotPositive when some sampled
/// f(y) <= 0 for y != 0.
RegularityReport regularity_check(const HomogeneousFn& f, int samples = 256);

struct MinkowskiNorm {
  HomogeneousFn fn;
  NormStrength strength = NormStrength::pseudo;

  double operator()(const Vec& y) const { return fn(y); }
};

/// Runs regularity_check and tags the result.
MinkowskiNorm make_minkowski(const HomogeneousFn& f, int samples = 256);

namespace detail {
/// Unit direction samples: golden-angle in 2D, seeded uniform otherwise.
std::vector<Vec> direction_samples(int dim, int count);
/// 2D unit vector at angle theta.
Vec unit2(double theta);
}  // namespace detail

}  // namespace finsler
