// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "finsler/funk.hpp"
#include "finsler/homogeneous.hpp"
#include "finsler/types.hpp"

namespace finsler {

/// Base domain: all of R^n or the sublevel set {f < level} of a positively
/// 1-homogeneous function. Membership uses the strict margin level - 1e-12
/// since boundary evaluations diverge.
class DomainSpec {
 public:
  static constexpr double kMargin = 1e-12;

  static DomainSpec all_space(int dim);
  static DomainSpec sublevel(const HomogeneousFn& f, double level = 1.0);

  int dim() const { return dim_; }
  bool is_all_space() const { return !fn_.has_value(); }
  bool contains(const Vec& x) const;
  /// Ray parameter s with f(s u) = level; +inf for all-space domains.
  double boundary_radius(const Vec& u) const;
  const HomogeneousFn& fn() const { return *fn_; }
  double level() const { return level_; }

 private:
  int dim_ = 0;
  std::optional<HomogeneousFn> fn_;
  double level_ = 1.0;
};

/// Immutable metric evaluator F(x,y) on a domain, optionally carrying a
/// closed-form projective factor.
class FinslerMetric {
 public:
  using Eval = std::function<double(const Vec&, const Vec&)>;
  using HessEval = std::function<Mat(const Vec&, const Vec&)>;

  FinslerMetric(std::string source, DomainSpec domain, Eval eval, Eval projective = {})
      : source_(std::move(source)),
        domain_(std::move(domain)),
        eval_(std::move(eval)),
        proj_(std::move(projective)) {}

  int dim() const { return domain_.dim(); }
  const DomainSpec& domain() const { return domain_; }
  const std::string& source() const { return source_; }

  double operator()(const Vec& x, const Vec& y) const {
    if (!domain_.contains(x)) fail(Err::OutsideDomain, "F: x outside domain (" + source_ + ")");
    return eval_(x, y);
  }

  /// Raw evaluator without the domain check, for inner loops that have
  /// validated x themselves.
  const Eval& evaluator() const { return eval_; }

  bool has_projective() const { return static_cast<bool>(proj_); }
  double projective(const Vec& x, const Vec& y) const {
    if (!proj_) fail(Err::BadInput, "metric has no closed-form projective factor");
    if (!domain_.contains(x)) fail(Err::OutsideDomain, "P: x outside domain");
    return proj_(x, y);
  }

  /// Exact fundamental tensor 1/2 [F^2]_{y y} when the metric carries one
  /// (the 2D closed forms, via forward-mode duals); scans and convexity
  /// verdicts prefer it over finite differences.
  bool has_exact_hessian() const { return static_cast<bool>(hess_); }
  Mat exact_hessian(const Vec& x, const Vec& y) const { return hess_(x, y); }
  void set_exact_hessian(HessEval h) { hess_ = std::move(h); }

 private:
  std::string source_;
  DomainSpec domain_;
  Eval eval_;
  Eval proj_;
  HessEval hess_;
};

/// K=0 family: F = psi(y + xP) {1 + x^k P_{y^k}} with P the weak Funk metric of
/// phi on {phi < 1} (P = 0 and F = psi when phi is identically zero).
FinslerMetric build_k0(const HomogeneousFn& psi, const HomogeneousFn& phi);

/// K=-1 family: F = (Phi+ - Phi-)/2, P = (Phi+ + Phi-)/2 on {phi + psi < 1}.
FinslerMetric build_km1(const HomogeneousFn& psi, const HomogeneousFn& phi);

FinslerMetric minkowski_metric(const HomogeneousFn& psi);

// Closed forms.
FinslerMetric euclid_funk_metric(int dim);               // Funk metric of the unit ball
FinslerMetric berwald_metric(int dim);                   // K = 0 on the unit ball
FinslerMetric riemann_metric(double lambda, int dim);    // constant curvature lambda
FinslerMetric bryant_metric(double alpha, int dim);      // K = 1 on R^n, alpha in (0, pi/4]
FinslerMetric randers_k0_metric(const Vec& a);           // psi = phi = |y| + <a,y>
FinslerMetric randers_km1_metric(const Vec& a, double c);  // psi randers, phi = c psi, c > 1

/// H(x,y) = (F(x,y) + F(x,-y))/2 for a Funk metric F.
FinslerMetric hilbert_of(const FinslerMetric& funk);

/// Reverse metric F(x,-y); projective factor maps to -P(x,-y).
FinslerMetric reverse_of(const FinslerMetric& metric);

struct Classification {
  int curvature = 0;  // 0 or -1
  enum class Case {
    minkowski,  // K=0 (1)
    weak_funk,  // K=0 (2)
    hilbert,    // K=-1 (1)
    funk,       // K=-1 (2): psi = phi
    p_ge_f,     // K=-1 (3): psi < phi
    p_le_f,     // K=-1 (4): -psi < phi < psi, not reversible-odd
  } label = Case::minkowski;
  bool backward_complete = false;
  bool reversibility_finite = false;
};

const char* classification_name(Classification::Case c);

/// Sampled classification of initial data: which family case applies, and the
/// backward-completeness / reversibility flags that come with it.
Classification classify(const HomogeneousFn& psi, const HomogeneousFn& phi, int curvature,
                        int samples = 256);

/// Critical Randers parameter for the K=-1 family with phi = c psi:
/// ((c+1)^{2/3} - (c-1)^{2/3}) sqrt((c+1)^{2/3} + (c-1)^{2/3}) / 2, c > 1.
double critical_lambda(double c);

}  // namespace finsler
