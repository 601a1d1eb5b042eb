// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: evaluate metrics, run scans, curvature and distance
// checks, and emit JSON/CSV artifacts.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "finsler/analysis.hpp"
#include "finsler/descriptor.hpp"
#include "finsler/geometry.hpp"
#include "finsler/metrics.hpp"
#include "finsler/sphere.hpp"
#include "finsler/tensor.hpp"

namespace {

using namespace finsler;

Vec parse_csv_vec(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      vals.push_back(std::stod(tok));
    } catch (...) {
      fail(Err::ParseError, "bad vector literal '" + s + "'");
    }
  }
  if (vals.empty()) fail(Err::ParseError, "empty vector literal");
  Vec v(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
  return v;
}

struct MetricFlags {
  std::string name;
  std::string config_path;
  double a1 = 0.0, a2 = 0.0;
  double c = 2.0;
  double lambda = 1.0;
  double alpha = 0.3;
  int dim = 2;
};

void add_metric_flags(CLI::App* cmd, MetricFlags& mf) {
  cmd->add_option("--metric", mf.name,
                  "named metric: berwald, euclid_funk, hilbert_ball, riemann, bryant, "
                  "randers_k0, randers_km1, minkowski_euclid");
  cmd->add_option("--config", mf.config_path, "path to a JSON metric descriptor");
  cmd->add_option("--a1", mf.a1, "Randers a_1");
  cmd->add_option("--a2", mf.a2, "Randers a_2");
  cmd->add_option("--c", mf.c, "K=-1 Randers scale c > 1");
  cmd->add_option("--lambda", mf.lambda, "Riemann curvature parameter");
  cmd->add_option("--alpha", mf.alpha, "Bryant parameter in (0, pi/4]");
  cmd->add_option("--dim", mf.dim, "dimension (default 2)");
}

Json descriptor_from_flags(const MetricFlags& mf) {
  if (!mf.config_path.empty()) {
    std::ifstream in(mf.config_path);
    if (!in) fail(Err::ParseError, "cannot open config '" + mf.config_path + "'");
    Json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      fail(Err::ParseError, std::string("config JSON: ") + e.what());
    }
    return j;
  }
  Json j;
  if (mf.name == "berwald" || mf.name == "euclid_funk") {
    j = {{"family", "closed"}, {"kind", mf.name}, {"dim", mf.dim}};
  } else if (mf.name == "hilbert_ball") {
    j = {{"family", "hilbert_of"},
         {"base", {{"family", "closed"}, {"kind", "euclid_funk"}, {"dim", mf.dim}}}};
  } else if (mf.name == "riemann") {
    j = {{"family", "closed"}, {"kind", "riemann"}, {"lambda", mf.lambda}, {"dim", mf.dim}};
  } else if (mf.name == "bryant") {
    j = {{"family", "closed"}, {"kind", "bryant"}, {"alpha", mf.alpha}, {"n", mf.dim}};
  } else if (mf.name == "randers_k0") {
    j = {{"family", "closed"}, {"kind", "randers_k0"}, {"a", {mf.a1, mf.a2}}};
  } else if (mf.name == "randers_km1") {
    j = {{"family", "closed"}, {"kind", "randers_km1"}, {"a", {mf.a1, mf.a2}}, {"c", mf.c}};
  } else if (mf.name == "minkowski_euclid") {
    j = {{"family", "minkowski"}, {"psi", {{"kind", "euclidean"}, {"dim", mf.dim}}}};
  } else {
    fail(Err::ParseError, "unknown metric '" + mf.name + "' (and no --config given)");
  }
  return j;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path);
  if (!os) fail(Err::ParseError, "cannot open output '" + out_path + "'");
  os << text;
}

Vec random_interior_point(const FinslerMetric& F, std::mt19937_64& rng, double max_fraction) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.05, max_fraction);
  Vec u(F.dim());
  for (int i = 0; i < F.dim(); ++i) u[i] = gauss(rng);
  u.normalize();
  const double r = F.domain().boundary_radius(u);
  return std::isfinite(r) ? Vec(unif(rng) * r * u) : Vec(2.0 * unif(rng) * u);
}

int run(int argc, char** argv) {
  CLI::App app{"Projectively flat constant-curvature Finsler metrics toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags like --seed after the subcommand

  std::uint64_t seed = 42;
  app.add_option("--seed", seed, "RNG seed (default 42)");

  MetricFlags mf;
  std::string out_path, format = "json";
  std::string x_str = "0.3,0", y_str = "1,0", from_str = "0,0", to_str = "0.5,0";
  std::string ray_str = "1,0", fractions_str = "0.9,0.99,0.999";
  std::string psi_str, phi_str;
  int samples = 100, res = 400, dirs = 64, threads = 0, steps = 1000, curvature = 2;
  double tmax = 1.0;
  std::optional<double> expect_k;

  auto* eval = app.add_subcommand("eval", "evaluate F (and P) at a point");
  add_metric_flags(eval, mf);
  eval->add_option("--x", x_str, "base point, comma-separated");
  eval->add_option("--y", y_str, "direction, comma-separated");
  eval->add_option("--out", out_path);

  auto* dist = app.add_subcommand("distance", "formula-vs-integral distance");
  add_metric_flags(dist, mf);
  dist->add_option("--from", from_str);
  dist->add_option("--to", to_str);
  dist->add_option("--curvature", curvature, "0, -1 or 1 (default: inferred)");
  dist->add_option("--out", out_path);

  auto* curv = app.add_subcommand("curvature", "sampled flag curvature and residuals");
  add_metric_flags(curv, mf);
  curv->add_option("--samples", samples);
  curv->add_option("--expect", expect_k, "expected constant curvature");
  curv->add_option("--out", out_path);

  auto* scan = app.add_subcommand("scan", "2D strong-convexity domain scan");
  add_metric_flags(scan, mf);
  scan->add_option("--res", res);
  scan->add_option("--dirs", dirs);
  scan->add_option("--threads", threads);
  scan->add_option("--format", format, "json or csv");
  scan->add_option("--out", out_path);

  auto* clas = app.add_subcommand("classify", "global classification from initial data");
  clas->add_option("--psi", psi_str, "norm descriptor JSON")->required();
  clas->add_option("--phi", phi_str, "norm descriptor JSON")->required();
  clas->add_option("--curvature", curvature, "0 or -1")->required();
  clas->add_option("--out", out_path);

  auto* sph = app.add_subcommand("sphere-check", "K=1 sphere diagnostics for Bryant metrics");
  sph->add_option("--alpha", mf.alpha);
  sph->add_option("--format", format, "json summary or csv great-circle samples");
  sph->add_option("--samples", samples, "great-circle sample count for csv output");
  sph->add_option("--out", out_path);

  auto* grow = app.add_subcommand("growth", "co-metric growth along a boundary ray");
  grow->add_option("--psi", psi_str, "norm descriptor JSON")->required();
  grow->add_option("--phi", phi_str, "norm descriptor JSON")->required();
  grow->add_option("--curvature", curvature, "0 or -1")->required();
  grow->add_option("--ray", ray_str);
  grow->add_option("--fractions", fractions_str);
  grow->add_option("--format", format, "json or csv");
  grow->add_option("--out", out_path);

  auto* geo = app.add_subcommand("geodesic", "integrate and fit the geodesic profile");
  add_metric_flags(geo, mf);
  geo->add_option("--x", x_str);
  geo->add_option("--y", y_str);
  geo->add_option("--tmax", tmax);
  geo->add_option("--steps", steps);
  geo->add_option("--curvature", curvature, "0, -1 or 1 (default: inferred)");
  geo->add_option("--format", format, "json or csv");
  geo->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);
  std::mt19937_64 rng(seed);

  if (eval->parsed()) {
    const Json desc = descriptor_from_flags(mf);
    const FinslerMetric F = parse_metric(desc);
    const Vec x = parse_csv_vec(x_str), y = parse_csv_vec(y_str);
    Json outj;
    outj["descriptor"] = normalize_metric_descriptor(desc);
    outj["F"] = F(x, y);
    outj["P"] = projective_value(F, x, y);
    emit(out_path, outj.dump(2) + "\n");
    return 0;
  }

  if (dist->parsed()) {
    const Json desc = descriptor_from_flags(mf);
    const FinslerMetric F = parse_metric(desc);
    const int k = (curvature == 2) ? descriptor_curvature(desc) : curvature;
    const DistanceResult r = distance(F, k, parse_csv_vec(from_str), parse_csv_vec(to_str));
    Json outj{{"curvature", k},
              {"formula", r.formula},
              {"integral", r.integral},
              {"rel_err", r.rel_err}};
    emit(out_path, outj.dump(2) + "\n");
    return 0;
  }

  if (curv->parsed()) {
    const Json desc = descriptor_from_flags(mf);
    const FinslerMetric F = parse_metric(desc);
    double max_dev = 0.0, max_r1 = 0.0, max_r2 = 0.0, max_cross = 0.0;
    double expect = expect_k ? *expect_k : static_cast<double>(descriptor_curvature(desc));
    std::normal_distribution<double> gauss;
    for (int s = 0; s < samples; ++s) {
      const Vec x = random_interior_point(F, rng, 0.7);
      Vec y(F.dim());
      for (int i = 0; i < F.dim(); ++i) y[i] = gauss(rng);
      if (y.norm() < 1e-8) continue;
      const CurvatureReport rep = flag_curvature(F, x, y);
      max_dev = std::max(max_dev, std::abs(rep.K_formula - expect));
      max_cross = std::max(max_cross, std::abs(rep.K_formula - rep.K_profile));
      max_r1 = std::max(max_r1, rep.residuals.r1.norm());
      max_r2 = std::max(max_r2, rep.residuals.r2.norm());
    }
    Json outj{{"samples", samples},          {"expected_K", expect},
              {"max_K_deviation", max_dev},  {"max_profile_cross_dev", max_cross},
              {"max_berwald_r1", max_r1},    {"max_berwald_r2", max_r2}};
    emit(out_path, outj.dump(2) + "\n");
    return 0;
  }

  if (scan->parsed()) {
    const Json desc = descriptor_from_flags(mf);
    const FinslerMetric F = parse_metric(desc);
    ScanOptions opts;
    opts.resolution = res;
    opts.directions = dirs;
    opts.threads = threads;
    const DomainScan sc = scan_domain_2d(F, opts);
    std::ostringstream os;
    if (format == "csv")
      write_scan_csv(sc, os);
    else
      write_scan_json(sc, os);
    emit(out_path, os.str());
    return 0;
  }

  if (clas->parsed()) {
    const HomogeneousFn psi = parse_norm(Json::parse(psi_str, nullptr, false));
    const HomogeneousFn phi = parse_norm(Json::parse(phi_str, nullptr, false), psi.dim());
    const Classification c = classify(psi, phi, curvature);
    Json outj{{"curvature", c.curvature},
              {"case", classification_name(c.label)},
              {"backward_complete", c.backward_complete},
              {"reversibility_finite", c.reversibility_finite}};
    emit(out_path, outj.dump(2) + "\n");
    return 0;
  }

  if (sph->parsed()) {
    const FinslerMetric bry = bryant_metric(mf.alpha, 2);
    Vec A(3), B(3);
    A << 1, 0, 0;
    B << 0, std::sqrt(0.5), std::sqrt(0.5);
    if (format == "csv") {
      std::ostringstream os;
      write_great_circle_csv(bry, A, B, std::max(samples, 16), os);
      emit(out_path, os.str());
      return 0;
    }
    Vec x0 = Vec::Zero(2), e1 = Vec::Unit(2, 0);
    const double line = line_length(bry, x0, e1, 1e6);
    const double circle = great_circle_length(bry, A, B);
    const EquatorReport eq = equator_extension_check(mf.alpha);
    Json outj{{"alpha", mf.alpha},
              {"line_length", line},
              {"great_circle_length", circle},
              {"equator_min_eig", eq.min_eig},
              {"equator_extrapolation_dev", eq.max_extrapolation_dev}};
    emit(out_path, outj.dump(2) + "\n");
    return 0;
  }

  if (grow->parsed()) {
    const HomogeneousFn psi = parse_norm(Json::parse(psi_str, nullptr, false));
    const HomogeneousFn phi = parse_norm(Json::parse(phi_str, nullptr, false), psi.dim());
    std::vector<double> fr;
    for (const std::string& tok : {fractions_str}) {
      std::stringstream ss(tok);
      std::string f;
      while (std::getline(ss, f, ',')) fr.push_back(std::stod(f));
    }
    const auto rows = growth_check(curvature, psi, phi, parse_csv_vec(ray_str), fr);
    if (format == "csv") {
      std::ostringstream os;
      os << "fraction,r,Fstar,ratio\n";
      for (const auto& r : rows)
        os << r.fraction << ',' << r.r << ',' << r.fstar << ',' << r.ratio << '\n';
      emit(out_path, os.str());
    } else {
      Json arr = Json::array();
      for (const auto& r : rows)
        arr.push_back({{"fraction", r.fraction}, {"r", r.r}, {"Fstar", r.fstar},
                       {"ratio", r.ratio}});
      emit(out_path, arr.dump(2) + "\n");
    }
    return 0;
  }

  if (geo->parsed()) {
    const Json desc = descriptor_from_flags(mf);
    const FinslerMetric F = parse_metric(desc);
    const int k = (curvature == 2) ? descriptor_curvature(desc) : curvature;
    const GeodesicResult g =
        geodesic(F, parse_csv_vec(x_str), parse_csv_vec(y_str), tmax, k, steps);
    if (format == "csv") {
      std::ostringstream os;
      os << "t,f,fprime\n";
      for (size_t i = 0; i < g.ts.size(); ++i)
        os << g.ts[i] << ',' << g.fs[i] << ',' << g.fps[i] << '\n';
      emit(out_path, os.str());
    } else {
      Json outj{{"fit_residual", g.fit_residual},
                {"c", g.c},
                {"escape_time", std::isfinite(g.escape_time) ? Json(g.escape_time) : Json()},
                {"points", g.ts.size()}};
      emit(out_path, outj.dump(2) + "\n");
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const finsler::Error& e) {
    std::cerr << "error [" << finsler::err_name(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case finsler::Err::ParseError:
        return 1;
      case finsler::Err::NoConvergence:
      case finsler::Err::NonFinite:
      case finsler::Err::IntegrationFailure:
        return 3;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
