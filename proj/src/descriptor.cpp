// SPDX-License-Identifier: Apache-2.0
#include "finsler/descriptor.hpp"

#include <cmath>

namespace finsler {

namespace {

Vec vec_field(const Json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array())
    fail(Err::ParseError, "descriptor: missing array field '" + key + "'");
  const auto& arr = j[key];
  Vec v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) fail(Err::ParseError, "descriptor: '" + key + "' must be numeric");
    v[i] = arr[i].get<double>();
  }
  return v;
}

double num_field(const Json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    fail(Err::ParseError, "descriptor: missing numeric field '" + key + "'");
  return j[key].get<double>();
}

int dim_field(const Json& j, int default_dim) {
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer()) fail(Err::ParseError, "descriptor: 'dim' must be integer");
    return j["dim"].get<int>();
  }
  return default_dim;
}

Json vec_json(const Vec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

HomogeneousFn parse_norm(const Json& j, int default_dim) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(Err::ParseError, "norm descriptor: missing 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "euclidean") return HomogeneousFn::euclidean(dim_field(j, default_dim));
  if (kind == "zero") return HomogeneousFn::zero(dim_field(j, default_dim));
  if (kind == "randers") return HomogeneousFn::randers(vec_field(j, "a"));
  if (kind == "linear") return HomogeneousFn::linear(vec_field(j, "a"));
  if (kind == "scaled") {
    if (!j.contains("base")) fail(Err::ParseError, "scaled norm: missing 'base'");
    return HomogeneousFn::scaled(parse_norm(j["base"], default_dim), num_field(j, "c"));
  }
  if (kind == "sum" || kind == "difference") {
    if (!j.contains("lhs") || !j.contains("rhs"))
      fail(Err::ParseError, kind + " norm: missing 'lhs'/'rhs'");
    const HomogeneousFn lhs = parse_norm(j["lhs"], default_dim);
    const HomogeneousFn rhs = parse_norm(j["rhs"], default_dim);
    return kind == "sum" ? HomogeneousFn::sum(lhs, rhs) : HomogeneousFn::difference(lhs, rhs);
  }
  fail(Err::ParseError, "norm descriptor: unknown kind '" + kind + "'");
}

Json norm_json(const HomogeneousFn& f) {
  Json j;
  switch (f.kind()) {
    case NormKind::euclidean:
      j["kind"] = "euclidean";
      j["dim"] = f.dim();
      return j;
    case NormKind::zero:
      j["kind"] = "zero";
      j["dim"] = f.dim();
      return j;
    case NormKind::randers:
      j["kind"] = "randers";
      j["a"] = vec_json(f.param_a());
      return j;
    case NormKind::linear:
      j["kind"] = "linear";
      j["a"] = vec_json(f.param_a());
      return j;
    case NormKind::scaled:
      j["kind"] = "scaled";
      j["c"] = f.param_c();
      j["base"] = norm_json(f.base());
      return j;
    case NormKind::sum:
    case NormKind::difference:
      j["kind"] = f.kind() == NormKind::sum ? "sum" : "difference";
      j["lhs"] = norm_json(f.base());
      j["rhs"] = norm_json(f.rhs());
      return j;
    case NormKind::custom:
      break;
  }
  fail(Err::ParseError, "norm_json: custom norms are not serializable");
}

FinslerMetric parse_metric(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    fail(Err::ParseError, "metric descriptor: missing 'family'");
  const std::string family = j["family"].get<std::string>();

  if (family == "k0" || family == "km1") {
    if (!j.contains("psi") || !j.contains("phi"))
      fail(Err::ParseError, family + ": missing 'psi'/'phi'");
    const HomogeneousFn psi = parse_norm(j["psi"]);
    const HomogeneousFn phi = parse_norm(j["phi"], psi.dim());
    return family == "k0" ? build_k0(psi, phi) : build_km1(psi, phi);
  }
  if (family == "minkowski") {
    if (!j.contains("psi")) fail(Err::ParseError, "minkowski: missing 'psi'");
    return minkowski_metric(parse_norm(j["psi"]));
  }
  if (family == "hilbert_of" || family == "reverse") {
    if (!j.contains("base")) fail(Err::ParseError, family + ": missing 'base'");
    const FinslerMetric base = parse_metric(j["base"]);
    return family == "hilbert_of" ? hilbert_of(base) : reverse_of(base);
  }
  if (family == "closed") {
    if (!j.contains("kind") || !j["kind"].is_string())
      fail(Err::ParseError, "closed metric: missing 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "euclid_funk") return euclid_funk_metric(dim_field(j, 2));
    if (kind == "berwald") return berwald_metric(dim_field(j, 2));
    if (kind == "riemann") return riemann_metric(num_field(j, "lambda"), dim_field(j, 2));
    if (kind == "bryant") {
      const int n = j.contains("n") ? j["n"].get<int>() : dim_field(j, 2);
      return bryant_metric(num_field(j, "alpha"), n);
    }
    if (kind == "randers_k0") return randers_k0_metric(vec_field(j, "a"));
    if (kind == "randers_km1")
      return randers_km1_metric(vec_field(j, "a"), num_field(j, "c"));
    fail(Err::ParseError, "closed metric: unknown kind '" + kind + "'");
  }
  fail(Err::ParseError, "metric descriptor: unknown family '" + family + "'");
}

Json normalize_metric_descriptor(const Json& j) {
  parse_metric(j);  // validate
  Json out;
  const std::string family = j["family"].get<std::string>();
  out["family"] = family;
  if (family == "k0" || family == "km1") {
    const HomogeneousFn psi = parse_norm(j["psi"]);
    out["psi"] = norm_json(psi);
    out["phi"] = norm_json(parse_norm(j["phi"], psi.dim()));
  } else if (family == "minkowski") {
    out["psi"] = norm_json(parse_norm(j["psi"]));
  } else if (family == "hilbert_of" || family == "reverse") {
    out["base"] = normalize_metric_descriptor(j["base"]);
  } else if (family == "closed") {
    const std::string kind = j["kind"].get<std::string>();
    out["kind"] = kind;
    if (kind == "euclid_funk" || kind == "berwald") out["dim"] = dim_field(j, 2);
    if (kind == "riemann") {
      out["lambda"] = num_field(j, "lambda");
      out["dim"] = dim_field(j, 2);
    }
    if (kind == "bryant") {
      out["alpha"] = num_field(j, "alpha");
      out["n"] = j.contains("n") ? j["n"].get<int>() : dim_field(j, 2);
    }
    if (kind == "randers_k0") out["a"] = vec_json(vec_field(j, "a"));
    if (kind == "randers_km1") {
      out["a"] = vec_json(vec_field(j, "a"));
      out["c"] = num_field(j, "c");
    }
  }
  return out;
}

int descriptor_curvature(const Json& j) {
  const std::string family = j.value("family", "");
  if (family == "k0" || family == "minkowski") return 0;
  if (family == "km1") return -1;
  if (family == "hilbert_of") return -1;
  if (family == "closed") {
    const std::string kind = j.value("kind", "");
    if (kind == "berwald" || kind == "randers_k0") return 0;
    if (kind == "randers_km1") return -1;
    if (kind == "bryant") return 1;
    if (kind == "riemann") {
      const double l = j.value("lambda", 0.0);
      if (l == 0.0) return 0;
      if (l == 1.0) return 1;
      if (l == -1.0) return -1;
    }
  }
  fail(Err::BadParameter, "descriptor_curvature: not a constant-curvature 0/-1/1 family");
}

}  // namespace finsler
