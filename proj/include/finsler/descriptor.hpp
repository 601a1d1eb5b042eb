// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <json.hpp>

#include "finsler/metrics.hpp"

namespace finsler {

using Json = nlohmann::json;

/// Parse a norm descriptor, e.g. {"kind":"randers","a":[0.5,0]},
/// {"kind":"euclidean","dim":2}, {"kind":"scaled","c":2.0,"base":{...}},
/// {"kind":"sum"/"difference","lhs":{...},"rhs":{...}}, {"kind":"linear",...},
/// {"kind":"zero","dim":2}. Throws ParseError on malformed input.
HomogeneousFn parse_norm(const Json& j, int default_dim = 2);

/// Serialize a built-in norm back to its canonical descriptor (custom
/// callables are not serializable).
Json norm_json(const HomogeneousFn& f);

/// Parse a metric descriptor, e.g. {"family":"k0","psi":{...},"phi":{...}} or
/// {"family":"closed","kind":"bryant","alpha":0.3,"n":2}.
FinslerMetric parse_metric(const Json& j);

/// Canonical form of a metric descriptor: parse-validate and re-emit. Round
/// trips are idempotent.
Json normalize_metric_descriptor(const Json& j);

/// Constant flag curvature of the described family, when it is one of
/// {0, -1, 1}; throws BadParameter otherwise (e.g. the Funk metric's -1/4).
int descriptor_curvature(const Json& j);

}  // namespace finsler
