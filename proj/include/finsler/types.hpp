// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace finsler {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Err {
  ZeroVector,
  NonFinite,
  OutsideDomain,
  NoConvergence,
  BranchMissing,
  BadParameter,
  NotPositive,
  Inadmissible,
  SegmentExitsDomain,
  DegenerateFormula,
  LeftDomain,
  IntegrationFailure,
  OriginExcluded,
  WrongClass,
  NotUpperHemisphere,
  CoordinateSingularity,
  BadInput,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const noexcept { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline const char* err_name(Err e) {
  switch (e) {
    case Err::ZeroVector: return "ZeroVector";
    case Err::NonFinite: return "NonFinite";
    case Err::OutsideDomain: return "OutsideDomain";
    case Err::NoConvergence: return "NoConvergence";
    case Err::BranchMissing: return "BranchMissing";
    case Err::BadParameter: return "BadParameter";
    case Err::NotPositive: return "NotPositive";
    case Err::Inadmissible: return "Inadmissible";
    case Err::SegmentExitsDomain: return "SegmentExitsDomain";
    case Err::DegenerateFormula: return "DegenerateFormula";
    case Err::LeftDomain: return "LeftDomain";
    case Err::IntegrationFailure: return "IntegrationFailure";
    case Err::OriginExcluded: return "OriginExcluded";
    case Err::WrongClass: return "WrongClass";
    case Err::NotUpperHemisphere: return "NotUpperHemisphere";
    case Err::CoordinateSingularity: return "CoordinateSingularity";
    case Err::BadInput: return "BadInput";
    case Err::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace finsler
