#pragma once

#include <stdexcept>
#include <string>

namespace circumfeas {

// Every failure the library can signal, as a closed set so callers can switch
// on the kind instead of parsing messages.
enum class ErrKind {
  DegenerateConfiguration,  // distinct but affinely dependent points
  RankDeficient,            // Gram system below rank tolerance
  InfeasibleSet,            // polyhedron has no feasible point
  NumericalFailure,         // no candidate survived certification
  PointNotInSet,            // operation requires a member point
  OperatorUndefined,        // iteration operator has no value at this input
  InPolarCone,              // projection collapses to the apex
  CommonGreatCircle,        // three distinct sphere points are coplanar with 0
  AntipodalPair,            // midpoint of antipodal sphere points undefined
  NotProper,                // cone fails pointedness or full dimension
  EmptyIntersection,        // spherical polytopes do not meet
  DimensionMismatch,        // operand dimensions disagree
  CertificationFailed,      // oracle could not certify its own result
};

inline const char* err_name(ErrKind k) {
  switch (k) {
    case ErrKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrKind::RankDeficient:           return "RankDeficient";
    case ErrKind::InfeasibleSet:           return "InfeasibleSet";
    case ErrKind::NumericalFailure:        return "NumericalFailure";
    case ErrKind::PointNotInSet:           return "PointNotInSet";
    case ErrKind::OperatorUndefined:       return "OperatorUndefined";
    case ErrKind::InPolarCone:             return "InPolarCone";
    case ErrKind::CommonGreatCircle:       return "CommonGreatCircle";
    case ErrKind::AntipodalPair:           return "AntipodalPair";
    case ErrKind::NotProper:               return "NotProper";
    case ErrKind::EmptyIntersection:       return "EmptyIntersection";
    case ErrKind::DimensionMismatch:       return "DimensionMismatch";
    case ErrKind::CertificationFailed:     return "CertificationFailed";
  }
  return "Unknown";
}

struct Error : std::runtime_error {
  ErrKind kind;
  Error(ErrKind k, const std::string& msg)
      : std::runtime_error(std::string(err_name(k)) + ": " + msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace circumfeas
