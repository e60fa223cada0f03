#include "reconlab/error.hpp"

namespace reconlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateOrder: return "DegenerateOrder";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::SearchTooLarge: return "SearchTooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::BadPosition: return "BadPosition";
    case ErrorKind::NonSimplicialCone: return "NonSimplicialCone";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotHypomorphic: return "NotHypomorphic";
    case ErrorKind::LambdaTooSmall: return "LambdaTooSmall";
    case ErrorKind::IntervalCollapsed: return "IntervalCollapsed";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace reconlab
