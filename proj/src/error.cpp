#include "omegapaste/error.hpp"

namespace omegapaste {

const char* err_name(Err e) {
  switch (e) {
    case Err::LengthMismatch: return "LengthMismatch";
    case Err::NegativeEntry: return "NegativeEntry";
    case Err::ZigzagViolation: return "ZigzagViolation";
    case Err::MalformedEncoding: return "MalformedEncoding";
    case Err::DimensionOutOfRange: return "DimensionOutOfRange";
    case Err::NotFullDimensional: return "NotFullDimensional";
    case Err::DanglingBoundary: return "DanglingBoundary";
    case Err::GlobularityViolation: return "GlobularityViolation";
    case Err::DimMismatch: return "DimMismatch";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::BoundaryMismatch: return "BoundaryMismatch";
    case Err::NotParallel: return "NotParallel";
    case Err::ArityMismatch: return "ArityMismatch";
    case Err::DimZero: return "DimZero";
    case Err::ArityShapeMismatch: return "ArityShapeMismatch";
    case Err::MarkDimZero: return "MarkDimZero";
    case Err::SquareDoesNotCommute: return "SquareDoesNotCommute";
    case Err::PreconditionViolated: return "PreconditionViolated";
    case Err::NotIdentityAtSlot: return "NotIdentityAtSlot";
    case Err::MissingInverseAssignment: return "MissingInverseAssignment";
    case Err::DepthExhausted: return "DepthExhausted";
    case Err::NotInversesOfSameCell: return "NotInversesOfSameCell";
    case Err::SyntaxError: return "SyntaxError";
    case Err::UsageError: return "UsageError";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

OmegaError::OmegaError(Err kind, const std::string& what)
    : std::runtime_error(std::string(err_name(kind)) + ": " + what), kind_(kind) {}

void fail(Err kind, const std::string& what) { throw OmegaError(kind, what); }

}  // namespace omegapaste
