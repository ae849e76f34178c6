#pragma once
#include <stdexcept>
#include <string>

namespace omegapaste {

enum class Err {
  LengthMismatch,
  NegativeEntry,
  ZigzagViolation,
  MalformedEncoding,
  DimensionOutOfRange,
  NotFullDimensional,
  DanglingBoundary,
  GlobularityViolation,
  DimMismatch,
  ShapeMismatch,
  BoundaryMismatch,
  NotParallel,
  ArityMismatch,
  DimZero,
  ArityShapeMismatch,
  MarkDimZero,
  SquareDoesNotCommute,
  PreconditionViolated,
  NotIdentityAtSlot,
  MissingInverseAssignment,
  DepthExhausted,
  NotInversesOfSameCell,
  SyntaxError,
  UsageError,
  Internal,
};

const char* err_name(Err e);

/// Domain error carrying one of the spec'd error kinds.
class OmegaError : public std::runtime_error {
 public:
  OmegaError(Err kind, const std::string& what);
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] void fail(Err kind, const std::string& what);

inline void check(bool cond, Err kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace omegapaste
