#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coarse {

enum class ErrorKind {
  // input shape / usage
  InvalidArgument,
  ParseError,
  UnknownPoint,
  DimensionMismatch,
  NonSquareMatrix,
  NonFiniteValue,
  // metric construction
  AsymmetricMatrix,
  NegativeDistance,
  CoincidentPoints,
  TriangleViolation,
  DisconnectedGraph,
  NonpositiveM,
  NotInSimplex,
  // covers
  NotACover,
  SpaceMismatch,
  NotARefinement,
  WindowTooSmall,
  ConstructionInvalid,
  FamilyCountMismatch,
  // nerve / extension
  ZeroLebesgue,
  EmptyA,
  NotLipschitzOnA,
  NotOneDiscrete,
  VerificationFailed,
  LebesgueAssertionFailed,
  RefinerFailed,
  BoundaryViolation,
  LipschitzBoundViolation,
  LebesgueTooSmall,
  ExtenderFailed,
  EpsilonNotBelowM,
  // oscillation
  NoBasepoint,
  NmaxTooSmall,
  PreconditionViolated,
  PastingVerificationFailed,
  // asdim
  OstrandFailed,
  InputRefinerFailed,
};

std::string_view to_string(ErrorKind kind);

/// True for errors caused by malformed input rather than a failed
/// mathematical check. The CLI maps these to exit code 2.
bool is_input_error(ErrorKind kind);

/// Library-wide exception. `witness` holds point (or member) indices that
/// exhibit the failure, e.g. the triple (x, y, z) of a triangle violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> witness_;
};

}  // namespace coarse
