#include "coarse/error.hpp"

namespace coarse {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownPoint: return "UnknownPoint";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonSquareMatrix: return "NonSquareMatrix";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorKind::NegativeDistance: return "NegativeDistance";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::NonpositiveM: return "NonpositiveM";
    case ErrorKind::NotInSimplex: return "NotInSimplex";
    case ErrorKind::NotACover: return "NotACover";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::NotARefinement: return "NotARefinement";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::ConstructionInvalid: return "ConstructionInvalid";
    case ErrorKind::FamilyCountMismatch: return "FamilyCountMismatch";
    case ErrorKind::ZeroLebesgue: return "ZeroLebesgue";
    case ErrorKind::EmptyA: return "EmptyA";
    case ErrorKind::NotLipschitzOnA: return "NotLipschitzOnA";
    case ErrorKind::NotOneDiscrete: return "NotOneDiscrete";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::LebesgueAssertionFailed: return "LebesgueAssertionFailed";
    case ErrorKind::RefinerFailed: return "RefinerFailed";
    case ErrorKind::BoundaryViolation: return "BoundaryViolation";
    case ErrorKind::LipschitzBoundViolation: return "LipschitzBoundViolation";
    case ErrorKind::LebesgueTooSmall: return "LebesgueTooSmall";
    case ErrorKind::ExtenderFailed: return "ExtenderFailed";
    case ErrorKind::EpsilonNotBelowM: return "EpsilonNotBelowM";
    case ErrorKind::NoBasepoint: return "NoBasepoint";
    case ErrorKind::NmaxTooSmall: return "NmaxTooSmall";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::PastingVerificationFailed: return "PastingVerificationFailed";
    case ErrorKind::OstrandFailed: return "OstrandFailed";
    case ErrorKind::InputRefinerFailed: return "InputRefinerFailed";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::ParseError:
    case ErrorKind::UnknownPoint:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NonSquareMatrix:
    case ErrorKind::NonFiniteValue:
    case ErrorKind::AsymmetricMatrix:
    case ErrorKind::NegativeDistance:
    case ErrorKind::CoincidentPoints:
    case ErrorKind::TriangleViolation:
    case ErrorKind::DisconnectedGraph:
    case ErrorKind::NonpositiveM:
    case ErrorKind::NotInSimplex:
    case ErrorKind::NotACover:
    case ErrorKind::SpaceMismatch:
    case ErrorKind::WindowTooSmall:
    case ErrorKind::FamilyCountMismatch:
    case ErrorKind::NoBasepoint:
    case ErrorKind::NmaxTooSmall:
    case ErrorKind::EpsilonNotBelowM:
      return true;
    default:
      return false;
  }
}

}  // namespace coarse
