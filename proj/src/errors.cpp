#include "fluctlab/errors.hpp"

namespace fluct {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyWalk: return "EmptyWalk";
    case ErrorCode::MassNotOne: return "MassNotOne";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::DuplicateOffset: return "DuplicateOffset";
    case ErrorCode::DegenerateSupport: return "DegenerateSupport";
    case ErrorCode::NotAdapted: return "NotAdapted";
    case ErrorCode::NotAperiodic: return "NotAperiodic";
    case ErrorCode::InexactWalk: return "InexactWalk";
    case ErrorCode::NotSupercritical: return "NotSupercritical";
    case ErrorCode::NoInteriorMinimizer: return "NoInteriorMinimizer";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::HorizonTooLarge: return "HorizonTooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::AtomAtZeroIsOne: return "AtomAtZeroIsOne";
    case ErrorCode::WindowEmpty: return "WindowEmpty";
    case ErrorCode::WindowInsufficient: return "WindowInsufficient";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::NonGeometricGrid: return "NonGeometricGrid";
    case ErrorCode::UnknownClaim: return "UnknownClaim";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

}  // namespace fluct
