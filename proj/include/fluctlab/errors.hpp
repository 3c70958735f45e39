#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fluct {

enum class ErrorCode {
  InvalidArgument,
  EmptyWalk,
  MassNotOne,
  NegativeMass,
  DuplicateOffset,
  DegenerateSupport,
  NotAdapted,
  NotAperiodic,
  InexactWalk,
  NotSupercritical,
  NoInteriorMinimizer,
  NoConvergence,
  HorizonTooLarge,
  BudgetExceeded,
  ResidualTooLarge,
  AtomAtZeroIsOne,
  WindowEmpty,
  WindowInsufficient,
  SupportViolation,
  NonGeometricGrid,
  UnknownClaim,
  HypothesisViolation,
  BadInput,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; the code identifies
// the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fluct
