#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace folab {

enum class ErrorKind {
  VariableCountMismatch,
  ExponentOverflow,
  NotDivisible,
  ZeroDenominator,
  InvalidArgument,
  NotHomogeneous,
  UnequalDegrees,
  EulerViolated,
  CommonFactor,
  ZeroForm,
  ConstantCurve,
  InvalidPoint,
  NonSingularPoint,
  NonIsolatedSingularities,
  NotSquarefree,
  DegreeMismatch,
  NotInvariant,
  NotReduced,
  DicriticalInput,
  UnknownDicriticity,
  ReductionIncomplete,
  DegreeInfeasible,
  NotExtremalDegree,
  DivisionFailed,
  EulerConsequenceViolated,
  SyntaxError,
  UnknownVariable,
  InputError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::VariableCountMismatch: return "VariableCountMismatch";
    case ErrorKind::ExponentOverflow: return "ExponentOverflow";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::UnequalDegrees: return "UnequalDegrees";
    case ErrorKind::EulerViolated: return "EulerViolated";
    case ErrorKind::CommonFactor: return "CommonFactor";
    case ErrorKind::ZeroForm: return "ZeroForm";
    case ErrorKind::ConstantCurve: return "ConstantCurve";
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::NonSingularPoint: return "NonSingularPoint";
    case ErrorKind::NonIsolatedSingularities: return "NonIsolatedSingularities";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::DicriticalInput: return "DicriticalInput";
    case ErrorKind::UnknownDicriticity: return "UnknownDicriticity";
    case ErrorKind::ReductionIncomplete: return "ReductionIncomplete";
    case ErrorKind::DegreeInfeasible: return "DegreeInfeasible";
    case ErrorKind::NotExtremalDegree: return "NotExtremalDegree";
    case ErrorKind::DivisionFailed: return "DivisionFailed";
    case ErrorKind::EulerConsequenceViolated: return "EulerConsequenceViolated";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::InputError: return "InputError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace folab
