#include "qhyper/error.hpp"

#include <sstream>

namespace qhyper {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquareMatrix: return "NonSquareMatrix";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeOverflow: return "SizeOverflow";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotAmple: return "NotAmple";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::SubsetMismatch: return "SubsetMismatch";
    case ErrorCode::NotMetric: return "NotMetric";
    case ErrorCode::NotACorrespondence: return "NotACorrespondence";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::EpsTooSmall: return "EpsTooSmall";
    case ErrorCode::InfeasibleFamily: return "InfeasibleFamily";
    case ErrorCode::NotNonexpansive: return "NotNonexpansive";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string no_convergence_message(int iterations, double residual) {
  std::ostringstream os;
  os << "projection did not converge after " << iterations << " iterations (residual "
     << residual << ")";
  return os.str();
}

std::string parse_message(const std::string& what, std::size_t row, std::size_t column) {
  std::ostringstream os;
  os << what;
  if (row > 0) os << " at row " << row;
  if (column > 0) os << ", column " << column;
  return os.str();
}

}  // namespace

NoConvergence::NoConvergence(int iterations, double residual)
    : Error(ErrorCode::NoConvergence, no_convergence_message(iterations, residual)),
      iterations_(iterations),
      residual_(residual) {}

ParseError::ParseError(const std::string& what, std::size_t row, std::size_t column)
    : Error(ErrorCode::ParseError, parse_message(what, row, column)), row_(row), column_(column) {}

}  // namespace qhyper
