#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qhyper {

enum class ErrorCode {
  NonSquareMatrix,
  NegativeEntry,
  NonFiniteEntry,
  ValidationFailed,
  EmptySubset,
  IndexOutOfRange,
  SizeOverflow,
  LengthMismatch,
  NotAmple,
  NotMinimal,
  NoConvergence,
  SpaceMismatch,
  SubsetMismatch,
  NotMetric,
  NotACorrespondence,
  BudgetExceeded,
  EpsTooSmall,
  InfeasibleFamily,
  NotNonexpansive,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NoConvergence : public Error {
 public:
  NoConvergence(int iterations, double residual);

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class ParseError : public Error {
 public:
  /// `row` and `column` are 1-based; 0 means unknown.
  ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0);

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace qhyper
