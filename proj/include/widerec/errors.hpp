#pragma once

#include <stdexcept>
#include <string>

namespace widerec {

enum class ErrorKind {
  InvalidInput,
  NonInvertible,
  CyclicQuiver,
  NonAdmissibleRelations,
  InvalidModule,
  SearchBudgetExceeded,
  OutOfCatalog,
  TooManyIndecomposables,
  NotAdjointPair,
  ExactnessFailure,
  Internal,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::CyclicQuiver: return "CyclicQuiver";
    case ErrorKind::NonAdmissibleRelations: return "NonAdmissibleRelations";
    case ErrorKind::InvalidModule: return "InvalidModule";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::OutOfCatalog: return "OutOfCatalog";
    case ErrorKind::TooManyIndecomposables: return "TooManyIndecomposables";
    case ErrorKind::NotAdjointPair: return "NotAdjointPair";
    case ErrorKind::ExactnessFailure: return "ExactnessFailure";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace widerec
