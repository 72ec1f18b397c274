#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace canht {

enum class ErrorKind {
  DivisionByZero,
  ZeroPolynomial,
  NotSquarefree,
  ReducibleDefiningPolynomial,
  InvalidDefiningPolynomial,
  FieldMismatch,
  SingularMatrix,
  NonInvertibleDerivative,
  AllCoordinatesZero,
  ZeroCoordinate,
  ZeroParameter,
  NotMonogenic,
  NotRootOfUnity,
  RankMismatch,
  InvalidLattice,
  InvalidArgument,
  NumericalFailure,
  InternalError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Mathematical precondition violated or computation impossible for the input.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Malformed textual or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw DomainError(kind, what);
}

}  // namespace canht
