#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace laxjac {

/// Every numerical failure a module can raise. The CLI reports these by name.
enum class ErrorKind {
  InvalidArgument,
  NonzeroRemainder,
  IllConditioned,
  NotDiagonalizable,
  ConstraintViolation,
  RelationViolation,
  StepFailure,
  ContourTooClose,
  AGMNonconvergence,
  NormalizationFailure,
  PathThroughBranchPoint,
  DegenerateDivisor,
  RankDeficientLattice,
  DegenerateTau,
  DivisorDegeneracy,
  BranchCollision,
  NonIntegerMonodromy,
  NoRealTorus,
  IntegerRelationFailure,
  SingularCurve,
};

std::string_view error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace laxjac
