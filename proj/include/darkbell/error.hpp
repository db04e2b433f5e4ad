#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace darkbell {

enum class ErrorKind {
  CutoffExceeded,
  InvalidParams,
  OutOfRange,
  ConditionsViolated,
  ZeroState,
  EigensolverFailure,
  NoDarkLevel,
  DegeneratePair,
  SingularRate,
  StepSizeUnderflow,
  NormDriftExceeded,
  Config,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace darkbell
