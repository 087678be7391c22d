#pragma once

#include <stdexcept>
#include <string>

namespace hhl {

enum class ErrorKind {
  CokernelNotFinite,
  InvalidInput,
  UnboundedRegion,
  IndexOutOfRange,
  ConeNotInFan,
  CokernelNotFree,
  NonInjectivePhi,
  DegenerateSubstack,
  Unsupported,
  Parse,
};

/// Reported failure with a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hhl
