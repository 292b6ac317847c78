#pragma once

#include <stdexcept>
#include <string>

namespace lacunary {

/// Base of every error raised by the library. Carries the name of the module
/// that raised it so front ends can report where a numeric failure came from.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

#define LACUNARY_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    Name(std::string module, const std::string& what)                 \
        : Error(std::move(module), std::string(#Name) + ": " + what) {} \
  }

LACUNARY_DEFINE_ERROR(InvalidSpec);
LACUNARY_DEFINE_ERROR(InvalidArgument);
LACUNARY_DEFINE_ERROR(InsufficientPrecision);
LACUNARY_DEFINE_ERROR(CapacityExceeded);
LACUNARY_DEFINE_ERROR(NearIntegerAmbiguity);
LACUNARY_DEFINE_ERROR(IntervalViolation);
LACUNARY_DEFINE_ERROR(StreamExhausted);
LACUNARY_DEFINE_ERROR(PrecisionOverflow);

#undef LACUNARY_DEFINE_ERROR

}  // namespace lacunary
