#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cdlab {

enum class ErrorKind {
  kInvalidArgument,
  kDomain,
  kPrecision,
  kSingularity,
  kPrecondition,
  kDegeneracy,
  kDegenerateInput,
  kNumeric,
  kSchema,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to a check verdict or an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cdlab
