#pragma once

#include <stdexcept>
#include <string>

namespace varlip {

enum class ErrorCode {
  argument = 1,
  domain = 2,
  exponent_range = 3,
  hypothesis = 4,
  schema = 5,
  insufficient_data = 6,
  io = 7,
};

// Single exception type for the library; the code lets the C layer map it
// onto a status value without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace varlip
