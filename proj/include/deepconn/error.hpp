#pragma once

#include <stdexcept>
#include <string>

namespace deepconn {

enum class ErrorCode {
  kSyntax,        // malformed instance document
  kValidation,    // document parses but violates an instance invariant
  kArgument,      // bad caller input (unknown peer, s == t, ...)
  kPrecondition,  // infeasible problem instance
  kBudget,        // exact search exceeded its budget
  kInternal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace deepconn
