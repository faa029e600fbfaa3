#include "deepconn/error.hpp"

namespace deepconn {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "syntax";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kArgument: return "argument";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kBudget: return "budget";
    case ErrorCode::kInternal: return "internal";
  }
  return "internal";
}

}  // namespace deepconn
