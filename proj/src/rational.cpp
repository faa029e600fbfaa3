#include "deepconn/rational.hpp"

#include "deepconn/error.hpp"

namespace deepconn {

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  Rational r;
  if (r.set_str(std::string(text), 10) != 0 || r.get_den() == 0) {
    throw Error(ErrorCode::kSyntax, "bad rational '" + std::string(text) + "'");
  }
  r.canonicalize();
  return r;
}

}  // namespace deepconn
