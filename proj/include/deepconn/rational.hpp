#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace deepconn {

// Exact rational scalar. GMP keeps every value in canonical reduced form.
using Rational = mpq_class;

// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

Rational parse_rational(std::string_view text);

}  // namespace deepconn
