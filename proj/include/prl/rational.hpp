#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace prl {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Accepts integers ("3"), fractions ("-1/2") and finite decimals ("0.25").
Rational parse_rational(std::string_view text);

/// Canonical form: "p" for integers, "p/q" otherwise (q > 0, lowest terms).
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

}  // namespace prl
