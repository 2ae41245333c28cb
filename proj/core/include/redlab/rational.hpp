#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace redlab {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", an integer, or a plain decimal literal ("0.125", "1e-3")
/// into an exact rational. Throws ValidationError on malformed text or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double (every finite double is a dyadic rational).
Rational exact_rational(double value);

/// "num/den" in lowest terms; integers render as "num/1".
std::string to_fraction_string(const Rational& value);

}  // namespace redlab
