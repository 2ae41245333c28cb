#include "redlab/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "redlab/errors.hpp"

namespace redlab {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ValidationError("malformed rational literal '" + std::string(whole) + "'");
  }
  BigInt value(std::string(s), 10);
  return negative ? BigInt(-value) : value;
}

BigInt pow10(unsigned long exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
  return out;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    BigInt e_value = parse_integer(exp_text, text);
    if (!e_value.fits_slong_p() || std::abs(e_value.get_si()) > 4096) {
      throw ValidationError("exponent out of range in '" + std::string(text) + "'");
    }
    exponent = e_value.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw ValidationError("malformed decimal literal '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) {
      throw ValidationError("malformed decimal literal '" + std::string(text) + "'");
    }
    digits = std::string(s);
  }
  Rational value(BigInt(digits, 10));
  if (exponent > 0) {
    value *= pow10(static_cast<unsigned long>(exponent));
  } else if (exponent < 0) {
    value /= pow10(static_cast<unsigned long>(-exponent));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ValidationError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    Rational out(num, den);
    out.canonicalize();
    return out;
  }
  return parse_decimal(text);
}

Rational exact_rational(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot represent a non-finite value exactly");
  // mpq_set_d is exact for finite doubles.
  return Rational(value);
}

std::string to_fraction_string(const Rational& value) {
  Rational reduced(value);
  reduced.canonicalize();
  return reduced.get_num().get_str() + "/" + reduced.get_den().get_str();
}

}  // namespace redlab
