#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace s4norms {

/// Exact nonnegative rational; masses and pre-masses are never approximated.
using Mass = mpq_class;

/// "num/den" with den printed even when it is 1, so the text form is uniform.
std::string to_fraction_string(const mpq_class& x);

/// Parses "a", "-a", "a/b" (base 10). Throws std::invalid_argument on junk or b == 0.
mpq_class parse_rational(std::string_view text);

/// q^k as an exact rational.
mpq_class rational_pow(const mpz_class& q, unsigned long k);

}  // namespace s4norms
