#pragma once

#include <gmpxx.h>

#include <string>

#include "framelet/errors.hpp"

namespace framelet {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p" or "p/q" with optional sign; q must be nonzero.
Rational parse_rational(const std::string& text);

// Canonical form: reduced, '/' only when the denominator is not 1.
std::string rational_to_string(const Rational& q);

}  // namespace framelet
