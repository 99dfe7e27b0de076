#pragma once

#include <string>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

namespace chiral {

using BigInt = mpz_class;
using Rat = mpq_class;

// Expression templates are off so `auto` never captures a lazy proxy.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionDigits = 64;

/// Sets the working precision (decimal digits) for every Real created afterwards.
/// Process-wide: call before spawning worker threads.
void set_working_precision(unsigned digits);
unsigned working_precision();

Real to_real(const Rat& x);
Real to_real(const BigInt& x);
Real real_pi();

/// Fixed-notation rendering with `digits` significant digits.
std::string format_real(const Real& x, int digits = 20);

/// Parses "p/q", an integer, or a finite decimal ("1.6789") exactly.
Rat parse_rat(const std::string& text);
std::string rat_to_string(const Rat& x);

}  // namespace chiral
