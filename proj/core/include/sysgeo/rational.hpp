// Exact integer and rational arithmetic used by the constants engine.
// Thin aliases over boost::multiprecision so call sites stay readable.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace sysgeo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt big_pow(const BigInt& base, unsigned exp);
Rational rational_pow(const Rational& base, unsigned exp);
BigInt factorial(unsigned n);

double to_double(const Rational& q);
std::string to_string(const Rational& q);

// Compares a against b*sqrt(s) for nonnegative rationals without rounding,
// by comparing a^2 with b^2*s. Returns -1, 0, or +1.
int compare_against_sqrt(const Rational& a, const Rational& b, const BigInt& s);

} // namespace sysgeo
