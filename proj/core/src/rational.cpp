#include "sysgeo/rational.hpp"

#include <stdexcept>

namespace sysgeo {

BigInt big_pow(const BigInt& base, unsigned exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

Rational rational_pow(const Rational& base, unsigned exp) {
    return Rational(big_pow(numerator(base), exp), big_pow(denominator(base), exp));
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

int compare_against_sqrt(const Rational& a, const Rational& b, const BigInt& s) {
    if (a < 0 || b < 0 || s < 0) throw std::invalid_argument("compare_against_sqrt: negative input");
    Rational lhs = a * a;
    Rational rhs = b * b * Rational(s);
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

} // namespace sysgeo
