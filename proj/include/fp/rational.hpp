#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fp {

// Exact rational arithmetic. All symbolic coefficients in the constant ring
// and the series machinery go through this type; floats enter only at
// evaluation time.
using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);  // always exact at this point
    }
    return r;
}

// B_0, B_1, B_2, ... with B_1 = -1/2.
Rational bernoulli(int n);

// zeta(2k) / pi^(2k) as an exact rational, k >= 1.
Rational even_zeta_over_pi_power(int two_k);

inline std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

Rational rational_from_str(const std::string& s);

inline double rational_to_double(const Rational& r) {
    return static_cast<double>(r);
}

}  // namespace fp
