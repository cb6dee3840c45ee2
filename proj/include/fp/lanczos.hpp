#pragma once

#include <cmath>
#include <complex>

namespace fp {

// Complex gamma function via the classic g=7, n=9 Lanczos approximation,
// good to ~1e-13 relative on the right half plane; reflection handles the
// rest.  Serves as the trusted float evaluator for series cross-checks.
inline std::complex<double> gamma_lanczos(std::complex<double> z) {
    static const double g = 7.0;
    static const double coef[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return M_PI / (std::sin(M_PI * z) * gamma_lanczos(1.0 - z));
    }
    z -= 1.0;
    std::complex<double> x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
    std::complex<double> t = z + g + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

inline std::complex<double> log_gamma_lanczos(std::complex<double> z) {
    return std::log(gamma_lanczos(z));
}

}  // namespace fp
