#pragma once

#include <fp/laurent.hpp>
#include <fp/zring.hpp>

namespace fp {

// Series expansion of the gamma function: about 0 for anchor 0 (simple pole,
// residue exactly 1), Taylor about a positive integer otherwise (constant
// term (N-1)!).
struct GammaExpansion {
    int anchor = 0;
    LaurentSeries<ZetaExpr> series;
};

// Taylor series of log Gamma(N + s) - log Gamma(N) on the window [1, trunc].
// Coefficients are (H_{N-1} - gamma) s + sum_{k>=2} (-1)^k (zeta(k) -
// H_{N-1}^{(k)}) s^k / k, i.e. polygamma values at N written exactly as
// rational harmonic parts plus zeta parts.
LaurentSeries<ZetaExpr> log_gamma_shifted_series(int anchor, int trunc);

GammaExpansion gamma_series(int anchor, int trunc);

struct ClosedFormResult {
    // F(x) = x^n Gamma(x)^{n+1} / Gamma((n+1)x), holomorphic at 0 with
    // F(0) = n+1, carried on the window [0, trunc].
    LaurentSeries<ZetaExpr> series;
    ZetaExpr finite_part;   // pi^n * coeff_n(F)
    ZetaExpr leading;       // pi^n * coeff_0(F), the order -n Laurent coefficient
};

// Closed-form finite part on P^n.  `trunc` is the delivered window of F.
ClosedFormResult closed_form_fp(int n, int trunc = -1);

// Exact value of  int_0^1 x^a (1-x)^b log^k(x) log^m(1-x) dx  as iterated
// Beta-function derivatives.  The result is gamma-free (gamma cancels in the
// Beta ratio).  Parameter bounds a,b <= 8 and k+m <= 6 cover everything the
// P^2/P^3 pipelines generate; widen them here if new integrands appear.
ZetaExpr beta_log_integral(int a, int b, int k, int m);

}  // namespace fp
