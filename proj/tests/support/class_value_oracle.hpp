#pragma once

// Test-only oracle for symmetry-class values, independent of the term
// reduction and quadrature paths.
//
// For a class with representative J = {1..k}, composition (l_1..l_k), log
// power l' and FS power fs on P^n, the pairing against 1 equals a mixed
// Taylor coefficient of the regularized sampling function
//
//   H(x_0..x_n) = pi^n fs! [prod_{k in J} Gamma(1+x_k)]
//                 [prod_{q in Q} Gamma(1+x_q)] Gamma(1+x_0)
//                 [(fs+1) + x_0 + sum_Q x_q] / Gamma(fs+2+X),
//
// where Q = {1..n} \ J, X = sum of all x_j: the coefficient of
// prod_k x_k^{l_k+1} * prod_{j in complement} x_j^{q_j}, summed over the
// multinomial splits q of l' across the complement {0} u Q.  This follows
// from evaluating the toric integrals of ||Z||^{2x} against the elementary
// form product in closed form (Dirichlet integrals); it reproduces the
// published worked value pi^2 (1 - zeta(2)) by hand.

#include <fp/expansion.hpp>
#include <fp/gamma.hpp>
#include <fp/laurent.hpp>
#include <fp/zring.hpp>

#include <functional>
#include <vector>

namespace fp::testsupport {

// coefficient of prod x_j^{m_j} in [prod_j f_j(x_j)] * G(sum x_j)
inline ZetaExpr mixed_coeff(const std::vector<LaurentSeries<ZetaExpr>>& f,
                            const LaurentSeries<ZetaExpr>& G, const std::vector<int>& m) {
    size_t nvars = m.size();
    ZetaExpr total;
    std::vector<int> s(nvars, 0);
    std::function<void(size_t, int, ZetaExpr, Rational)> rec =
        [&](size_t pos, int sum_s, ZetaExpr partial, Rational inv_fact) {
            if (pos == nvars) {
                // G contributes coefficient G_{sum_s}, distributed by the
                // multinomial sum_s! / prod s_j!; inv_fact = 1/prod s_j!
                ZetaExpr g = G.coeff(sum_s) * ZetaExpr(Rational(factorial(sum_s)) * inv_fact);
                total += partial * g;
                return;
            }
            for (int sj = 0; sj <= m[pos]; ++sj) {
                ZetaExpr fc = f[pos].coeff(m[pos] - sj);
                if (fc.is_zero()) continue;
                rec(pos + 1, sum_s + sj, partial * fc, inv_fact / Rational(factorial(sj)));
            }
        };
    rec(0, 0, ZetaExpr(1), Rational(1));
    return total;
}

// Exact value of one symmetry class (multiplicity included).
inline ZetaExpr class_value_oracle(const Term& cls) {
    int n  = cls.n;
    int k  = static_cast<int>(cls.subset.size());
    int fs = cls.fs_power;
    int lp = cls.log_power;
    // representative uses J = {1..k}; complement = {0} u {k+1..n}
    for (int i = 0; i < k; ++i)
        if (cls.subset[static_cast<size_t>(i)] != i + 1)
            throw std::invalid_argument("class_value_oracle: expects the canonical representative");

    int max_order = lp + 2 * n + 4;
    auto gamma1   = gamma_series(1, max_order).series;  // Gamma(1+x)
    auto log_g    = log_gamma_shifted_series(fs + 2, max_order);
    auto ginv     = exp_series(log_g.negated())
                    .scaled(ZetaExpr(Rational(1, factorial(fs + 1))));  // 1/Gamma(fs+2+x)

    // orders per variable 0..n
    std::vector<int> base_m(static_cast<size_t>(n + 1), 0);
    for (int i = 0; i < k; ++i)
        base_m[static_cast<size_t>(i + 1)] = cls.composition[static_cast<size_t>(i)] + 1;

    std::vector<int> complement{0};
    for (int q = k + 1; q <= n; ++q) complement.push_back(q);

    // multinomial splits of lp over the complement
    std::vector<std::vector<int>> splits;
    std::vector<int> cur(complement.size(), 0);
    std::function<void(size_t, int)> enumerate = [&](size_t pos, int left) {
        if (pos + 1 == complement.size()) {
            cur[pos] = left;
            splits.push_back(cur);
            return;
        }
        for (int t = 0; t <= left; ++t) {
            cur[pos] = t;
            enumerate(pos + 1, left - t);
        }
    };
    enumerate(0, lp);

    std::vector<LaurentSeries<ZetaExpr>> f(static_cast<size_t>(n + 1), gamma1);

    ZetaExpr acc;
    for (const auto& split : splits) {
        std::vector<int> m = base_m;
        for (size_t c = 0; c < complement.size(); ++c)
            m[static_cast<size_t>(complement[c])] = split[c];
        // P = (fs+1) + x_0 + sum_{q in Q} x_q, applied monomial by monomial
        ZetaExpr piece = mixed_coeff(f, ginv, m) * ZetaExpr(fs + 1);
        for (int var : complement) {
            if (m[static_cast<size_t>(var)] == 0) continue;
            std::vector<int> m2 = m;
            m2[static_cast<size_t>(var)] -= 1;
            piece += mixed_coeff(f, ginv, m2);
        }
        acc += piece;
    }
    // class multiplicity already folds (fs+1)/lp! and the orbit size; the
    // multinomial expansion of (sum log)^{lp} cancels the 1/lp! against the
    // per-split q! absorbed in the coefficient extraction
    return acc * ZetaExpr(Rational(factorial(lp))) * ZetaExpr(cls.multiplicity) *
           ZetaExpr::pi_pow(n) * ZetaExpr(Rational(factorial(fs)));
}

}  // namespace fp::testsupport
