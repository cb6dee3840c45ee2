#include <fp/gamma.hpp>

#include <map>
#include <mutex>
#include <stdexcept>

namespace fp {

LaurentSeries<ZetaExpr> log_gamma_shifted_series(int anchor, int trunc) {
    if (anchor < 1) throw std::invalid_argument("log_gamma_shifted_series: anchor must be >= 1");
    if (trunc < 1) throw std::invalid_argument("log_gamma_shifted_series: trunc must be >= 1");
    std::vector<ZetaExpr> c(static_cast<size_t>(trunc));
    // harmonic numbers H_{N-1}^{(k)} = sum_{j<N} j^-k
    Rational h1 = 0;
    for (int j = 1; j < anchor; ++j) h1 += Rational(1, j);
    c[0] = ZetaExpr(h1) - ZetaExpr::euler_gamma_pow(1);
    for (int k = 2; k <= trunc; ++k) {
        Rational hk = 0;
        for (int j = 1; j < anchor; ++j) {
            BigInt p = 1;
            for (int i = 0; i < k; ++i) p *= j;
            hk += Rational(1, p);
        }
        ZetaExpr term = ZetaExpr::zeta(k) - ZetaExpr(hk);
        if (k % 2 != 0) term = -term;
        c[static_cast<size_t>(k - 1)] = term * ZetaExpr(Rational(1, k));
    }
    return LaurentSeries<ZetaExpr>(1, trunc, std::move(c));
}

GammaExpansion gamma_series(int anchor, int trunc) {
    if (anchor < 0) throw std::invalid_argument("gamma_series: anchor must be >= 0");
    if (trunc < (anchor == 0 ? -1 : 0))
        throw std::invalid_argument("gamma_series: trunc below anchor minimum");

    static std::map<std::pair<int, int>, GammaExpansion> memo;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find({anchor, trunc});
        if (it != memo.end()) return it->second;
    }

    GammaExpansion out;
    out.anchor = anchor;
    if (anchor == 0) {
        // Gamma(x) = exp(log Gamma(1+x)) / x
        auto lg = log_gamma_shifted_series(1, trunc + 1);
        out.series = exp_series(lg).shifted(-1);
    } else {
        auto lg    = log_gamma_shifted_series(anchor, std::max(trunc, 1));
        out.series = exp_series(lg).scaled(ZetaExpr(Rational(factorial(anchor - 1)))).truncated(trunc);
    }

    std::lock_guard<std::mutex> lock(mtx);
    memo.insert({{anchor, trunc}, out});
    return out;
}

ClosedFormResult closed_form_fp(int n, int trunc) {
    if (n < 1 || n > 12) throw std::invalid_argument("closed_form_fp: n must be in [1,12]");
    if (trunc < 0) trunc = n + 6;
    if (trunc < n) throw std::invalid_argument("closed_form_fp: trunc must be >= n");

    static std::map<std::pair<int, int>, ClosedFormResult> memo;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find({n, trunc});
        if (it != memo.end()) return it->second;
    }

    // x^n Gamma(x)^{n+1} = Gamma(1+x)^{n+1} / x = exp((n+1) log Gamma(1+x)) / x;
    // the power series still carries gamma up to degree n+1, canceled only in
    // the product with the reciprocal factor below.
    auto lg  = log_gamma_shifted_series(1, trunc + 2);
    auto pw  = exp_series(lg.scaled(ZetaExpr(n + 1))).shifted(-1);  // [-1, trunc+1]

    // 1 / Gamma((n+1)x) = (n+1) x exp(-log Gamma(1 + (n+1)x))
    auto inv = exp_series(lg.scaled_arg(n + 1).negated()).scaled(ZetaExpr(n + 1)).shifted(1);

    auto f = pw * inv;  // [0, trunc+1]
    if (f.trunc_order() < trunc || f.min_order() > 0)
        throw std::domain_error("closed_form_fp: series window cannot reach x^n");
    ClosedFormResult r;
    r.series      = f.truncated(trunc);
    r.finite_part = ZetaExpr::pi_pow(n) * f.coeff(n);
    r.leading     = ZetaExpr::pi_pow(n) * f.coeff(0);

    std::lock_guard<std::mutex> lock(mtx);
    memo.insert({{n, trunc}, r});
    return r;
}

namespace {

// Dense bivariate Taylor polynomial over ZetaExpr truncated at degrees
// (K, M); just enough machinery for the Beta-derivative extraction.
struct BiPoly {
    int K, M;
    std::vector<ZetaExpr> c;  // c[i*(M+1)+j] is the s^i t^j coefficient

    BiPoly(int k, int m) : K(k), M(m), c(static_cast<size_t>((k + 1) * (m + 1))) {}
    ZetaExpr& at(int i, int j) { return c[static_cast<size_t>(i * (M + 1) + j)]; }
    const ZetaExpr& at(int i, int j) const { return c[static_cast<size_t>(i * (M + 1) + j)]; }

    BiPoly operator*(const BiPoly& o) const {
        BiPoly r(K, M);
        for (int i = 0; i <= K; ++i)
            for (int j = 0; j <= M; ++j) {
                if (at(i, j).is_zero()) continue;
                for (int p = 0; i + p <= K; ++p)
                    for (int q = 0; j + q <= M; ++q)
                        r.at(i + p, j + q) += at(i, j) * o.at(p, q);
            }
        return r;
    }

    BiPoly& operator+=(const BiPoly& o) {
        for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
};

// exp of a bivariate polynomial with zero constant term.
BiPoly bipoly_exp(const BiPoly& a) {
    BiPoly acc(a.K, a.M), term(a.K, a.M);
    acc.at(0, 0)  = ZetaExpr(1);
    term.at(0, 0) = ZetaExpr(1);
    int total = a.K + a.M;
    for (int k = 1; k <= total; ++k) {
        term = term * a;
        BiPoly scaled(a.K, a.M);
        for (size_t i = 0; i < term.c.size(); ++i) scaled.c[i] = div_by_int(term.c[i], k);
        term = scaled;
        acc += term;
    }
    return acc;
}

}  // namespace

ZetaExpr beta_log_integral(int a, int b, int k, int m) {
    if (a < 0 || b < 0 || k < 0 || m < 0)
        throw std::invalid_argument("beta_log_integral: negative parameter");
    if (a > 8 || b > 8 || k + m > 6)
        throw std::invalid_argument("beta_log_integral: parameters outside supported range");
    if (k == 0 && m == 0) return ZetaExpr(Rational(factorial(a) * factorial(b), factorial(a + b + 1)));

    // log B(a+1+s, b+1+t) - log B(a+1, b+1), assembled from the three
    // log-gamma series; gamma cancels between them.
    BiPoly delta(k, m);
    if (k >= 1) {
        auto sa = log_gamma_shifted_series(a + 1, k);
        for (int i = 1; i <= k; ++i) delta.at(i, 0) += sa.coeff(i);
    }
    if (m >= 1) {
        auto sb = log_gamma_shifted_series(b + 1, m);
        for (int j = 1; j <= m; ++j) delta.at(0, j) += sb.coeff(j);
    }
    auto sc = log_gamma_shifted_series(a + b + 2, k + m);
    for (int d = 1; d <= k + m; ++d) {
        // -(s+t)^d coefficient spread
        ZetaExpr cd = sc.coeff(d);
        for (int i = std::max(0, d - m); i <= std::min(d, k); ++i) {
            int j = d - i;
            delta.at(i, j) -= cd * ZetaExpr(Rational(binomial(d, i)));
        }
    }

    BiPoly bexp = bipoly_exp(delta);
    ZetaExpr result = bexp.at(k, m) * ZetaExpr(Rational(factorial(k) * factorial(m))) *
                      ZetaExpr(Rational(factorial(a) * factorial(b), factorial(a + b + 1)));
    if (!result.is_zero() && result.gamma_degree() != 0)
        throw std::logic_error("beta_log_integral: gamma failed to cancel");
    return result;
}

}  // namespace fp
