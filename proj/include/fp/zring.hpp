#pragma once

#include <fp/rational.hpp>

#include <map>
#include <string>
#include <vector>

namespace fp {

// One monomial gamma^a * pi^b * zeta(k1)*zeta(k2)*... of the constant ring
// Q[gamma, pi, zeta(2), zeta(3), ...].  zeta_args is a sorted multiset with
// entries >= 2.
struct ZetaMonomial {
    int gamma_pow = 0;
    int pi_pow    = 0;
    std::vector<int> zeta_args;

    // order: gamma, pi, then fewer zeta factors first (so a single zeta(5)
    // precedes zeta(2)*zeta(3), matching the published presentation)
    bool operator<(const ZetaMonomial& o) const {
        if (gamma_pow != o.gamma_pow) return gamma_pow < o.gamma_pow;
        if (pi_pow != o.pi_pow) return pi_pow < o.pi_pow;
        if (zeta_args.size() != o.zeta_args.size()) return zeta_args.size() < o.zeta_args.size();
        return zeta_args < o.zeta_args;
    }
    bool operator==(const ZetaMonomial&) const = default;

    bool is_one() const { return gamma_pow == 0 && pi_pow == 0 && zeta_args.empty(); }
    ZetaMonomial operator*(const ZetaMonomial& o) const;
    std::string str() const;
};

// Exact element of Q[gamma, pi, zeta(2), zeta(3), ...] as a sparse monomial
// map.  Canonical form: no zero coefficients, zeta multisets sorted, and a
// monomial carries at most one even zeta argument (products of even zetas
// collapse into a single zeta of the total weight via Bernoulli numbers, so
// e.g. zeta(2)^2 is stored as 5/2*zeta(4)).  Odd zetas and mixed products
// such as zeta(2)*zeta(3) are kept as they are; no multiple-zeta-value
// reduction beyond that is attempted (extension point).
class ZetaExpr {
public:
    using TermMap = std::map<ZetaMonomial, Rational>;

    ZetaExpr() = default;
    ZetaExpr(long long v) : ZetaExpr(Rational(v)) {}  // NOLINT(implicit)
    ZetaExpr(const Rational& v);                      // NOLINT(implicit)

    static ZetaExpr zeta(int k, long long pow = 1);
    static ZetaExpr pi_pow(int k);
    static ZetaExpr euler_gamma_pow(int k);
    static ZetaExpr monomial(const ZetaMonomial& m, const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    const TermMap& terms() const { return terms_; }

    // Largest power of gamma over the support; error on the zero element.
    int gamma_degree() const;

    // Numeric value from high-accuracy constants.  `digits` is the requested
    // working precision in decimal digits; anything up to 17 (the double
    // limit) is honored, relative error < 1e-12 for sane operand sizes.
    double eval(int digits = 15) const;

    ZetaExpr operator-() const;
    ZetaExpr& operator+=(const ZetaExpr& o);
    ZetaExpr& operator-=(const ZetaExpr& o);
    friend ZetaExpr operator+(ZetaExpr a, const ZetaExpr& b) { return a += b; }
    friend ZetaExpr operator-(ZetaExpr a, const ZetaExpr& b) { return a -= b; }
    friend ZetaExpr operator*(const ZetaExpr& a, const ZetaExpr& b);
    ZetaExpr& operator*=(const ZetaExpr& o) { return *this = *this * o; }
    bool operator==(const ZetaExpr& o) const = default;

    // Canonical display form, e.g. "-9*pi^2*zeta(2)".
    std::string str() const;

    std::string to_json_string() const;
    static ZetaExpr from_json_string(const std::string& s);

private:
    TermMap terms_;
    void add_term(const ZetaMonomial& m, const Rational& c);
};

inline ZetaExpr div_by_int(const ZetaExpr& a, long long k) { return a * ZetaExpr(Rational(1, k)); }
inline double   div_by_int(double a, long long k) { return a / static_cast<double>(k); }

// zeta(k) as a double, k >= 2 (table for k <= 35, fast tail series beyond).
double zeta_value(int k);

extern const double kEulerGamma;

}  // namespace fp
