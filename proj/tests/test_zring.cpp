#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fp/zring.hpp>

#include <cmath>
#include <random>

using namespace fp;

static ZetaExpr random_expr(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, 3), pow(0, 2), zarg(2, 5), coef(-4, 4);
    ZetaExpr e;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        ZetaMonomial m;
        m.gamma_pow = pow(rng);
        m.pi_pow    = pow(rng);
        int nz      = pow(rng);
        for (int j = 0; j < nz; ++j) m.zeta_args.push_back(zarg(rng));
        std::sort(m.zeta_args.begin(), m.zeta_args.end());
        e += ZetaExpr::monomial(m, coef(rng));
    }
    return e;
}

TEST_CASE("addition identities") {
    ZetaExpr z2 = ZetaExpr::zeta(2);
    CHECK(ZetaExpr(0) + z2 == z2);
    CHECK((z2 + (-z2)).is_zero());
    ZetaExpr a = ZetaExpr(2) - z2;
    ZetaExpr b = z2 - ZetaExpr(1);
    CHECK(a + b == ZetaExpr(1));
}

TEST_CASE("multiplication merges monomials") {
    ZetaExpr p = ZetaExpr::zeta(2) * ZetaExpr::zeta(3);
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms().begin()->first.zeta_args == std::vector<int>{2, 3});

    CHECK(ZetaExpr::pi_pow(2) * ZetaExpr::pi_pow(3) == ZetaExpr::pi_pow(5));

    ZetaExpr g = ZetaExpr::euler_gamma_pow(1);
    CHECK(ZetaExpr(Rational(1, 2)) * g * (ZetaExpr(2) * g) == ZetaExpr::euler_gamma_pow(2));
}

TEST_CASE("even zeta products collapse") {
    // zeta(2)^2 = 5/2 zeta(4), zeta(2)*zeta(4) = 7/6 zeta(6)
    CHECK(ZetaExpr::zeta(2) * ZetaExpr::zeta(2) == ZetaExpr(Rational(5, 2)) * ZetaExpr::zeta(4));
    CHECK(ZetaExpr::zeta(2) * ZetaExpr::zeta(4) == ZetaExpr(Rational(7, 4)) * ZetaExpr::zeta(6));
    // mixed parity stays
    ZetaExpr m = ZetaExpr::zeta(2) * ZetaExpr::zeta(3);
    CHECK(m.terms().begin()->first.zeta_args == std::vector<int>{2, 3});
    // float value is preserved by the collapse
    CHECK(std::abs((ZetaExpr::zeta(2) * ZetaExpr::zeta(2)).eval() -
                   zeta_value(2) * zeta_value(2)) < 1e-12);
}

TEST_CASE("eval against brute-force zeta(2)") {
    // independent oracle: partial sums of sum 1/n^2 with integral tail bound
    double s = 0;
    const int N = 2000000;
    for (int n = N; n >= 1; --n) s += 1.0 / (static_cast<double>(n) * n);
    double lo = s + 1.0 / (N + 1), hi = s + 1.0 / N;
    double v = ZetaExpr::zeta(2).eval();
    CHECK(v >= lo - 1e-12);
    CHECK(v <= hi + 1e-12);
    CHECK(v == doctest::Approx(1.6449340668).epsilon(1e-9));
}

TEST_CASE("eval composes known constants") {
    // value from the closed form on P^2; float composition of the constants,
    // -9 pi^2 zeta(2) = -3/2 pi^4
    ZetaExpr v = ZetaExpr(-9) * ZetaExpr::pi_pow(2) * ZetaExpr::zeta(2);
    CHECK(v.eval() == doctest::Approx(-9.0 * M_PI * M_PI * zeta_value(2)).epsilon(1e-12));
    CHECK(v.eval() == doctest::Approx(-1.5 * std::pow(M_PI, 4)).epsilon(1e-12));
    CHECK(ZetaExpr(1).eval() == 1.0);
}

TEST_CASE("gamma degree") {
    CHECK(ZetaExpr::zeta(3).gamma_degree() == 0);
    ZetaExpr e = ZetaExpr::euler_gamma_pow(2) * ZetaExpr::zeta(2) + ZetaExpr::euler_gamma_pow(1);
    CHECK(e.gamma_degree() == 2);
    ZetaExpr p5 = ZetaExpr(37) * ZetaExpr::zeta(5) - ZetaExpr(25) * ZetaExpr::zeta(2) * ZetaExpr::zeta(3);
    CHECK(p5.gamma_degree() == 0);
    CHECK_THROWS_AS(ZetaExpr(0).gamma_degree(), std::domain_error);
}

TEST_CASE("ring axioms on random expressions") {
    std::mt19937_64 rng(20240811);
    for (int iter = 0; iter < 1000; ++iter) {
        ZetaExpr a = random_expr(rng), b = random_expr(rng), c = random_expr(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("eval is a ring homomorphism up to float tolerance") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        ZetaExpr a = random_expr(rng), b = random_expr(rng);
        double lhs = (a * b).eval(), rhs = a.eval() * b.eval();
        CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
        CHECK(std::abs((a + b).eval() - (a.eval() + b.eval())) < 1e-10 * (1.0 + std::abs(a.eval() + b.eval())));
    }
}

TEST_CASE("canonicalization is idempotent through serialization") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 100; ++iter) {
        ZetaExpr a  = random_expr(rng);
        ZetaExpr a2 = ZetaExpr::from_json_string(a.to_json_string());
        CHECK(a == a2);
        CHECK(a.str() == a2.str());
    }
}

TEST_CASE("canonical strings") {
    ZetaExpr v = ZetaExpr(-9) * ZetaExpr::pi_pow(2) * ZetaExpr::zeta(2);
    CHECK(v.str() == "-9*pi^2*zeta(2)");
    CHECK(ZetaExpr(0).str() == "0");
    CHECK((ZetaExpr(Rational(3, 2)) * ZetaExpr::euler_gamma_pow(1)).str() == "3/2*gamma");
}

TEST_CASE("json round trip matches spec schema") {
    ZetaExpr v  = ZetaExpr(Rational(-1, 3)) * ZetaExpr::zeta(2) * ZetaExpr::zeta(3) +
                  ZetaExpr::euler_gamma_pow(2) * ZetaExpr::pi_pow(1);
    std::string s = v.to_json_string();
    CHECK(s.find("\"coef\"") != std::string::npos);
    CHECK(s.find("\"zeta\"") != std::string::npos);
    CHECK(ZetaExpr::from_json_string(s) == v);
}
