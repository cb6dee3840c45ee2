#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fp/expansion.hpp>
#include <fp/gamma.hpp>

#include <algorithm>
#include <set>

using namespace fp;

TEST_CASE("raw term counts") {
    auto t1 = generate_terms(1);
    CHECK(t1.size() == 5);  // |J|=1: 2 subsets x (l'=0:{(0)}, l'=1:{(-1)}) + |J|=0: 1
    auto t2 = generate_terms(2);
    CHECK(t2.size() == 25);  // |J|=2: 3 x 6; |J|=1: 3 x 2; |J|=0: 1
    for (const auto& t : t2) CHECK(t.composition_ok());

    // l'=2 terms on P^2 have composition (-1,-1) only
    for (const auto& t : t2)
        if (t.log_power == 2) CHECK(t.composition == std::vector<int>{-1, -1});
}

TEST_CASE("composition constraint holds for every generated term") {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& t : generate_terms(n)) {
            int sum = 0;
            for (int l : t.composition) {
                CHECK(l >= -1);
                sum += l;
            }
            CHECK(sum == -t.log_power);
            CHECK(t.fs_power + static_cast<int>(t.subset.size()) == n);
        }
    }
}

TEST_CASE("symmetry reduction on P^2 gives the seven published classes") {
    auto classes = symmetry_reduce(generate_terms(2));
    REQUIRE(classes.size() == 7);
    std::multiset<Rational> mults;
    for (const auto& c : classes) mults.insert(c.multiplicity);
    std::multiset<Rational> expect{Rational(3), Rational(6), Rational(6), Rational(3, 2),
                                   Rational(6), Rational(6), Rational(3)};
    CHECK(mults == expect);
}

TEST_CASE("symmetry reduction on P^1 gives three classes") {
    auto classes = symmetry_reduce(generate_terms(1));
    CHECK(classes.size() == 3);
}

TEST_CASE("multiplicity-weighted count is conserved") {
    for (int n = 1; n <= 4; ++n) {
        auto raw = generate_terms(n);
        auto red = symmetry_reduce(raw);
        Rational raw_total = 0, red_total = 0;
        for (const auto& t : raw) raw_total += t.multiplicity;
        for (const auto& t : red) red_total += t.multiplicity;
        CHECK(raw_total == red_total);
    }
}

static Term find_class(int n, int fs, std::vector<int> comp_sorted_desc) {
    for (const auto& c : symmetry_reduce(generate_terms(n)))
        if (c.fs_power == fs && c.composition == comp_sorted_desc) return c;
    throw std::runtime_error("class not found");
}

TEST_CASE("worked term on P^2 reduces to two integrable pieces over {Z_2=0}") {
    // <log||Z_0||^2 mu_0(omega_1) ^ mu_{-1}(omega_2), 1>
    Term cls = find_class(2, 0, {0, -1});
    auto rts = reduce_term(cls);
    REQUIRE(rts.size() == 2);
    for (const auto& rt : rts) {
        CHECK(rt.restricted == std::vector<int>{2});
        CHECK(rt.ambient_dim() == 1);
    }
    // one dbar^d-type 2-form piece and one log*log*omega_FS piece
    bool saw_pair = false, saw_fs = false;
    for (const auto& rt : rts) {
        if (rt.fs_power == 1) {
            saw_fs = true;
            CHECK(rt.dbar_marks.empty());
            CHECK(rt.log_pow == std::map<int, int>{{0, 1}, {1, 1}});
        } else {
            saw_pair = true;
            CHECK(rt.dbar_marks.size() == 1);
            CHECK(rt.del_marks.size() == 1);
        }
    }
    CHECK(saw_pair);
    CHECK(saw_fs);
}

TEST_CASE("point-supported class evaluates through log(1)=0 structure") {
    // composition (-1,-1) with l'=2 on P^2 restricts to [1:0:0]
    Term cls = find_class(2, 0, {-1, -1});
    auto rts = reduce_term(cls);
    REQUIRE(rts.size() == 1);
    CHECK(rts[0].restricted == std::vector<int>{1, 2});
    CHECK(rts[0].ambient_dim() == 0);
    CHECK(rts[0].log_pow == std::map<int, int>{{0, 2}});
    CHECK(rts[0].coef == Rational(3, 2));
    CHECK(rts[0].pi_pow == 2);
}

TEST_CASE("pure volume class keeps a single omega^n integral") {
    Term cls = find_class(2, 2, {});
    auto rts = reduce_term(cls);
    REQUIRE(rts.size() == 1);
    CHECK(rts[0].restricted.empty());
    CHECK(rts[0].fs_power == 2);
    CHECK(rts[0].log_pow.empty());
    CHECK(rts[0].dbar_marks.empty());
}

TEST_CASE("every class for n<=3 reduces without collisions; degrees balance") {
    for (int n = 1; n <= 3; ++n) {
        for (const auto& cls : symmetry_reduce(generate_terms(n))) {
            auto rts = reduce_term(cls);
            for (const auto& rt : rts) {
                CHECK(rt.dbar_marks.size() == rt.del_marks.size());
                CHECK(rt.fs_power + static_cast<int>(rt.del_marks.size()) == rt.ambient_dim());
                CHECK((rt.i_pow - static_cast<int>(rt.del_marks.size())) % 2 == 0);
            }
        }
    }
}

TEST_CASE("leading coefficient equals pi^n (n+1) and matches the gamma route") {
    CHECK(leading_coefficient(1) == ZetaExpr(2) * ZetaExpr::pi_pow(1));
    CHECK(leading_coefficient(2) == ZetaExpr(3) * ZetaExpr::pi_pow(2));
    CHECK(leading_coefficient(3) == ZetaExpr(4) * ZetaExpr::pi_pow(3));
    for (int n = 1; n <= 5; ++n)
        CHECK(leading_coefficient(n) == closed_form_fp(n).leading);
}
