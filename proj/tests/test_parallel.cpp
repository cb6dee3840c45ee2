#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fp/pipeline.hpp>

#include <cmath>

using namespace fp;

// The OpenMP kernels only fill node-value buffers; the reduction is always
// the serial pairwise sum, so parallel and serial runs must agree bitwise.

TEST_CASE("pairwise summation is order-stable") {
    std::vector<double> v(1001);
    for (size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.1 * static_cast<double>(i)) / (i + 1.0);
    double a = pairwise_sum(v.data(), v.size());
    double b = pairwise_sum(v.data(), v.size());
    CHECK(a == b);
}

TEST_CASE("fill_values parallel equals serial") {
    std::vector<double> a(10000), b(10000);
    auto f = [](size_t i) { return std::cos(static_cast<double>(i)) / (1.0 + i); };
    fill_values(a.size(), true, f, a.data());
    fill_values(b.size(), false, f, b.data());
    CHECK(a == b);
}

TEST_CASE("pipeline totals are bit-identical across thread modes") {
    QuadratureSpec par, ser;
    par.parallel = true;
    ser.parallel = false;
    for (int n = 1; n <= 2; ++n) {
        auto rp = finite_part(n, Route::pipeline, par);
        auto rs = finite_part(n, Route::pipeline, ser);
        CHECK(rp.float_value == rs.float_value);
        REQUIRE(rp.per_term.size() == rs.per_term.size());
        for (size_t i = 0; i < rp.per_term.size(); ++i)
            CHECK(rp.per_term[i].value == rs.per_term[i].value);
    }
}

TEST_CASE("seeded 3-D sampling is reproducible and thread-independent") {
    QuadratureSpec par, ser;
    par.parallel = true;
    ser.parallel = false;
    par.points_3d = ser.points_3d = 1 << 13;
    auto a = sample_zeta(3, 1.0, par);
    auto b = sample_zeta(3, 1.0, ser);
    auto c = sample_zeta(3, 1.0, par);
    CHECK(a.value == b.value);
    CHECK(a.value == c.value);
    QuadratureSpec other = par;
    other.seed = 7;
    CHECK(sample_zeta(3, 1.0, other).value != a.value);  // the shift moved
}
