#include <catch2/catch_amalgamated.hpp>

#include "ectk/fp_factor.hpp"

using namespace ectk;

namespace {

FpPoly make(std::initializer_list<long> coeffs, uint64_t p) {
    std::vector<Fp> c;
    for (long v : coeffs) c.push_back(Fp(0, p).from_int(v));
    return FpPoly(std::move(c));
}

FpPoly expand(const FpFactorization& f) {
    FpPoly acc = FpPoly::constant(f.unit);
    for (auto& [fac, mult] : f.factors)
        for (int i = 0; i < mult; ++i) acc = acc * fac;
    return acc;
}

} // namespace

TEST_CASE("Fp arithmetic basics", "[fp]") {
    Fp a(3, 13), b(11, 13);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 5);
    CHECK((a * b).value() == 33 % 13);
    CHECK((a / b) * b == a);
    CHECK(a.pow(12).value() == 1);
    CHECK_THROWS_AS(Fp(0, 13).inverse(), error);
    CHECK(Fp(4, 13).legendre() == 1);
    CHECK(Fp(2, 13).legendre() == -1);
    Fp r = Fp(10, 13).sqrt();
    CHECK(r * r == Fp(10, 13));
    Fp r2 = Fp(2, 41).sqrt(); // p = 1 mod 8 exercises Tonelli-Shanks
    CHECK(r2 * r2 == Fp(2, 41));
}

TEST_CASE("x^2+1 splits mod 5 and stays irreducible mod 7", "[fp][factor]") {
    auto f5 = factor_mod_p(make({1, 0, 1}, 5));
    REQUIRE(f5.factors.size() == 2);
    CHECK(f5.factors[0].first == make({2, 1}, 5));
    CHECK(f5.factors[1].first == make({3, 1}, 5));

    auto f7 = factor_mod_p(make({1, 0, 1}, 7));
    REQUIRE(f7.factors.size() == 1);
    CHECK(f7.factors[0].first.degree() == 2);
    CHECK(f7.factors[0].second == 1);
}

TEST_CASE("x^3-3x+1 splits into three linear factors mod 17", "[fp][factor]") {
    FpPoly f = make({1, -3, 0, 1}, 17);
    // oracle: exhaustive root search
    std::vector<uint64_t> expected;
    for (uint64_t r = 0; r < 17; ++r)
        if (f.evaluate(Fp(r, 17)).is_zero()) expected.push_back(r);
    REQUIRE(expected.size() == 3);

    auto fac = factor_mod_p(f);
    REQUIRE(fac.factors.size() == 3);
    for (auto& [g, mult] : fac.factors) {
        CHECK(g.degree() == 1);
        CHECK(mult == 1);
    }
    auto roots = roots_mod_p(f);
    REQUIRE(roots.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(roots[i].value() == expected[i]);
}

TEST_CASE("factorizations re-expand to the input", "[fp][factor]") {
    SplitMix64 rng(12345);
    for (int trial = 0; trial < 40; ++trial) {
        uint64_t p = (trial % 2) ? 13 : 101;
        std::vector<Fp> c;
        int deg = 1 + static_cast<int>(rng.below(9));
        for (int i = 0; i <= deg; ++i) c.emplace_back(rng.below(p), p);
        FpPoly f(std::move(c));
        if (f.degree() < 1) continue;
        auto fac = factor_mod_p(f);
        CHECK(expand(fac) == f);
        for (auto& [g, mult] : fac.factors) {
            (void)mult;
            CHECK(g.is_monic());
        }
    }
}

TEST_CASE("repeated and p-th power factors are handled", "[fp][factor]") {
    // (x+1)^2 (x^2+1) mod 5, and x^5 - x = x(x-1)(x-2)(x-3)(x-4) mod 5
    FpPoly f = make({1, 1}, 5) * make({1, 1}, 5) * make({1, 0, 1}, 5);
    auto fac = factor_mod_p(f);
    CHECK(expand(fac) == f);
    bool saw_mult2 = false;
    for (auto& [g, mult] : fac.factors)
        if (g == make({1, 1}, 5) && mult == 2) saw_mult2 = true;
    CHECK(saw_mult2);

    FpPoly g = make({0, 4, 0, 0, 0, 1}, 5); // x^5 + 4x = x^5 - x
    auto fac2 = factor_mod_p(g);
    CHECK(fac2.factors.size() == 5);
    CHECK(expand(fac2) == g);

    // derivative-zero branch: (x^2+x+1)^5 mod 5
    FpPoly h = FpPoly::constant(Fp(1, 5));
    for (int i = 0; i < 5; ++i) h = h * make({1, 1, 1}, 5);
    auto fac3 = factor_mod_p(h);
    REQUIRE(fac3.factors.size() == 1);
    CHECK(fac3.factors[0].second == 5);
    CHECK(expand(fac3) == h);
}

TEST_CASE("equal-degree splitting is deterministic", "[fp][factor]") {
    FpPoly f = make({2, 0, 0, 0, 0, 0, 1}, 31); // x^6 + 2
    auto a = factor_mod_p(f);
    auto b = factor_mod_p(f);
    REQUIRE(a.factors.size() == b.factors.size());
    for (std::size_t i = 0; i < a.factors.size(); ++i)
        CHECK(a.factors[i].first == b.factors[i].first);
}
