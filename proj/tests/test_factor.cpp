#include <catch2/catch_amalgamated.hpp>

#include "ectk/factor.hpp"
#include "ectk/poly_io.hpp"

using namespace ectk;

namespace {
QPoly P(const std::string& s) { return poly_parse(s); }

QPoly random_zpoly(SplitMix64& rng, int maxdeg, long coeff_range) {
    int deg = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(maxdeg)));
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i)
        c.push_back(Rational(static_cast<long>(rng.below(2 * coeff_range + 1)) - coeff_range));
    QPoly f{std::move(c)};
    return f.is_zero() ? P("x") : f;
}
} // namespace

TEST_CASE("poly_gcd over Q", "[factor][gcd]") {
    CHECK(poly_gcd(P("x^2-1"), P("x-1")) == P("x-1"));
    CHECK(poly_gcd(P("x^2+1"), P("x-1")) == P("1"));
    CHECK(poly_gcd(QPoly(), QPoly()).is_zero());
    CHECK(poly_gcd(P("2*x^2-2"), P("4*x+4")) == P("x+1"));
    // gcd output divides both inputs; squarefreeness detection via gcd(f, f')
    SplitMix64 rng(7);
    for (int i = 0; i < 25; ++i) {
        QPoly a = random_zpoly(rng, 6, 8), b = random_zpoly(rng, 6, 8);
        QPoly g = poly_gcd(a, b);
        if (!g.is_zero()) {
            CHECK(divides(g, a));
            CHECK(divides(g, b));
        }
        QPoly sq = a * a * b;
        CHECK(poly_gcd(sq, sq.derivative()).degree() >= a.degree());
    }
}

TEST_CASE("divides", "[factor]") {
    CHECK(divides(P("x-1"), P("x^2-1")));
    CHECK_FALSE(divides(P("x+1"), P("x^2+1")));
    CHECK(divides(P("x+1"), QPoly()));
    CHECK_THROWS_AS(divides(QPoly(), P("x")), error);
    CHECK(divides(P("2*x-2"), P("x^2-1")));
}

TEST_CASE("factor_over_q on the cyclotomic split x^4-1", "[factor]") {
    auto fac = factor_over_q(P("x^4-1"));
    REQUIRE(fac.factors.size() == 3);
    CHECK(fac.unit == Rational(1));
    CHECK(fac.factors[0].first == P("x-1"));
    CHECK(fac.factors[1].first == P("x+1"));
    CHECK(fac.factors[2].first == P("x^2+1"));
    CHECK(fac.expand() == P("x^4-1"));
}

TEST_CASE("factor_over_q of 3x^4+12x (psi_3 of y^2=x^3+1)", "[factor]") {
    auto fac = factor_over_q(P("3*x^4+12*x"));
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.unit == Rational(3));
    CHECK(fac.factors[0].first == P("x"));
    CHECK(fac.factors[1].first == P("x^3+4"));
    CHECK(fac.expand() == P("3*x^4+12*x"));
}

TEST_CASE("factorization invariants on random products", "[factor][property]") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        QPoly f = random_zpoly(rng, 4, 6) * random_zpoly(rng, 4, 6);
        if (trial % 3 == 0) f = f * random_zpoly(rng, 3, 4);
        auto fac = factor_over_q(f);
        CHECK(fac.expand() == f);
        for (auto& [g, mult] : fac.factors) {
            (void)mult;
            CHECK(g.is_monic());
            // irreducible factors are squarefree
            CHECK(poly_gcd(g, g.derivative()).degree() == 0);
            // degree pattern consistent with factorizations mod 3 good primes
            Integer p = 2;
            int checked = 0;
            while (checked < 3) {
                p = next_prime(p);
                ZPoly gz = qpoly_to_primitive(g).second;
                if (gz.lead() % p == 0) continue;
                FpPoly gp = zpoly_mod_p(gz, p.get_ui());
                if (poly_gcd_euclid(gp, gp.derivative()).degree() != 0) continue;
                auto mf = factor_mod_p(gp);
                int total = 0;
                for (auto& [h, m] : mf.factors) total += h.degree() * m;
                CHECK(total == g.degree());
                ++checked;
            }
        }
    }
}

TEST_CASE("multiplicities from squarefree decomposition", "[factor]") {
    QPoly f = P("x-2") * P("x-2") * P("x-2") * P("x^2+3");
    auto fac = factor_over_q(f * Rational(5));
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.unit == Rational(5));
    CHECK(fac.factors[0].first == P("x-2"));
    CHECK(fac.factors[0].second == 3);
    CHECK(fac.factors[1].first == P("x^2+3"));
    CHECK(fac.expand() == f * Rational(5));
}

TEST_CASE("rational_roots", "[factor]") {
    auto r1 = rational_roots(P("x^2-1"));
    CHECK(r1 == std::set<Rational>{Rational(1), Rational(-1)});
    CHECK(rational_roots(P("x^2+1")).empty());
    auto r3 = rational_roots(P("6*x^3+x^2-5*x-2")); // roots 1, -1/2, -2/3
    CHECK(r3 == std::set<Rational>{Rational(1), Rational::parse("-1/2"),
                                   Rational::parse("-2/3")});

    // oracle: exhaustive candidate search over divisors of the leading and
    // trailing coefficients, degree <= 10 inputs
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 15; ++trial) {
        QPoly f = random_zpoly(rng, 5, 5) * random_zpoly(rng, 4, 5);
        if (f.degree() > 10 || f.is_zero()) continue;
        ZPoly F = qpoly_to_primitive(f).second;
        while (sgn(F[0]) == 0) F = poly_divexact_monic(F, ZPoly({Integer(0), Integer(1)}));
        std::set<Rational> expected;
        if (f.evaluate(Rational()).is_zero()) expected.insert(Rational());
        Integer a0 = F[0] >= 0 ? Integer(F[0]) : Integer(-F[0]);
        Integer an = F.lead() >= 0 ? Integer(F.lead()) : Integer(-F.lead());
        for (Integer u = 1; u <= a0; ++u) {
            if (a0 % u != 0) continue;
            for (Integer v = 1; v <= an; ++v) {
                if (an % v != 0) continue;
                for (int s : {1, -1}) {
                    Rational cand(s * u, v);
                    if (f.evaluate(cand).is_zero()) expected.insert(cand);
                }
            }
        }
        CHECK(rational_roots(f) == expected);
    }
}

TEST_CASE("small_factors finds exactly the low-degree factors", "[factor]") {
    QPoly f = P("x-3") * P("x^2-2") * P("x^3-7") * P("x^3-7");
    auto small = small_factors(f, 2);
    REQUIRE(small.size() == 2);
    CHECK(small[0].first == P("x-3"));
    CHECK(small[0].second == 1);
    CHECK(small[1].first == P("x^2-2"));
    for (auto& [g, mult] : small_factors(f, 3)) {
        if (g == P("x^3-7")) CHECK(mult == 2);
    }
    CHECK(small_factors(f, 3).size() == 3);
}

TEST_CASE("errors on zero input", "[factor]") {
    CHECK_THROWS_AS(factor_over_q(QPoly()), error);
    CHECK_THROWS_AS(rational_roots(QPoly()), error);
}
