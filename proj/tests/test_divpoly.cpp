#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ectk/divpoly.hpp"
#include "ectk/poly_io.hpp"

using namespace ectk;

namespace {

using QCurve = EllipticCurve<Rational>;

QCurve shortw(long A, long B) {
    return QCurve(Rational(), Rational(), Rational(), Rational(A), Rational(B));
}

// x-coordinates of the nonzero points killed by n on E(F_p), by brute force
std::set<uint64_t> torsion_x_brute(const EllipticCurve<Fp>& e, long n) {
    uint64_t p = e.a1().modulus();
    std::set<uint64_t> xs;
    for (uint64_t x = 0; x < p; ++x)
        for (uint64_t y = 0; y < p; ++y)
            if (e.equation(Fp(x, p), Fp(y, p)).is_zero())
                if (scalar_mul(n, CurvePoint<Fp>(e, Fp(x, p), Fp(y, p))).is_infinity())
                    xs.insert(x);
    return xs;
}

// psi_n sees n-torsion over the algebraic closure: an x in F_p whose y lives
// in F_{p^2} belongs to a point of the quadratic twist. The full oracle scans
// the short curve and one non-square twist, mapping twist x-coords back.
std::set<uint64_t> torsion_x_brute_closure(const EllipticCurve<Fp>& e, long n) {
    uint64_t p = e.a1().modulus();
    std::set<uint64_t> xs = torsion_x_brute(e, n);
    Fp d(0, p);
    for (uint64_t v = 2; v < p; ++v)
        if (Fp(v, p).legendre() == -1) {
            d = Fp(v, p);
            break;
        }
    if (d.is_zero()) return xs;
    auto tw = quadratic_twist(e, d);
    Fp dinv = d.inverse();
    for (uint64_t x : torsion_x_brute(tw, n)) xs.insert((Fp(x, p) * dinv).value());
    return xs;
}

} // namespace

TEST_CASE("psi_3 matches the textbook quartic", "[divpoly]") {
    for (auto [A, B] : std::vector<std::pair<long, long>>{{0, 1}, {-1, 3}, {2, -7}}) {
        QCurve e = shortw(A, B);
        auto d = psi(e, 3);
        // oracle: 3x^4 + 6Ax^2 + 12Bx - A^2 assembled independently
        QPoly expected{Rational(-A * A), Rational(12 * B), Rational(6 * A), Rational(0),
                       Rational(3)};
        CHECK(d.poly == expected);
    }
    CHECK(psi(shortw(0, 1), 3).poly == poly_parse("3*x^4+12*x"));
}

TEST_CASE("degree and leading coefficient invariants", "[divpoly]") {
    QCurve e = shortw(-2, 3);
    for (long n = 3; n <= 37; n += 2) {
        auto d = psi(e, n);
        CHECK(d.poly.degree() == (n * n - 1) / 2);
        CHECK(d.poly.lead() == Rational(n));
    }
    CHECK(psi(e, 21).poly.degree() == 220);
    CHECK(psi(e, 37).poly.degree() == 684);
    CHECK_THROWS_AS(psi(e, 4), error);
    CHECK_THROWS_AS(psi(e, 39), error);
    CHECK_THROWS_AS(psi(e, 1), error);
    CHECK_THROWS_AS(psi(QCurve(Rational(1), Rational(), Rational(), Rational(), Rational(1)), 3),
                    error); // long model rejected
}

TEST_CASE("integer and rational paths agree", "[divpoly]") {
    QCurve zint = shortw(-4, 5);
    QCurve zfrac(Rational(), Rational(), Rational(), Rational::parse("-4"),
                 Rational::parse("5"));
    for (long n : {5L, 8L, 9L, 12L}) CHECK(divpoly_t(zint, n) == divpoly_t(zfrac, n));
    QCurve frac(Rational(), Rational(), Rational(), Rational::parse("1/4"), Rational(1));
    CHECK(divpoly_t(frac, 5).degree() == 12);
}

TEST_CASE("psi_5 vanishes exactly on order-5 x-coordinates mod p", "[divpoly]") {
    QCurve e = shortw(0, 1);
    for (uint64_t p : {7u, 11u, 13u}) {
        auto ep = reduce_mod(e, p);
        auto poly5 = qpoly_mod_p(psi(e, 5).poly, p);
        std::set<uint64_t> roots;
        for (auto& r : roots_mod_p(poly5)) roots.insert(r.value());
        std::set<uint64_t> brute = torsion_x_brute_closure(ep, 5);
        CHECK(roots == brute);
        // on this curve every order-5 x already lifts to E(F_p) itself
        CHECK(brute == torsion_x_brute(ep, 5));
    }
}

TEST_CASE("psi roots match brute-forced torsion for several p and n",
          "[divpoly][property]") {
    QCurve e = shortw(-2, 3);
    for (uint64_t p : {5u, 13u, 23u, 41u}) {
        if (e.discriminant().numerator() % Integer(p) == 0) continue;
        auto ep = reduce_mod(e, p);
        for (long n : {3L, 5L, 7L, 9L}) {
            auto poly = qpoly_mod_p(psi(e, n).poly, p);
            std::set<uint64_t> roots;
            for (auto& r : roots_mod_p(poly)) roots.insert(r.value());
            CHECK(roots == torsion_x_brute_closure(ep, n));
        }
    }
}

TEST_CASE("psi_m divides psi_mk", "[divpoly]") {
    QCurve e = shortw(3, -2);
    CHECK(divides(psi(e, 3).poly, psi(e, 9).poly));
    CHECK(divides(psi(e, 3).poly, psi(e, 21).poly));
    CHECK(divides(psi(e, 5).poly, psi(e, 25).poly));
    QCurve f = shortw(0, 1);
    CHECK(divides(psi(f, 3).poly, psi(f, 9).poly));
    CHECK(divides(psi(f, 7).poly, psi(f, 21).poly));
}

TEST_CASE("is_n_torsion_x", "[divpoly]") {
    // order-5 point on the short model of y^2 - y = x^3 - x^2
    QCurve tate(Rational(0), Rational(-1), Rational(-1), Rational(0), Rational(0));
    auto chg = short_model(tate);
    CurvePoint<Rational> p0(tate, Rational(0), Rational(0));
    Rational x0 = chg.forward(p0).x();
    CHECK(is_n_torsion_x(chg.target, 5, x0));

    CHECK_FALSE(is_n_torsion_x(shortw(0, 1), 3, Rational(17)));
    CHECK(is_n_torsion_x(shortw(0, 1), 3, Rational(0)));
}

TEST_CASE("certify_order", "[divpoly]") {
    QCurve e = shortw(0, 1);
    CurvePoint<Rational> inf = CurvePoint<Rational>::infinity(e);
    CHECK(certify_order(inf, 1));
    CHECK_FALSE(certify_order(inf, 2));
    CurvePoint<Rational> p(e, Rational(2), Rational(3));
    CHECK(certify_order(p, 6));
    CHECK_FALSE(certify_order(p, 3));
    CHECK_FALSE(certify_order(p, 2));
    CHECK_FALSE(certify_order(p, 12));
    CHECK(certify_order(scalar_mul(2, p), 3));
    CHECK_THROWS_AS(certify_order(p, 0), error);
}

TEST_CASE("division polynomials over a number field coefficient ring", "[divpoly]") {
    NumberField K(poly_parse("t^2-5"));
    auto e = embed_curve(shortw(0, 1), K);
    auto d = psi(e, 5);
    CHECK(d.poly.degree() == 12);
    CHECK(d.poly.lead() == K.embed(Rational(5)));
    // matches the rational computation embedded into K
    QPoly over_q = psi(shortw(0, 1), 5).poly;
    for (int i = 0; i <= over_q.degree(); ++i)
        CHECK(d.poly[i] == K.embed(over_q[i]));
}
