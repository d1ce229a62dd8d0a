#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ectk/elliptic.hpp"

using namespace ectk;

namespace {

using QCurve = EllipticCurve<Rational>;
using QPoint = CurvePoint<Rational>;

QCurve C(long a1, long a2, long a3, long a4, long a6) {
    return QCurve(Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6));
}

} // namespace

TEST_CASE("curve construction and invariants", "[ec]") {
    QCurve e = C(0, 0, 0, 0, 1); // y^2 = x^3 + 1
    CHECK(e.discriminant() == Rational(-432));
    CHECK(e.j_invariant() == Rational(0));
    // oracle: disc of y^2 = x^3 + Ax + B is -16(4A^3 + 27B^2)
    CHECK(e.discriminant() == Rational(-16 * 27));

    // 1728 disc = c4^3 - c6^2 and j = c4^3/disc, exactly
    QCurve f = C(1, -1, 1, -5, 5);
    CHECK(Rational(1728) * f.discriminant() ==
          f.c4() * f.c4() * f.c4() - f.c6() * f.c6());
    CHECK(f.j_invariant() * f.discriminant() == f.c4() * f.c4() * f.c4());

    CHECK_THROWS_AS(C(0, 0, 0, 0, 0), error); // singular
    CHECK_THROWS_AS(C(0, 0, 0, -3, 2), error); // disc = 0

    // Tate form at t = 1: y^2 - y = x^3 - x^2 is nonsingular
    QCurve tate = C(0, -1, -1, 0, 0);
    CHECK(tate.discriminant() == Rational(-11));
}

TEST_CASE("curve literal parsing", "[ec][io]") {
    QCurve e = parse_curve_literal("[0,0,0,-10395,444150]");
    CHECK(e.a4() == Rational(-10395));
    CHECK(curve_literal(e) == "[0,0,0,-10395,444150]");
    QCurve sugar = parse_curve_literal("[0,1]");
    CHECK(sugar.a6() == Rational(1));
    CHECK(sugar.a4().is_zero());
    QCurve frac = parse_curve_literal("[1/2, 0, 0, -1, 3]");
    CHECK(frac.a1() == Rational::parse("1/2"));
    CHECK_THROWS_AS(parse_curve_literal("[1,2,3]"), parse_error);
    CHECK_THROWS_AS(parse_curve_literal("(1,2)"), parse_error);
    CHECK_THROWS_AS(parse_curve_literal("[1,2"), parse_error);
    CHECK_THROWS_AS(parse_curve_literal("[0,0,0,0,0]"), error); // singular
}

TEST_CASE("group law on y^2 = x^3 + 1", "[ec]") {
    QCurve e = C(0, 0, 0, 0, 1);
    QPoint p(e, Rational(2), Rational(3));
    QPoint inf = QPoint::infinity(e);

    CHECK(add(p, inf) == p);
    CHECK(add(inf, p) == p);
    // doubling: lambda = 12/6 = 2, x3 = 0, y3 = 1
    QPoint twop = add(p, p);
    CHECK(twop == QPoint(e, Rational(0), Rational(1)));
    // 2-torsion: (-1, 0) + (-1, 0) = infinity
    QPoint t2(e, Rational(-1), Rational(0));
    CHECK(add(t2, t2).is_infinity());
    // (2,3) has order 6
    CHECK(scalar_mul(6, p).is_infinity());
    CHECK_FALSE(scalar_mul(3, p).is_infinity());
    CHECK(scalar_mul(0, p).is_infinity());
    CHECK(scalar_mul(-1, p) == negate_point(p));
    CHECK(point_order(p, 10) == 6);
    CHECK(point_order(inf, 10) == 1);
    CHECK_FALSE(point_order(p, 5).has_value());

    CHECK_THROWS_AS(QPoint(e, Rational(1), Rational(1)), error); // not on curve
}

TEST_CASE("order-5 point on the Tate curve", "[ec]") {
    QCurve e = C(0, -1, -1, 0, 0); // y^2 - y = x^3 - x^2
    QPoint p(e, Rational(0), Rational(0));
    CHECK(scalar_mul(5, p).is_infinity());
    CHECK(point_order(p, 30) == 5);
}

TEST_CASE("group law axioms over F_p and over fields", "[ec][property]") {
    SplitMix64 rng(101);
    // 500 random triples over F_p
    for (int trial = 0; trial < 10; ++trial) {
        uint64_t p = (trial % 2) ? 101 : 97;
        Fp zero(0, p);
        EllipticCurve<Fp> e = [&] {
            for (;;) {
                try {
                    return EllipticCurve<Fp>(zero.from_int(static_cast<long>(rng.below(p))),
                                             zero.from_int(static_cast<long>(rng.below(p))),
                                             zero.from_int(static_cast<long>(rng.below(p))),
                                             zero.from_int(static_cast<long>(rng.below(p))),
                                             zero.from_int(static_cast<long>(rng.below(p))));
                } catch (const error&) {
                }
            }
        }();
        // collect points by brute force
        std::vector<CurvePoint<Fp>> pts;
        pts.push_back(CurvePoint<Fp>::infinity(e));
        for (uint64_t x = 0; x < p && pts.size() < 400; ++x)
            for (uint64_t y = 0; y < p; ++y)
                if (e.equation(Fp(x, p), Fp(y, p)).is_zero())
                    pts.emplace_back(e, Fp(x, p), Fp(y, p));
        for (int i = 0; i < 50; ++i) {
            auto& a = pts[rng.below(pts.size())];
            auto& b = pts[rng.below(pts.size())];
            auto& c = pts[rng.below(pts.size())];
            CHECK(add(add(a, b), c) == add(a, add(b, c)));
            CHECK(add(a, b) == add(b, a));
            CHECK(add(a, negate_point(a)).is_infinity());
        }
    }
    // and a few over a cubic field
    NumberField K(poly_parse("t^3-3*t^2+3"));
    auto ek = embed_curve(C(0, 0, 0, 0, 1), K);
    CurvePoint<FieldElement> g(ek, K.embed(Rational(2)), K.embed(Rational(3)));
    CurvePoint<FieldElement> h = add(g, g);
    CHECK(add(add(g, g), h) == add(g, add(g, h)));
    CHECK(scalar_mul(6, g).is_infinity());
}

TEST_CASE("short model and point round-trips", "[ec]") {
    QCurve e = C(0, 0, 0, 0, 1);
    auto chg = short_model(e);
    CHECK(chg.target.a4() == Rational(-27) * e.c4());
    CHECK(chg.target.a6() == Rational(-54) * e.c6());
    CHECK(chg.target.j_invariant() == e.j_invariant());

    // Tate curve: same j, disc scaled by a 12th power
    QCurve tate = C(0, -1, -1, 0, 0);
    auto chg2 = short_model(tate);
    CHECK(chg2.target.is_short());
    CHECK(chg2.target.j_invariant() == tate.j_invariant());
    Rational ratio = chg2.target.discriminant() / tate.discriminant();
    CHECK(ratio == rational_pow(Rational(6), 12));
    QPoint p(tate, Rational(0), Rational(0));
    CHECK(chg2.backward(chg2.forward(p)) == p);
    CHECK(scalar_mul(5, chg2.forward(p)).is_infinity());

    // round-trips over F_101 on 100 points
    uint64_t prime = 101;
    Fp z(0, prime);
    EllipticCurve<Fp> ep(z.from_int(1), z.from_int(2), z.from_int(3), z.from_int(4),
                         z.from_int(7));
    auto chp = short_model(ep);
    int checked = 0;
    for (uint64_t x = 0; x < prime && checked < 100; ++x)
        for (uint64_t y = 0; y < prime && checked < 100; ++y)
            if (ep.equation(Fp(x, prime), Fp(y, prime)).is_zero()) {
                CurvePoint<Fp> q(ep, Fp(x, prime), Fp(y, prime));
                CHECK(chp.backward(chp.forward(q)) == q);
                ++checked;
            }
    CHECK(checked >= 80); // Hasse: at least p + 1 - 2 sqrt(p) - 1 affine points
}

TEST_CASE("quadratic twists", "[ec]") {
    QCurve e = C(0, 0, 0, 0, 1);
    CHECK(quadratic_twist(e, Rational(1)).same_curve(e));
    QCurve tw = quadratic_twist(e, Rational(-3));
    CHECK(tw.a6() == Rational(-27));
    CHECK(tw.a4().is_zero());
    CHECK_THROWS_AS(quadratic_twist(e, Rational(0)), error);

    SplitMix64 rng(7777);
    int done = 0;
    while (done < 50) {
        long a = static_cast<long>(rng.below(9)) - 4;
        long b = static_cast<long>(rng.below(9)) - 4;
        long d = static_cast<long>(rng.below(17)) - 8;
        if (d == 0) d = 5;
        QCurve base = [&]() -> QCurve {
            try {
                return C(1, 0, 1, a, b);
            } catch (const error&) {
                return C(0, 0, 0, 0, 1);
            }
        }();
        QCurve t1 = quadratic_twist(base, Rational(d));
        CHECK(t1.j_invariant() == base.j_invariant());
        // twist involution: twisting again by d gives an isomorphic curve
        QCurve t2 = quadratic_twist(t1, Rational(d));
        CHECK(t2.j_invariant() == base.j_invariant());
        Rational scale = t2.discriminant() / short_model(base).target.discriminant();
        Rational root;
        CHECK(rational_is_square(scale, &root));
        ++done;
    }
}

TEST_CASE("reduction mod p", "[ec]") {
    QCurve e = C(0, 0, 0, 0, 1);
    auto e5 = reduce_mod(e, 5);
    CHECK(count_points(e5) == 6);
    CHECK_THROWS_AS(reduce_mod(e, 3), error); // 3 | 432: bad reduction

    // non-integral coefficients at p
    QCurve frac(Rational(), Rational(), Rational(), Rational::parse("1/5"), Rational(1));
    CHECK_THROWS_AS(reduce_mod(frac, 5), error);
    auto ok = reduce_mod(frac, 7);
    CHECK(count_points(ok) > 0);
}

TEST_CASE("count_points", "[ec]") {
    // y^2 = x^3 + x over F_3 (exhaustive oracle gives 4)
    Fp z3(0, 3);
    EllipticCurve<Fp> e3(z3, z3, z3, z3.from_int(1), z3);
    CHECK(count_points(e3) == 4);
    long brute = 1;
    for (uint64_t x = 0; x < 3; ++x)
        for (uint64_t y = 0; y < 3; ++y)
            if (e3.equation(Fp(x, 3), Fp(y, 3)).is_zero()) ++brute;
    CHECK(brute == 4);

    // y^2 = x^3 + 1 over F_5 has 6 points
    Fp z5(0, 5);
    CHECK(count_points(EllipticCurve<Fp>(z5, z5, z5, z5, z5.from_int(1))) == 6);

    // Hasse bound and subgroup-order divisibility for several p <= 101
    SplitMix64 rng(31415);
    for (unsigned long p : {5UL, 7UL, 11UL, 13UL, 17UL, 41UL, 97UL, 101UL}) {
        EllipticCurve<Fp> e = [&] {
            for (;;) {
                try {
                    Fp z(0, p);
                    return EllipticCurve<Fp>(z.from_int(static_cast<long>(rng.below(p))),
                                             z.from_int(static_cast<long>(rng.below(p))),
                                             z.from_int(static_cast<long>(rng.below(p))),
                                             z.from_int(static_cast<long>(rng.below(p))),
                                             z.from_int(static_cast<long>(rng.below(p))));
                } catch (const error&) {
                }
            }
        }();
        long n = count_points(e);
        double hasse = 2.0 * std::sqrt(static_cast<double>(p));
        CHECK(std::abs(static_cast<double>(n - static_cast<long>(p) - 1)) <= hasse + 1e-9);
        // order of some affine point divides #E
        bool done = false;
        for (uint64_t x = 0; x < p && !done; ++x)
            for (uint64_t y = 0; y < p && !done; ++y)
                if (e.equation(Fp(x, p), Fp(y, p)).is_zero()) {
                    auto ord = point_order(CurvePoint<Fp>(e, Fp(x, p), Fp(y, p)), 3 * static_cast<long>(p));
                    REQUIRE(ord.has_value());
                    CHECK(n % *ord == 0);
                    done = true;
                }
    }
}
