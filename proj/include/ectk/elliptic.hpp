#pragma once

#include <memory>
#include <optional>
#include <utility>

#include "ectk/number_field.hpp"

namespace ectk {

// Elliptic curve in long Weierstrass form
//   y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
// over a coefficient field F (Rational, FieldElement or Fp). Value-semantics
// handle; the b-, c-invariants, discriminant and j are cached at construction.
template <class F>
class EllipticCurve {
public:
    EllipticCurve() = default;

    EllipticCurve(F a1, F a2, F a3, F a4, F a6) {
        F b2 = a1 * a1 + a2.from_int(4) * a2;
        F b4 = a4.from_int(2) * a4 + a1 * a3;
        F b6 = a3 * a3 + a6.from_int(4) * a6;
        F b8 = a1 * a1 * a6 + a6.from_int(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 -
               a4 * a4;
        F c4 = b2 * b2 - b4.from_int(24) * b4;
        F c6 = -(b2 * b2 * b2) + b2.from_int(36) * b2 * b4 - b6.from_int(216) * b6;
        F disc = -(b2 * b2 * b8) - b4.from_int(8) * b4 * b4 * b4 -
                 b6.from_int(27) * b6 * b6 + b2.from_int(9) * b2 * b4 * b6;
        if (disc.is_zero()) throw error("EllipticCurve: singular model");
        F j = c4 * c4 * c4 / disc;
        rep_ = std::make_shared<const Rep>(Rep{std::move(a1), std::move(a2), std::move(a3),
                                               std::move(a4), std::move(a6), std::move(b2),
                                               std::move(b4), std::move(b6), std::move(b8),
                                               std::move(c4), std::move(c6), std::move(disc),
                                               std::move(j)});
    }

    bool valid() const { return static_cast<bool>(rep_); }
    const F& a1() const { return rep_->a1; }
    const F& a2() const { return rep_->a2; }
    const F& a3() const { return rep_->a3; }
    const F& a4() const { return rep_->a4; }
    const F& a6() const { return rep_->a6; }
    const F& b2() const { return rep_->b2; }
    const F& b4() const { return rep_->b4; }
    const F& b6() const { return rep_->b6; }
    const F& b8() const { return rep_->b8; }
    const F& c4() const { return rep_->c4; }
    const F& c6() const { return rep_->c6; }
    const F& discriminant() const { return rep_->disc; }
    const F& j_invariant() const { return rep_->j; }

    bool is_short() const {
        return rep_->a1.is_zero() && rep_->a2.is_zero() && rep_->a3.is_zero();
    }

    bool same_curve(const EllipticCurve& o) const {
        if (rep_ == o.rep_) return true;
        return rep_->a1 == o.rep_->a1 && rep_->a2 == o.rep_->a2 && rep_->a3 == o.rep_->a3 &&
               rep_->a4 == o.rep_->a4 && rep_->a6 == o.rep_->a6;
    }

    // y^2 + a1 x y + a3 y - (x^3 + a2 x^2 + a4 x + a6)
    F equation(const F& x, const F& y) const {
        return y * y + rep_->a1 * x * y + rep_->a3 * y -
               (x * x * x + rep_->a2 * x * x + rep_->a4 * x + rep_->a6);
    }

private:
    struct Rep {
        F a1, a2, a3, a4, a6;
        F b2, b4, b6, b8, c4, c6, disc, j;
    };
    std::shared_ptr<const Rep> rep_;
};

template <class F>
class CurvePoint {
public:
    CurvePoint() = default;
    static CurvePoint infinity(const EllipticCurve<F>& e) { return CurvePoint(e); }
    CurvePoint(const EllipticCurve<F>& e, F x, F y) : curve_(e), xy_(std::pair<F, F>{x, y}) {
        if (!e.equation(x, y).is_zero())
            throw error("CurvePoint: point not on curve");
    }

    const EllipticCurve<F>& curve() const { return curve_; }
    bool is_infinity() const { return !xy_.has_value(); }
    const F& x() const { return xy_->first; }
    const F& y() const { return xy_->second; }

    friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
        if (!p.curve_.same_curve(q.curve_)) return false;
        if (p.is_infinity() || q.is_infinity()) return p.is_infinity() == q.is_infinity();
        return p.x() == q.x() && p.y() == q.y();
    }
    friend bool operator!=(const CurvePoint& p, const CurvePoint& q) { return !(p == q); }

private:
    explicit CurvePoint(const EllipticCurve<F>& e) : curve_(e) {}
    EllipticCurve<F> curve_;
    std::optional<std::pair<F, F>> xy_;
};

template <class F>
CurvePoint<F> negate_point(const CurvePoint<F>& p) {
    if (p.is_infinity()) return p;
    const EllipticCurve<F>& e = p.curve();
    return CurvePoint<F>(e, p.x(), -p.y() - e.a1() * p.x() - e.a3());
}

// Chord-tangent addition on the long model; valid in every characteristic.
template <class F>
CurvePoint<F> add(const CurvePoint<F>& p, const CurvePoint<F>& q) {
    if (!p.curve().same_curve(q.curve())) throw error("add: points on different curves");
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    const EllipticCurve<F>& e = p.curve();
    const F &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();
    F lambda = x1.zero(), nu = x1.zero();
    if (x1 == x2) {
        if (q == negate_point(p)) return CurvePoint<F>::infinity(e);
        F den = y1.from_int(2) * y1 + e.a1() * x1 + e.a3();
        lambda = (x1.from_int(3) * x1 * x1 + e.a2().from_int(2) * e.a2() * x1 + e.a4() -
                  e.a1() * y1) /
                 den;
        nu = (-(x1 * x1 * x1) + e.a4() * x1 + e.a6().from_int(2) * e.a6() - e.a3() * y1) / den;
    } else {
        lambda = (y2 - y1) / (x2 - x1);
        nu = y1 - lambda * x1;
    }
    F x3 = lambda * lambda + e.a1() * lambda - e.a2() - x1 - x2;
    F y3 = -(lambda + e.a1()) * x3 - nu - e.a3();
    return CurvePoint<F>(e, x3, y3);
}

template <class F>
CurvePoint<F> scalar_mul(long n, const CurvePoint<F>& p) {
    if (n < 0) return scalar_mul(-n, negate_point(p));
    CurvePoint<F> acc = CurvePoint<F>::infinity(p.curve());
    CurvePoint<F> base = p;
    unsigned long k = static_cast<unsigned long>(n);
    while (k) {
        if (k & 1) acc = add(acc, base);
        k >>= 1;
        if (k) base = add(base, base);
    }
    return acc;
}

// Exact order when it is <= bound, nullopt otherwise.
template <class F>
std::optional<long> point_order(const CurvePoint<F>& p, long bound) {
    if (bound < 1) throw error("point_order: bound must be >= 1");
    CurvePoint<F> acc = p;
    for (long n = 1; n <= bound; ++n) {
        if (acc.is_infinity()) return n;
        acc = add(acc, p);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Coordinate changes (u, r, s, t):  x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t
// ---------------------------------------------------------------------------

template <class F>
struct CoordinateChange {
    EllipticCurve<F> source, target;
    F u, r, s, t;

    CurvePoint<F> forward(const CurvePoint<F>& p) const {
        if (p.is_infinity()) return CurvePoint<F>::infinity(target);
        F u2 = u * u;
        F xs = (p.x() - r) / u2;
        F ys = (p.y() - s * (p.x() - r) - t) / (u2 * u);
        return CurvePoint<F>(target, xs, ys);
    }
    CurvePoint<F> backward(const CurvePoint<F>& p) const {
        if (p.is_infinity()) return CurvePoint<F>::infinity(source);
        F u2 = u * u;
        F x = u2 * p.x() + r;
        F y = u2 * u * p.y() + s * u2 * p.x() + t;
        return CurvePoint<F>(source, x, y);
    }
    F x_forward(const F& x) const { return (x - r) / (u * u); }
    F x_backward(const F& xs) const { return u * u * xs + r; }
};

template <class F>
EllipticCurve<F> transformed_curve(const EllipticCurve<F>& e, const F& u, const F& r,
                                   const F& s, const F& t) {
    F uinv = u.inverse();
    F u2 = uinv * uinv, u3 = u2 * uinv, u4 = u2 * u2, u6 = u3 * u3;
    F a1 = (e.a1() + s.from_int(2) * s) * uinv;
    F a2 = (e.a2() - s * e.a1() + r.from_int(3) * r - s * s) * u2;
    F a3 = (e.a3() + r * e.a1() + t.from_int(2) * t) * u3;
    F a4 = (e.a4() - s * e.a3() + r.from_int(2) * r * e.a2() - (t + r * s) * e.a1() +
            r.from_int(3) * r * r - s.from_int(2) * s * t) *
           u4;
    F a6 = (e.a6() + r * e.a4() + r * r * e.a2() + r * r * r - t * e.a3() - t * t -
            r * t * e.a1()) *
           u6;
    return EllipticCurve<F>(a1, a2, a3, a4, a6);
}

// Short model y^2 = x^3 - 27 c4 x - 54 c6 together with the invertible point
// substitution; requires characteristic != 2, 3.
template <class F>
CoordinateChange<F> short_model(const EllipticCurve<F>& e) {
    const F one = e.a1().one();
    F u = one.from_int(6).inverse();
    F r = -e.b2() * one.from_int(12).inverse();
    F s = -e.a1() * one.from_int(2).inverse();
    F t = -(e.a3() + r * e.a1()) * one.from_int(2).inverse();
    EllipticCurve<F> target = transformed_curve(e, u, r, s, t);
    return CoordinateChange<F>{e, target, u, r, s, t};
}

// Quadratic twist by d (nonzero): on the short model y^2 = x^3 + Ax + B the
// twist is y^2 = x^3 + A d^2 x + B d^3. Long models are converted first, so
// the result is always a short model.
template <class F>
EllipticCurve<F> quadratic_twist(const EllipticCurve<F>& e, const F& d) {
    if (d.is_zero()) throw error("quadratic_twist: d must be nonzero");
    const EllipticCurve<F> s = e.is_short() ? e : short_model(e).target;
    F zero = d.zero();
    return EllipticCurve<F>(zero, zero, zero, s.a4() * d * d, s.a6() * d * d * d);
}

// ---------------------------------------------------------------------------
// Reduction and point counting
// ---------------------------------------------------------------------------

inline EllipticCurve<FieldElement> embed_curve(const EllipticCurve<Rational>& e,
                                               const NumberField& K) {
    return EllipticCurve<FieldElement>(K.embed(e.a1()), K.embed(e.a2()), K.embed(e.a3()),
                                       K.embed(e.a4()), K.embed(e.a6()));
}

// Reduce a curve over K at a degree-1 prime. Throws on non-integral
// coefficients or bad reduction.
inline EllipticCurve<Fp> reduce_mod(const EllipticCurve<FieldElement>& e, const ResidueMap& rm) {
    Fp a1 = rm.apply(e.a1()), a2 = rm.apply(e.a2()), a3 = rm.apply(e.a3()),
       a4 = rm.apply(e.a4()), a6 = rm.apply(e.a6());
    Fp disc = rm.apply(e.discriminant());
    if (disc.is_zero()) throw error("reduce_mod: bad reduction");
    return EllipticCurve<Fp>(a1, a2, a3, a4, a6);
}

inline EllipticCurve<Fp> reduce_mod(const EllipticCurve<Rational>& e, const ResidueMap& rm) {
    Fp a1 = rm.apply(e.a1()), a2 = rm.apply(e.a2()), a3 = rm.apply(e.a3()),
       a4 = rm.apply(e.a4()), a6 = rm.apply(e.a6());
    Fp disc = rm.apply(e.discriminant());
    if (disc.is_zero()) throw error("reduce_mod: bad reduction");
    return EllipticCurve<Fp>(a1, a2, a3, a4, a6);
}

inline EllipticCurve<Fp> reduce_mod(const EllipticCurve<Rational>& e, uint64_t p) {
    auto rm = residue_map(NumberField::rationals(), p);
    return reduce_mod(e, *rm);
}

// Curve literal `[a1,a2,a3,a4,a6]` with rational entries; `[A,B]` is sugar
// for `[0,0,0,A,B]`.
inline EllipticCurve<Rational> parse_curve_literal(const std::string& text) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i >= text.size() || text[i] != '[') throw parse_error("expected '['", i);
    ++i;
    std::vector<Rational> vals;
    for (;;) {
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && text[i] != ',' && text[i] != ']') ++i;
        if (i >= text.size()) throw parse_error("unterminated curve literal", start);
        std::string tok = text.substr(start, i - start);
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back())))
            tok.pop_back();
        try {
            vals.push_back(Rational::parse(tok));
        } catch (const error&) {
            throw parse_error("bad rational '" + tok + "'", start);
        }
        if (text[i] == ']') {
            ++i;
            break;
        }
        ++i;
    }
    skip_ws();
    if (i != text.size()) throw parse_error("trailing input after ']'", i);
    if (vals.size() == 2)
        return EllipticCurve<Rational>(Rational(), Rational(), Rational(), vals[0], vals[1]);
    if (vals.size() == 5)
        return EllipticCurve<Rational>(vals[0], vals[1], vals[2], vals[3], vals[4]);
    throw parse_error("curve literal needs 2 or 5 entries", 0);
}

inline std::string curve_literal(const EllipticCurve<Rational>& e) {
    return "[" + e.a1().str() + "," + e.a2().str() + "," + e.a3().str() + "," +
           e.a4().str() + "," + e.a6().str() + "]";
}

// #E(F_p) including infinity, by quadratic-residue enumeration; p < 2^20.
inline long count_points(const EllipticCurve<Fp>& e) {
    uint64_t p = e.a1().modulus();
    if (p >= (1u << 20)) throw error("count_points: p too large");
    if (p == 2) {
        long n = 1;
        for (uint64_t x = 0; x < 2; ++x)
            for (uint64_t y = 0; y < 2; ++y)
                if (e.equation(Fp(x, 2), Fp(y, 2)).is_zero()) ++n;
        return n;
    }
    // complete the square in y: (2y + a1 x + a3)^2 = (a1 x + a3)^2 + 4 rhs(x)
    long n = 1;
    for (uint64_t xv = 0; xv < p; ++xv) {
        Fp x(xv, p);
        Fp h = e.a1() * x + e.a3();
        Fp rhs = x * x * x + e.a2() * x * x + e.a4() * x + e.a6();
        Fp d = h * h + rhs.from_int(4) * rhs;
        n += 1 + d.legendre();
    }
    return n;
}

} // namespace ectk
