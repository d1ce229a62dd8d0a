#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "ectk/poly.hpp"
#include "ectk/prime_field.hpp"

namespace ectk {

using FpPoly = Poly<Fp>;

inline FpPoly zpoly_mod_p(const ZPoly& f, uint64_t p) {
    return f.map<Fp>([&](const Integer& c) { return Fp::from_integer(c, p); });
}

inline FpPoly qpoly_mod_p(const QPoly& f, uint64_t p) {
    return f.map<Fp>([&](const Rational& c) {
        Fp den = Fp::from_integer(c.denominator(), p);
        if (den.is_zero()) throw error("qpoly_mod_p: denominator divisible by p");
        return Fp::from_integer(c.numerator(), p) / den;
    });
}

inline ZPoly fp_poly_lift(const FpPoly& f) {
    return f.map<Integer>([](const Fp& c) { return Integer(static_cast<unsigned long>(c.value())); });
}

inline bool fppoly_less(const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a[i].value() != b[i].value()) return a[i].value() < b[i].value();
    return false;
}

struct FpFactorization {
    Fp unit;
    std::vector<std::pair<FpPoly, int>> factors; // monic irreducible, multiplicity
};

namespace detail {

// f = g(x^p) over F_p implies f = g(x)^p (Frobenius fixes the prime field).
inline FpPoly fp_pth_root(const FpPoly& f, uint64_t p) {
    std::vector<Fp> c;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
        c.push_back(f[i]);
    return FpPoly(std::move(c));
}

inline void fp_squarefree_rec(const FpPoly& f, uint64_t p, int mult_scale,
                              std::vector<std::pair<FpPoly, int>>& out) {
    if (f.degree() <= 0) return;
    FpPoly der = f.derivative();
    if (der.is_zero()) {
        fp_squarefree_rec(fp_pth_root(f, p), p, mult_scale * static_cast<int>(p), out);
        return;
    }
    FpPoly c = poly_gcd_euclid(f, der);
    FpPoly w = poly_divmod(f, c).first;
    int i = 1;
    while (w.degree() > 0) {
        FpPoly y = poly_gcd_euclid(w, c);
        FpPoly fac = poly_divmod(w, y).first;
        if (fac.degree() > 0) out.emplace_back(fac, i * mult_scale);
        w = std::move(y);
        c = poly_divmod(c, w).first;
        ++i;
    }
    if (c.degree() > 0)
        fp_squarefree_rec(fp_pth_root(c, p), p, mult_scale * static_cast<int>(p), out);
}

// Distinct-degree factorization of a monic squarefree polynomial: returns
// (product of irreducibles of degree d, d) pairs.
inline std::vector<std::pair<FpPoly, int>> fp_distinct_degree(FpPoly f, uint64_t p) {
    std::vector<std::pair<FpPoly, int>> out;
    const Fp one = f.lead().one();
    FpPoly x = FpPoly::monomial(one, 1, one);
    FpPoly h = poly_mod(x, f);
    int d = 0;
    while (f.degree() > 2 * (d + 1) - 1 && f.degree() > 0) {
        ++d;
        h = poly_pow_mod(h, Integer(static_cast<unsigned long>(p)), f);
        FpPoly g = poly_gcd_euclid(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = poly_divmod(f, g).first;
            h = poly_mod(h, f);
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

// Cantor-Zassenhaus equal-degree splitting, p odd.
inline void fp_equal_degree(const FpPoly& f, int d, uint64_t p, SplitMix64& rng,
                            std::vector<FpPoly>& out) {
    if (f.degree() == d) {
        out.push_back(make_monic(f));
        return;
    }
    const Fp one = f.lead().one();
    Integer exp = (int_pow(Integer(static_cast<unsigned long>(p)),
                           static_cast<unsigned long>(d)) - 1) / 2;
    for (;;) {
        std::vector<Fp> rc;
        rc.reserve(static_cast<std::size_t>(f.degree()));
        for (int i = 0; i < f.degree(); ++i)
            rc.emplace_back(rng.below(p), p);
        FpPoly a(std::move(rc));
        if (a.degree() < 1) continue;
        FpPoly g = poly_gcd_euclid(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            fp_equal_degree(g, d, p, rng, out);
            fp_equal_degree(poly_divmod(f, g).first, d, p, rng, out);
            return;
        }
        FpPoly b = poly_pow_mod(a, exp, f);
        FpPoly t = poly_gcd_euclid(b - FpPoly::constant(one), f);
        if (t.degree() > 0 && t.degree() < f.degree()) {
            fp_equal_degree(t, d, p, rng, out);
            fp_equal_degree(poly_divmod(f, t).first, d, p, rng, out);
            return;
        }
    }
}

} // namespace detail

inline uint64_t fppoly_hash(const FpPoly& f, uint64_t p) {
    uint64_t h = mix_hash(0x243f6a8885a308d3ULL, p);
    for (const Fp& c : f.coeffs()) h = mix_hash(h, c.value());
    return h;
}

// Complete factorization over F_p (p an odd prime): distinct-degree then
// equal-degree splitting; factor order is deterministic.
inline FpFactorization factor_mod_p(const FpPoly& f) {
    if (f.is_zero()) throw error("factor_mod_p: zero polynomial");
    uint64_t p = f.lead().modulus();
    if (p < 3) throw error("factor_mod_p: p must be an odd prime");
    FpFactorization result;
    result.unit = f.lead();
    if (f.degree() == 0) return result;
    FpPoly monic = make_monic(f);
    SplitMix64 rng(fppoly_hash(monic, p));

    std::vector<std::pair<FpPoly, int>> sqf;
    detail::fp_squarefree_rec(monic, p, 1, sqf);
    for (auto& [part, mult] : sqf) {
        for (auto& [prod, d] : detail::fp_distinct_degree(part, p)) {
            std::vector<FpPoly> irr;
            detail::fp_equal_degree(prod, d, p, rng, irr);
            for (auto& g : irr) result.factors.emplace_back(std::move(g), mult);
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& a, const auto& b) { return fppoly_less(a.first, b.first); });
    return result;
}

// Distinct roots in F_p of a nonzero polynomial.
inline std::vector<Fp> roots_mod_p(const FpPoly& f) {
    std::vector<Fp> roots;
    if (f.is_zero()) throw error("roots_mod_p: zero polynomial");
    if (f.degree() == 0) return roots;
    uint64_t p = f.lead().modulus();
    // gcd with x^p - x isolates the linear part
    const Fp one = f.lead().one();
    FpPoly x = FpPoly::monomial(one, 1, one);
    FpPoly xp = poly_pow_mod(x, Integer(static_cast<unsigned long>(p)), f);
    FpPoly lin = poly_gcd_euclid(xp - x, f);
    if (lin.degree() <= 0) return roots;
    FpFactorization fac = factor_mod_p(lin);
    for (auto& [g, mult] : fac.factors) {
        (void)mult;
        if (g.degree() == 1) roots.push_back(-g[0]);
    }
    std::sort(roots.begin(), roots.end(),
              [](const Fp& a, const Fp& b) { return a.value() < b.value(); });
    return roots;
}

} // namespace ectk
