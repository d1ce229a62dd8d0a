#pragma once

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <vector>

#include "ectk/error.hpp"
#include "ectk/rational.hpp"

namespace ectk {

// Coefficient interface used by Poly<T>. Field-like types (Rational, Fp,
// FieldElement) implement the members directly; Integer is adapted here so
// ring-only algorithms (division-free) can run on integer polynomials.
template <class T>
struct coeff_traits {
    static T zero(const T& like) { return like.zero(); }
    static T one(const T& like) { return like.one(); }
    static T from_int(const T& like, long n) { return like.from_int(n); }
    static bool is_zero(const T& a) { return a.is_zero(); }
};

template <>
struct coeff_traits<Integer> {
    static Integer zero(const Integer&) { return Integer(0); }
    static Integer one(const Integer&) { return Integer(1); }
    static Integer from_int(const Integer&, long n) { return Integer(n); }
    static bool is_zero(const Integer& a) { return sgn(a) == 0; }
};

// Univariate polynomial, coefficients ascending by degree, no trailing zeros.
// The zero polynomial is the empty coefficient sequence (degree -1).
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
    // x^n with the parent of `like`
    static Poly monomial(const T& like, int n, const T& coeff) {
        std::vector<T> c(static_cast<std::size_t>(n) + 1, coeff_traits<T>::zero(like));
        c.back() = coeff;
        return Poly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }

    const T& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    const T& lead() const {
        if (is_zero()) throw error("Poly: leading coefficient of zero polynomial");
        return c_.back();
    }
    T coeff_or_zero(int i, const T& like) const {
        if (i < 0 || i > degree()) return coeff_traits<T>::zero(like);
        return c_[static_cast<std::size_t>(i)];
    }

    bool is_monic() const {
        return !is_zero() && !coeff_traits<T>::is_zero(lead()) &&
               lead() == coeff_traits<T>::one(lead());
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a.c_ == b.c_); }

    Poly operator-() const {
        std::vector<T> r;
        r.reserve(c_.size());
        for (const T& a : c_) r.push_back(-a);
        return Poly(std::move(r));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const T& like = a.c_[0];
        std::vector<T> r;
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i < a.c_.size() && i < b.c_.size()) r.push_back(a.c_[i] + b.c_[i]);
            else if (i < a.c_.size()) r.push_back(a.c_[i]);
            else r.push_back(b.c_[i]);
        }
        (void)like;
        return Poly(std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        const T zero = coeff_traits<T>::zero(a.c_[0]);
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, zero);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (coeff_traits<T>::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }

    friend Poly operator*(const Poly& a, const T& s) {
        if (a.is_zero() || coeff_traits<T>::is_zero(s)) return Poly();
        std::vector<T> r;
        r.reserve(a.c_.size());
        for (const T& v : a.c_) r.push_back(v * s);
        return Poly(std::move(r));
    }
    friend Poly operator*(const T& s, const Poly& a) { return a * s; }

    // multiply by x^k
    Poly shifted(int k) const {
        if (is_zero() || k == 0) return k >= 0 ? *this : *this;
        if (k < 0) throw error("Poly: negative shift");
        std::vector<T> r(static_cast<std::size_t>(k), coeff_traits<T>::zero(c_[0]));
        r.insert(r.end(), c_.begin(), c_.end());
        return Poly(std::move(r));
    }

    T evaluate(const T& x) const {
        T acc = coeff_traits<T>::zero(x);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (degree() <= 0) return Poly();
        std::vector<T> r;
        r.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.push_back(c_[i] * coeff_traits<T>::from_int(c_[i], static_cast<long>(i)));
        return Poly(std::move(r));
    }

    template <class U, class F>
    Poly<U> map(F&& f) const {
        std::vector<U> r;
        r.reserve(c_.size());
        for (const T& a : c_) r.push_back(f(a));
        return Poly<U>(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && coeff_traits<T>::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

// Quotient and remainder; requires invertible leading coefficient of g
// (field coefficients, or monic g over a ring).
template <class T>
std::pair<Poly<T>, Poly<T>> poly_divmod(const Poly<T>& f, const Poly<T>& g) {
    if (g.is_zero()) throw error("Poly: division by zero polynomial");
    if (f.is_zero() || f.degree() < g.degree()) return {Poly<T>(), f};
    const T one = coeff_traits<T>::one(g.lead());
    const bool monic = g.lead() == one;
    T lead_inv = monic ? one : g.lead().inverse();
    std::vector<T> rem(f.coeffs());
    int dq = f.degree() - g.degree();
    std::vector<T> quot(static_cast<std::size_t>(dq) + 1, coeff_traits<T>::zero(one));
    for (int k = dq; k >= 0; --k) {
        T c = rem[static_cast<std::size_t>(k + g.degree())];
        if (coeff_traits<T>::is_zero(c)) continue;
        T q = monic ? c : c * lead_inv;
        quot[static_cast<std::size_t>(k)] = q;
        for (int i = 0; i <= g.degree(); ++i)
            rem[static_cast<std::size_t>(k + i)] -= q * g[i];
    }
    return {Poly<T>(std::move(quot)), Poly<T>(std::move(rem))};
}

// Exact division by a monic divisor over any coefficient ring; throws if the
// division leaves a remainder.
template <class T>
Poly<T> poly_divexact_monic(const Poly<T>& f, const Poly<T>& g) {
    if (!g.is_monic()) throw error("Poly: divisor must be monic");
    if (f.is_zero()) return Poly<T>();
    if (f.degree() < g.degree()) throw error("Poly: inexact division");
    std::vector<T> rem(f.coeffs());
    int dq = f.degree() - g.degree();
    const T zero = coeff_traits<T>::zero(f.lead());
    std::vector<T> quot(static_cast<std::size_t>(dq) + 1, zero);
    for (int k = dq; k >= 0; --k) {
        T q = rem[static_cast<std::size_t>(k + g.degree())];
        quot[static_cast<std::size_t>(k)] = q;
        if (coeff_traits<T>::is_zero(q)) continue;
        for (int i = 0; i <= g.degree(); ++i)
            rem[static_cast<std::size_t>(k + i)] -= q * g[i];
    }
    for (const T& c : rem)
        if (!coeff_traits<T>::is_zero(c)) throw error("Poly: inexact division");
    return Poly<T>(std::move(quot));
}

template <class T>
Poly<T> poly_mod(const Poly<T>& f, const Poly<T>& g) {
    return poly_divmod(f, g).second;
}

template <class T>
Poly<T> make_monic(const Poly<T>& f) {
    if (f.is_zero()) return f;
    return f * f.lead().inverse();
}

// Monic gcd by the Euclidean algorithm over a coefficient field.
// gcd(0, 0) = 0 by convention.
template <class T>
Poly<T> poly_gcd_euclid(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        Poly<T> r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
template <class T>
std::tuple<Poly<T>, Poly<T>, Poly<T>> poly_xgcd(const Poly<T>& a, const Poly<T>& b) {
    if (a.is_zero() && b.is_zero()) return {Poly<T>(), Poly<T>(), Poly<T>()};
    const T one = coeff_traits<T>::one(a.is_zero() ? b.lead() : a.lead());
    Poly<T> r0 = a, r1 = b;
    Poly<T> s0 = Poly<T>::constant(one), s1;
    Poly<T> t0, t1 = Poly<T>::constant(one);
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        r0 = std::move(r1); r1 = std::move(r2);
        Poly<T> s2 = s0 - q * s1;
        s0 = std::move(s1); s1 = std::move(s2);
        Poly<T> t2 = t0 - q * t1;
        t0 = std::move(t1); t1 = std::move(t2);
    }
    T inv = r0.lead().inverse();
    return {r0 * inv, s0 * inv, t0 * inv};
}

template <class T>
Poly<T> poly_pow_mod(const Poly<T>& base, Integer e, const Poly<T>& mod) {
    if (sgn(e) < 0) throw error("Poly: negative exponent");
    const T one = coeff_traits<T>::one(mod.lead());
    Poly<T> result = Poly<T>::constant(one);
    Poly<T> b = poly_mod(base, mod);
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = poly_mod(result * b, mod);
        e >>= 1;
        if (sgn(e) > 0) b = poly_mod(b * b, mod);
    }
    return result;
}

using QPoly = Poly<Rational>;
using ZPoly = Poly<Integer>;

inline uint64_t qpoly_hash(const QPoly& f) {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (const Rational& c : f.coeffs()) h = mix_hash(h, rational_hash(c));
    return h;
}

// Lexicographic-style total order used to report factor lists deterministically:
// by degree first, then coefficients from the top.
inline bool qpoly_less(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

} // namespace ectk
