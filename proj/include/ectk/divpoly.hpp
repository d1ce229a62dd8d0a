#pragma once

#include <map>
#include <type_traits>

#include "ectk/elliptic.hpp"

namespace ectk {

// Division polynomials of a short-model curve y^2 = x^3 + Ax + B.
//
// With psi_n the n-th division polynomial, this cache stores t_n in x where
// psi_n = t_n for odd n and psi_n = t_n * y for even n (y^2 already replaced
// by x^3 + Ax + B). The recursions then close over x alone:
//   t_{2m+1} = t_{m+2} t_m^3 - t_{m-1} t_{m+1}^3     (F^2 on the even pair)
//   t_{2m}   = t_m (t_{m+2} t_{m-1}^2 - t_{m-2} t_{m+1}^2) / 2
// where F = x^3 + Ax + B enters squared against whichever product pairs two
// even indices. Everything is memoized per cache instance; no global state.
template <class T>
class DivPolyCache {
public:
    DivPolyCache(const T& A, const T& B) : A_(A), B_(B) {
        const T one = coeff_traits<T>::one(A);
        const T zero = coeff_traits<T>::zero(A);
        F_ = Poly<T>({B_, A_, zero, one});
        F2_ = F_ * F_;
        auto c = [&](long v) { return coeff_traits<T>::from_int(A, v); };
        memo_[0] = Poly<T>();
        memo_[1] = Poly<T>::constant(one);
        memo_[2] = Poly<T>::constant(c(2));
        // 3x^4 + 6Ax^2 + 12Bx - A^2
        memo_[3] = Poly<T>({-(A_ * A_), c(12) * B_, c(6) * A_, zero, c(3)});
        // 4(x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
        memo_[4] = Poly<T>({c(-8) * B_ * B_ - A_ * A_ * A_, c(-4) * A_ * B_,
                            c(-5) * A_ * A_, c(20) * B_, c(5) * A_, zero, one}) *
                   c(4);
    }

    const Poly<T>& rhs_cubic() const { return F_; }

    const Poly<T>& get(long n) {
        auto it = memo_.find(n);
        if (it != memo_.end()) return it->second;
        if (n < 0) throw error("DivPolyCache: negative index");
        Poly<T> result;
        if (n % 2 == 1) {
            long m = (n - 1) / 2;
            const Poly<T> a = get(m + 2) * pow3(get(m));
            const Poly<T> b = get(m - 1) * pow3(get(m + 1));
            result = (m % 2 == 0) ? F2_ * a - b : a - F2_ * b;
        } else {
            long m = n / 2;
            Poly<T> inner = get(m + 2) * sq(get(m - 1)) - get(m - 2) * sq(get(m + 1));
            result = half(get(m) * inner);
        }
        return memo_.emplace(n, std::move(result)).first->second;
    }

private:
    static Poly<T> sq(const Poly<T>& f) { return f * f; }
    static Poly<T> pow3(const Poly<T>& f) { return f * f * f; }

    Poly<T> half(const Poly<T>& f) const {
        if constexpr (std::is_same_v<T, Integer>) {
            return f.template map<Integer>([](const Integer& a) {
                if (mpz_odd_p(a.get_mpz_t())) throw error("DivPolyCache: inexact /2");
                return Integer(a / 2);
            });
        } else {
            return f * coeff_traits<T>::from_int(A_, 2).inverse();
        }
    }

    T A_, B_;
    Poly<T> F_, F2_;
    std::map<long, Poly<T>> memo_;
};

template <class F>
struct DivisionPolynomial {
    EllipticCurve<F> curve; // short model
    long n = 0;             // odd, 3 <= n <= 37
    Poly<F> poly;
};

namespace detail {

inline bool curve_is_integral(const EllipticCurve<Rational>& e) {
    return e.a4().is_integer() && e.a6().is_integer();
}

} // namespace detail

// t_n of a short-model curve over Q; integer fast path when A, B are integral.
inline QPoly divpoly_t(const EllipticCurve<Rational>& e, long n) {
    if (!e.is_short()) throw error("divpoly: curve must be a short model");
    if (detail::curve_is_integral(e)) {
        DivPolyCache<Integer> cache(e.a4().numerator(), e.a6().numerator());
        return zpoly_to_qpoly(cache.get(n));
    }
    DivPolyCache<Rational> cache(e.a4(), e.a6());
    return cache.get(n);
}

template <class F>
Poly<F> divpoly_t(const EllipticCurve<F>& e, long n) {
    if (!e.is_short()) throw error("divpoly: curve must be a short model");
    DivPolyCache<F> cache(e.a4(), e.a6());
    return cache.get(n);
}

// psi_n for odd n in [3, 37]: a polynomial in x of degree (n^2-1)/2 with
// leading coefficient n.
template <class F>
DivisionPolynomial<F> psi(const EllipticCurve<F>& e, long n) {
    if (n % 2 == 0 || n < 3 || n > 37) throw error("psi: n must be odd with 3 <= n <= 37");
    Poly<F> t = divpoly_t(e, n);
    if (t.degree() != (n * n - 1) / 2) throw error("psi: degree invariant violated");
    return DivisionPolynomial<F>{e, n, std::move(t)};
}

// psi_n(x0) = 0 iff x0 is the x-coordinate of a nonzero n-torsion point.
template <class F>
bool is_n_torsion_x(const EllipticCurve<F>& e, long n, const F& x0) {
    return psi(e, n).poly.evaluate(x0).is_zero();
}

// Exact-order test: nP = 0 and (n/q)P != 0 for every prime q | n.
template <class F>
bool certify_order(const CurvePoint<F>& p, long n) {
    if (n < 1) throw error("certify_order: n must be >= 1");
    if (n == 1) return p.is_infinity();
    if (p.is_infinity()) return false;
    if (!scalar_mul(n, p).is_infinity()) return false;
    long rest = n;
    for (long q = 2; q * q <= rest; ++q) {
        if (rest % q != 0) continue;
        if (scalar_mul(n / q, p).is_infinity()) return false;
        while (rest % q == 0) rest /= q;
    }
    if (rest > 1 && scalar_mul(n / rest, p).is_infinity()) return false;
    return true;
}

} // namespace ectk
