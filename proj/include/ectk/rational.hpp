#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "ectk/error.hpp"

namespace ectk {

using Integer = mpz_class;

inline Integer int_gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer int_lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer int_sqrt(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer& n, Integer* root = nullptr) {
    if (sgn(n) < 0) return false;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
    if (root) *root = int_sqrt(n);
    return true;
}

inline Integer next_prime(const Integer& n) {
    Integer p;
    mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
    return p;
}

inline bool is_prime(const Integer& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// v_p(n) together with the cofactor n / p^v.
inline std::pair<unsigned long, Integer> remove_factor(const Integer& n, const Integer& p) {
    Integer rest;
    unsigned long v = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    return {v, rest};
}

inline std::size_t bit_length(const Integer& n) {
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline uint64_t mix_hash(uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

inline uint64_t integer_hash(const Integer& n) {
    uint64_t h = static_cast<uint64_t>(mpz_sgn(n.get_mpz_t())) * 0x632be59bd9b4e019ULL;
    std::size_t limbs = mpz_size(n.get_mpz_t());
    for (std::size_t i = 0; i < limbs; ++i)
        h = mix_hash(h, static_cast<uint64_t>(mpz_getlimbn(n.get_mpz_t(), i)));
    return h;
}

// Exact rational number, always stored in lowest terms with positive denominator.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}       // NOLINT: implicit by design
    Rational(const Integer& n) : q_(n) {}
    Rational(const Integer& num, const Integer& den) {
        if (sgn(den) == 0) throw error("Rational: zero denominator");
        q_ = mpq_class(num) / mpq_class(den);
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // Accepts "n" or "n/d" with optional leading sign.
    static Rational parse(const std::string& s) {
        mpq_class q;
        if (s.empty() || q.set_str(s, 10) != 0)
            throw error("Rational: cannot parse '" + s + "'");
        if (sgn(q.get_den()) == 0) throw error("Rational: zero denominator");
        q.canonicalize();
        return Rational(std::move(q));
    }

    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }

    // Same-parent constants; trivial for rationals but part of the generic
    // coefficient interface shared with finite-field and number-field elements.
    Rational zero() const { return Rational(); }
    Rational one() const { return Rational(1); }
    Rational from_int(long n) const { return Rational(n); }

    Rational inverse() const {
        if (is_zero()) throw error("Rational: division by zero");
        return Rational(1 / q_);
    }
    Rational abs() const { return Rational(::abs(q_)); }

    Rational operator-() const { return Rational(-q_); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    std::string str() const { return q_.get_str(); }

private:
    mpq_class q_;
};

inline uint64_t rational_hash(const Rational& r) {
    return mix_hash(integer_hash(r.numerator()), integer_hash(r.denominator()));
}

// Square test with witness; a rational is a square iff numerator and
// denominator are both perfect squares (in lowest terms, numerator >= 0).
inline bool rational_is_square(const Rational& a, Rational* root = nullptr) {
    if (a.is_zero()) {
        if (root) *root = Rational();
        return true;
    }
    if (a.sign() < 0) return false;
    Integer rn, rd;
    if (!is_perfect_square(a.numerator(), &rn)) return false;
    if (!is_perfect_square(a.denominator(), &rd)) return false;
    if (root) *root = Rational(rn, rd);
    return true;
}

inline Rational rational_pow(const Rational& a, long e) {
    if (e < 0) return rational_pow(a.inverse(), -e);
    Rational r(1), base = a;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

} // namespace ectk
