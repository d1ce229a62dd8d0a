#pragma once

#include <cstdint>
#include <string>

#include "ectk/error.hpp"
#include "ectk/rational.hpp"

namespace ectk {

// Deterministic PRNG (splitmix64); seeded from input hashes so that
// randomized algorithms are reproducible run to run.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

// Element of F_p for an odd prime p < 2^63. Elements carry their modulus.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(uint64_t value, uint64_t p) : v_(value % p), p_(p) {}

    static Fp from_integer(const Integer& n, uint64_t p) {
        Integer r = n % Integer(static_cast<unsigned long>(p));
        if (sgn(r) < 0) r += Integer(static_cast<unsigned long>(p));
        return Fp(r.get_ui(), p);
    }

    uint64_t value() const { return v_; }
    uint64_t modulus() const { return p_; }

    bool is_zero() const { return v_ == 0; }
    Fp zero() const { return Fp(0, p_); }
    Fp one() const { return Fp(1, p_); }
    Fp from_int(long n) const {
        long r = n % static_cast<long>(p_);
        if (r < 0) r += static_cast<long>(p_);
        return Fp(static_cast<uint64_t>(r), p_);
    }

    friend bool operator==(const Fp& a, const Fp& b) {
        return a.v_ == b.v_ && a.p_ == b.p_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }
    Fp& operator+=(const Fp& o) {
        check(o);
        v_ += o.v_;
        if (v_ >= p_) v_ -= p_;
        return *this;
    }
    Fp& operator-=(const Fp& o) {
        check(o);
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
        return *this;
    }
    Fp& operator*=(const Fp& o) {
        check(o);
        v_ = static_cast<uint64_t>(
            static_cast<unsigned __int128>(v_) * o.v_ % p_);
        return *this;
    }
    Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }

    Fp pow(uint64_t e) const {
        Fp r = one(), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    Fp inverse() const {
        if (v_ == 0) throw error("Fp: division by zero");
        return pow(p_ - 2); // p prime
    }

    // Legendre symbol: 0, 1 or -1.
    int legendre() const {
        if (v_ == 0) return 0;
        return pow((p_ - 1) / 2).value() == 1 ? 1 : -1;
    }

    // Tonelli-Shanks; requires *this to be a quadratic residue.
    Fp sqrt() const {
        if (v_ == 0) return *this;
        if (legendre() != 1) throw error("Fp: sqrt of non-residue");
        if (p_ % 4 == 3) return pow((p_ + 1) / 4);
        uint64_t q = p_ - 1, s = 0;
        while ((q & 1) == 0) { q >>= 1; ++s; }
        // deterministic search for a non-residue
        Fp z = from_int(2);
        while (z.legendre() != -1) z += one();
        Fp m_c = z.pow(q);
        Fp t = pow(q);
        Fp r = pow((q + 1) / 2);
        uint64_t m = s;
        while (t.value() != 1) {
            uint64_t i = 0;
            Fp t2 = t;
            while (t2.value() != 1) { t2 *= t2; ++i; }
            Fp b = m_c;
            for (uint64_t k = 0; k + i + 1 < m; ++k) b *= b;
            m_c = b * b;
            t *= m_c;
            r *= b;
            m = i;
        }
        return r;
    }

    std::string str() const { return std::to_string(v_); }

private:
    void check(const Fp& o) const {
        if (p_ != o.p_) throw error("Fp: mixed moduli");
    }
    uint64_t v_;
    uint64_t p_;
};

} // namespace ectk
