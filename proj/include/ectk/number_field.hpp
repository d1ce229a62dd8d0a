#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ectk/factor.hpp"
#include "ectk/lattice.hpp"
#include "ectk/poly.hpp"
#include "ectk/poly_io.hpp"

namespace ectk {

class FieldElement;

// Number field Q[t]/(g) for a monic irreducible integer polynomial g of
// degree 1..6. Value-semantics handle over a shared immutable representation.
class NumberField {
public:
    NumberField() = default;

    explicit NumberField(const QPoly& defining, std::string var = "t") {
        if (defining.is_zero() || !defining.is_monic())
            throw error("NumberField: defining polynomial must be monic");
        int d = defining.degree();
        if (d < 1 || d > 6) throw error("NumberField: degree must be in [1,6]");
        for (const Rational& c : defining.coeffs())
            if (!c.is_integer())
                throw error("NumberField: defining polynomial must have integer coefficients");
        if (d > 1) {
            auto fac = factor_over_q(defining);
            if (fac.factors.size() != 1 || fac.factors[0].second != 1)
                throw error("NumberField: defining polynomial is reducible");
        }
        auto rep = std::make_shared<Rep>();
        rep->g = defining;
        rep->degree = d;
        rep->var = std::move(var);
        rep->disc = field_poly_discriminant(defining);
        rep_ = std::move(rep);
    }

    static NumberField rationals() {
        static NumberField q{QPoly({Rational(0), Rational(1)}), "t"};
        return q;
    }

    bool valid() const { return static_cast<bool>(rep_); }
    const QPoly& defining_polynomial() const { return rep_->g; }
    int degree() const { return rep_->degree; }
    const Integer& discriminant() const { return rep_->disc; }
    const std::string& variable() const { return rep_->var; }

    bool same_field(const NumberField& o) const {
        return rep_ == o.rep_ || rep_->g == o.rep_->g;
    }

    inline FieldElement element(std::vector<Rational> coords) const;
    inline FieldElement from_poly(const QPoly& p) const;
    inline FieldElement embed(const Rational& r) const;
    inline FieldElement generator() const;
    inline FieldElement zero() const;
    inline FieldElement one() const;

    static Integer field_poly_discriminant(const QPoly& g) {
        // disc(g) = (-1)^(d(d-1)/2) Res(g, g') for monic g; Sylvester determinant
        QPoly gd = g.derivative();
        int m = g.degree(), n = gd.degree();
        std::size_t size = static_cast<std::size_t>(m + n);
        std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size, Rational()));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= m; ++j)
                s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = g[m - j];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j <= n; ++j)
                s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = gd[n - j];
        // Gaussian elimination over Q
        Rational det(1);
        for (std::size_t col = 0; col < size; ++col) {
            std::size_t piv = col;
            while (piv < size && s[piv][col].is_zero()) ++piv;
            if (piv == size) return Integer(0);
            if (piv != col) {
                std::swap(s[piv], s[col]);
                det = -det;
            }
            det *= s[col][col];
            Rational inv = s[col][col].inverse();
            for (std::size_t row = col + 1; row < size; ++row) {
                if (s[row][col].is_zero()) continue;
                Rational f = s[row][col] * inv;
                for (std::size_t j = col; j < size; ++j) s[row][j] -= f * s[col][j];
            }
        }
        int d = g.degree();
        if (((d * (d - 1)) / 2) % 2 == 1) det = -det;
        if (!det.is_integer()) throw error("discriminant: non-integral resultant");
        return det.numerator();
    }

private:
    struct Rep {
        QPoly g;
        int degree = 0;
        Integer disc;
        std::string var;
    };
    std::shared_ptr<const Rep> rep_;
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(NumberField field, std::vector<Rational> coords)
        : field_(std::move(field)), c_(std::move(coords)) {
        if (static_cast<int>(c_.size()) != field_.degree())
            throw error("FieldElement: coordinate length != field degree");
    }

    const NumberField& field() const { return field_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        for (const Rational& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    const Rational& rational_part() const { return c_[0]; }

    FieldElement zero() const { return field_.zero(); }
    FieldElement one() const { return field_.one(); }
    FieldElement from_int(long n) const { return field_.embed(Rational(n)); }

    QPoly to_poly() const {
        return QPoly(std::vector<Rational>(c_));
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    FieldElement operator-() const {
        std::vector<Rational> r;
        r.reserve(c_.size());
        for (const Rational& x : c_) r.push_back(-x);
        return FieldElement(field_, std::move(r));
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        std::vector<Rational> r(a.c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] + b.c_[i];
        return FieldElement(a.field_, std::move(r));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        return a + (-b);
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        QPoly prod = a.to_poly() * b.to_poly();
        return a.field_.from_poly(prod);
    }
    friend FieldElement operator*(const FieldElement& a, const Rational& s) {
        std::vector<Rational> r(a.c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] * s;
        return FieldElement(a.field_, std::move(r));
    }

    FieldElement inverse() const {
        if (is_zero()) throw error("FieldElement: division by zero");
        auto [g, u, v] = poly_xgcd(to_poly(), field_.defining_polynomial());
        (void)v;
        if (g.degree() != 0) throw error("FieldElement: non-invertible element");
        return field_.from_poly(u * g.lead().inverse());
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return a * b.inverse();
    }

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    std::string str() const { return poly_to_string(to_poly(), field_.variable()); }

private:
    void check(const FieldElement& o) const {
        if (!field_.same_field(o.field_)) throw error("FieldElement: mismatched parents");
    }
    NumberField field_;
    std::vector<Rational> c_;
};

inline FieldElement NumberField::element(std::vector<Rational> coords) const {
    return FieldElement(*this, std::move(coords));
}

inline FieldElement NumberField::from_poly(const QPoly& p) const {
    QPoly r = p.degree() >= degree() ? poly_mod(p, rep_->g) : p;
    std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational());
    for (int i = 0; i <= r.degree(); ++i) c[static_cast<std::size_t>(i)] = r[i];
    return FieldElement(*this, std::move(c));
}

inline FieldElement NumberField::embed(const Rational& r) const {
    std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational());
    c[0] = r;
    return FieldElement(*this, std::move(c));
}

inline FieldElement NumberField::generator() const {
    if (degree() == 1) return embed(-rep_->g[0]);
    std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational());
    c[1] = Rational(1);
    return FieldElement(*this, std::move(c));
}

inline FieldElement NumberField::zero() const { return embed(Rational()); }
inline FieldElement NumberField::one() const { return embed(Rational(1)); }

inline FieldElement field_pow(const FieldElement& a, long e) {
    if (e < 0) return field_pow(a.inverse(), -e);
    FieldElement r = a.one(), b = a;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Multiplication matrix, norm, minimal polynomial
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::vector<Rational>> mult_matrix(const FieldElement& a) {
    int d = a.field().degree();
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(d),
                                         std::vector<Rational>(static_cast<std::size_t>(d)));
    FieldElement cur = a;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                cur.coords()[static_cast<std::size_t>(i)];
        if (j + 1 < d) cur = cur * a.field().generator();
    }
    return m;
}

inline Rational rational_det(std::vector<std::vector<Rational>> m) {
    std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return Rational();
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rational inv = m[col][col].inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Rational f = m[r][col] * inv;
            for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    return det;
}

} // namespace detail

inline Rational field_norm(const FieldElement& a) {
    if (a.is_zero()) return Rational();
    return detail::rational_det(detail::mult_matrix(a));
}

// Characteristic polynomial of multiplication-by-a (Faddeev-LeVerrier), then
// the squarefree part: char = min^(d/m), so the radical is the minimal poly.
inline QPoly minimal_polynomial(const FieldElement& a) {
    int d = a.field().degree();
    auto m = detail::mult_matrix(a);
    auto mat_mul = [d](const std::vector<std::vector<Rational>>& x,
                       const std::vector<std::vector<Rational>>& y) {
        std::vector<std::vector<Rational>> r(static_cast<std::size_t>(d),
                                             std::vector<Rational>(static_cast<std::size_t>(d)));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                if (x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].is_zero()) continue;
                for (int j = 0; j < d; ++j)
                    r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                        y[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            }
        return r;
    };
    auto trace = [d](const std::vector<std::vector<Rational>>& x) {
        Rational t;
        for (int i = 0; i < d; ++i)
            t += x[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        return t;
    };
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
    c[static_cast<std::size_t>(d)] = Rational(1);
    auto mk = m;
    c[static_cast<std::size_t>(d - 1)] = -trace(mk);
    for (int k = 2; k <= d; ++k) {
        // M_k = M (M_{k-1} + c_{d-k+1} I)
        for (int i = 0; i < d; ++i)
            mk[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] +=
                c[static_cast<std::size_t>(d - k + 1)];
        mk = mat_mul(m, mk);
        c[static_cast<std::size_t>(d - k)] = -(trace(mk) / Rational(k));
    }
    QPoly charpoly{std::move(c)};
    QPoly g = poly_gcd(charpoly, charpoly.derivative());
    return g.degree() == 0 ? charpoly : poly_divmod(charpoly, g).first;
}

// ---------------------------------------------------------------------------
// Residue maps K -> F_p
// ---------------------------------------------------------------------------

struct ResidueMap {
    NumberField field;
    uint64_t p = 0;
    uint64_t root = 0; // root of the defining polynomial mod p

    Fp apply(const FieldElement& a) const {
        if (!field.same_field(a.field())) throw error("ResidueMap: wrong field");
        Fp acc(0, p);
        Fp r(root, p);
        const auto& c = a.coords();
        for (std::size_t i = c.size(); i-- > 0;) {
            const Rational& q = c[i];
            if (q.denominator() % Integer(static_cast<unsigned long>(p)) == 0)
                throw error("ResidueMap: element not p-integral");
            acc = acc * r + Fp::from_integer(q.numerator(), p) /
                                Fp::from_integer(q.denominator(), p);
        }
        return acc;
    }
    Fp apply(const Rational& q) const { return apply(field.embed(q)); }
};

// Residue map at the smallest root of g mod p, or nullopt when g has no root
// mod p. Rejects p = 2 and ramified primes (p | disc g).
inline std::optional<ResidueMap> residue_map(const NumberField& K, uint64_t p) {
    if (p < 3 || !is_prime(Integer(static_cast<unsigned long>(p))))
        throw error("residue_map: p must be an odd prime");
    if (K.discriminant() % Integer(static_cast<unsigned long>(p)) == 0)
        throw error("residue_map: ramified prime rejected");
    ZPoly g = qpoly_to_primitive(K.defining_polynomial()).second;
    auto roots = roots_mod_p(zpoly_mod_p(g, p));
    if (roots.empty()) return std::nullopt;
    return ResidueMap{K, p, roots.front().value()};
}

// Cyclic cubic test: a cubic field is Galois iff disc(g) is a rational square.
inline bool is_galois_cubic(const NumberField& K) {
    if (K.degree() != 3) throw error("is_galois_cubic: field is not cubic");
    return is_perfect_square(K.discriminant());
}

// ---------------------------------------------------------------------------
// p-adic lifting and lattice reconstruction
// ---------------------------------------------------------------------------

namespace detail {

// Newton-lift a simple root r0 of g mod p to a root mod a power p^(2^s) >= target.
inline std::pair<Integer, Integer> lift_root(const ZPoly& g, uint64_t p, uint64_t r0,
                                             const Integer& target) {
    Integer m(static_cast<unsigned long>(p));
    Integer r(static_cast<unsigned long>(r0));
    ZPoly gd = g.derivative();
    while (m < target) {
        Integer m2 = m * m;
        Integer fr = g.evaluate(r) % m2;
        Integer fdr = gd.evaluate(r) % m2;
        Integer inv;
        if (mpz_invert(inv.get_mpz_t(), fdr.get_mpz_t(), m2.get_mpz_t()) == 0)
            throw error("lift_root: derivative not invertible");
        r = (r - fr * inv) % m2;
        if (sgn(r) < 0) r += m2;
        m = m2;
    }
    return {r, m};
}

// Find field elements congruent to beta under the embedding sending the
// generator to rho (both mod M): small (c_0..c_{d-1}, den) with
// sum c_i rho^i = den * beta (mod M). Returns unverified candidates.
inline std::vector<std::vector<Rational>> reconstruct_candidates(int d, const Integer& rho,
                                                                 const Integer& beta,
                                                                 const Integer& M) {
    std::size_t dim = static_cast<std::size_t>(d) + 2;
    Integer weight = int_sqrt(M) + 1;
    IntMat basis(dim, IntVec(dim, Integer(0)));
    Integer rpow = 1;
    for (int i = 0; i < d; ++i) {
        basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        basis[static_cast<std::size_t>(i)][dim - 1] = mod_center(rpow, M) * weight;
        rpow = (rpow * rho) % M;
    }
    basis[static_cast<std::size_t>(d)][static_cast<std::size_t>(d)] = 1;
    basis[static_cast<std::size_t>(d)][dim - 1] = mod_center(-beta, M) * weight;
    basis[dim - 1][dim - 1] = M * weight;

    IntMat reduced = lll_reduce(std::move(basis));
    std::vector<std::vector<Rational>> out;
    for (const IntVec& v : reduced) {
        if (sgn(v[dim - 1]) != 0) continue;
        const Integer& den = v[static_cast<std::size_t>(d)];
        if (sgn(den) == 0) continue;
        std::vector<Rational> coords;
        coords.reserve(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) coords.emplace_back(v[static_cast<std::size_t>(i)], den);
        out.push_back(std::move(coords));
    }
    return out;
}

// Primes usable for p-adic work in K: odd, unramified, g has a root mod p.
inline std::vector<uint64_t> usable_primes(const NumberField& K, std::size_t count,
                                           uint64_t start = 5) {
    std::vector<uint64_t> out;
    Integer p(static_cast<unsigned long>(start) - 1);
    while (out.size() < count) {
        p = next_prime(p);
        if (p > 100000) break;
        uint64_t pu = p.get_ui();
        if (K.discriminant() % p == 0) continue;
        ZPoly g = qpoly_to_primitive(K.defining_polynomial()).second;
        if (g.lead() % p == 0) continue;
        FpPoly gp = zpoly_mod_p(g, pu);
        if (poly_gcd_euclid(gp, gp.derivative()).degree() != 0) continue;
        if (roots_mod_p(gp).empty()) continue;
        out.push_back(pu);
    }
    return out;
}

} // namespace detail

// Precision cap for p-adic reconstruction, in bits.
inline constexpr std::size_t kReconstructionCapBits = 1u << 16;

inline std::pair<bool, std::optional<FieldElement>> is_square(const FieldElement& a);

namespace detail {

inline Poly<FieldElement> embed_poly(const QPoly& q, const NumberField& K) {
    return q.map<FieldElement>([&](const Rational& c) { return K.embed(c); });
}

// Both roots of a monic quadratic with K-coefficients, or none.
inline std::vector<FieldElement> quadratic_roots_in_k(const Poly<FieldElement>& q) {
    const NumberField& K = q.lead().field();
    FieldElement disc = q[1] * q[1] - q[0] * Rational(4);
    auto [sq, s] = is_square(disc);
    std::vector<FieldElement> roots;
    if (!sq) return roots;
    Rational half(Integer(1), Integer(2));
    FieldElement r1 = (-q[1] + *s) * half;
    FieldElement r2 = (-q[1] - *s) * half;
    roots.push_back(r1);
    if (!(r2 == r1)) roots.push_back(r2);
    (void)K;
    return roots;
}

// Pick a prime for p-adic root lifting. Any root of q in K is p-integral
// away from lc(q) and reduces to a root of q mod p under a degree-1 residue
// map, so a single usable prime without roots of q proves there is nothing
// to find (returns nullopt). Otherwise prefers the prime with the fewest
// root images to keep the reconstruction work small.
inline std::optional<std::tuple<uint64_t, std::vector<Fp>, uint64_t>> choose_lifting_prime(
    const NumberField& K, const ZPoly& Q) {
    ZPoly G = qpoly_to_primitive(K.defining_polynomial()).second;
    uint64_t best_prime = 0, best_groot = 0;
    std::vector<Fp> best_roots;
    for (uint64_t p : usable_primes(K, 48)) {
        if (Q.lead() % Integer(static_cast<unsigned long>(p)) == 0) continue;
        FpPoly qp = zpoly_mod_p(Q, p);
        auto r = roots_mod_p(qp);
        if (r.empty()) return std::nullopt;
        if (poly_gcd_euclid(qp, qp.derivative()).degree() != 0) continue;
        if (best_prime == 0 || r.size() < best_roots.size()) {
            best_prime = p;
            best_roots = std::move(r);
            best_groot = roots_mod_p(zpoly_mod_p(G, p)).front().value();
        }
    }
    if (best_prime == 0) throw error("root_in_field: no usable prime");
    return std::make_tuple(best_prime, std::move(best_roots), best_groot);
}

// Roots in K of a monic irreducible q over Q with deg q in [3, deg K].
// One root is located by p-adic lifting + lattice reconstruction (verified
// exactly); the others follow by deflating q over K.
inline std::vector<FieldElement> irreducible_roots_padic(const QPoly& q, const NumberField& K) {
    std::vector<FieldElement> roots;
    const int d = K.degree();
    ZPoly Q = qpoly_to_primitive(q).second;
    ZPoly G = qpoly_to_primitive(K.defining_polynomial()).second;

    Poly<FieldElement> rem = embed_poly(q, K);
    std::vector<Fp> pending; // unresolved root images mod the chosen prime
    uint64_t prime = 0, groot = 0;

    if (q == K.defining_polynomial()) {
        roots.push_back(K.generator());
        rem = poly_divexact_monic(
            rem, Poly<FieldElement>({-K.generator(), K.one()}));
    } else {
        auto chosen = choose_lifting_prime(K, Q);
        if (!chosen) return roots;
        std::tie(prime, pending, groot) = *chosen;
    }

    auto padic_one_root = [&]() -> std::optional<FieldElement> {
        // escalate all pending images together; first exact verification wins
        std::size_t bits = 192;
        while (bits <= kReconstructionCapBits && !pending.empty()) {
            Integer target = int_pow(Integer(2), static_cast<unsigned long>(bits));
            auto [rho, M] = lift_root(G, prime, groot, target);
            for (const Fp& s : pending) {
                auto [sigma, M2] = lift_root(Q, prime, s.value(), target);
                if (M != M2) throw error("root_in_field: precision mismatch");
                for (auto& coords : reconstruct_candidates(d, rho, sigma, M)) {
                    FieldElement cand = K.element(std::move(coords));
                    FieldElement val = K.zero();
                    for (int i = q.degree(); i >= 0; --i)
                        val = val * cand + K.embed(q[i]);
                    if (val.is_zero()) {
                        std::vector<Fp> rest;
                        for (const Fp& t : pending)
                            if (!(t == s)) rest.push_back(t);
                        pending = std::move(rest);
                        return cand;
                    }
                }
            }
            bits *= 2;
        }
        return std::nullopt;
    };

    if (roots.empty()) {
        auto first = padic_one_root();
        if (!first) return roots; // no image reconstructed below the cap
        roots.push_back(*first);
        rem = poly_divexact_monic(rem, Poly<FieldElement>({-*first, K.one()}));
    }

    for (;;) {
        if (rem.degree() == 0) break;
        if (rem.degree() == 1) {
            roots.push_back(-rem[0]);
            break;
        }
        if (rem.degree() == 2) {
            for (auto& r : quadratic_roots_in_k(rem)) roots.push_back(r);
            break;
        }
        if (prime == 0) {
            // came from the generator shortcut; set up images for the rest
            auto chosen = choose_lifting_prime(K, Q);
            if (!chosen) return roots;
            std::tie(prime, pending, groot) = *chosen;
            // drop images of roots already found
            ResidueMap rm{K, prime, groot};
            std::vector<Fp> rest;
            for (const Fp& s : pending) {
                bool known = false;
                for (const FieldElement& r : roots) {
                    try {
                        if (rm.apply(r) == s) known = true;
                    } catch (const error&) {
                        // root not p-integral; keep the image and let
                        // verification sort it out
                    }
                }
                if (!known) rest.push_back(s);
            }
            pending = std::move(rest);
        }
        auto next = padic_one_root();
        if (!next) break; // remaining images do not come from K-roots
        roots.push_back(*next);
        rem = poly_divexact_monic(rem, Poly<FieldElement>({-*next, K.one()}));
    }
    return roots;
}

} // namespace detail

// All roots of h lying in K. Rational roots come from the linear factors of
// h; an irreducible factor q of degree m with m | deg K contributes roots in
// K found algebraically (m <= 2) or by p-adic reconstruction, all verified
// exactly by evaluation.
inline std::vector<FieldElement> root_in_field(const QPoly& h, const NumberField& K) {
    if (h.is_zero()) throw error("root_in_field: zero polynomial");
    std::vector<FieldElement> out;
    auto push_unique = [&](const FieldElement& e) {
        for (const FieldElement& x : out)
            if (x == e) return;
        out.push_back(e);
    };
    int d = K.degree();
    for (auto& [q, mult] : small_factors(h, d)) {
        (void)mult;
        int m = q.degree();
        if (m == 1) {
            push_unique(K.embed(-q[0]));
            continue;
        }
        if (d % m != 0) continue;
        if (m == 2) {
            for (auto& r : detail::quadratic_roots_in_k(detail::embed_poly(q, K)))
                push_unique(r);
            continue;
        }
        for (auto& r : detail::irreducible_roots_padic(q, K)) push_unique(r);
    }
    return out;
}

// Square test with witness. A non-residue at any usable degree-1 prime
// certifies non-squareness; a witness found by p-adic reconstruction is
// verified exactly by re-squaring before being returned.
inline std::pair<bool, std::optional<FieldElement>> is_square(const FieldElement& a) {
    const NumberField& K = a.field();
    if (a.is_zero()) return {true, K.zero()};
    if (K.degree() == 1) {
        Rational root;
        if (rational_is_square(a.rational_part(), &root)) return {true, K.embed(root)};
        return {false, std::nullopt};
    }
    // norm obstruction
    if (!rational_is_square(field_norm(a))) return {false, std::nullopt};

    ZPoly G = qpoly_to_primitive(K.defining_polynomial()).second;
    std::vector<std::pair<uint64_t, uint64_t>> usable; // (p, root of g)
    for (uint64_t p : detail::usable_primes(K, 32)) {
        bool ok = true;
        for (const Rational& c : a.coords())
            if (c.denominator() % Integer(static_cast<unsigned long>(p)) == 0) ok = false;
        if (!ok) continue;
        auto rm = residue_map(K, p);
        if (!rm) continue;
        Fp image = rm->apply(a);
        if (image.is_zero()) continue;
        if (image.legendre() == -1) return {false, std::nullopt};
        usable.emplace_back(p, rm->root);
        if (usable.size() >= 20) break;
    }
    if (usable.empty()) throw error("is_square: no usable primes");

    auto [prime, groot] = usable.front();
    std::size_t bits = 192;
    while (bits <= kReconstructionCapBits) {
        Integer target = int_pow(Integer(2), static_cast<unsigned long>(bits));
        auto [rho, M] = detail::lift_root(G, prime, groot, target);
        // image of a mod M under t -> rho
        Integer abar = 0;
        Integer rpow = 1;
        for (std::size_t i = 0; i < a.coords().size(); ++i) {
            const Rational& c = a.coords()[i];
            Integer deninv;
            if (mpz_invert(deninv.get_mpz_t(), c.denominator().get_mpz_t(), M.get_mpz_t()) == 0)
                throw error("is_square: denominator not invertible");
            abar = (abar + c.numerator() * deninv % M * rpow) % M;
            rpow = (rpow * rho) % M;
        }
        if (sgn(abar) < 0) abar += M;
        // Newton lift of the square root from mod p
        Fp s0 = Fp::from_integer(abar, prime).sqrt();
        // M is p^(2^s), so squaring the modulus from p lands exactly on M
        Integer m(static_cast<unsigned long>(prime));
        Integer z(static_cast<unsigned long>(s0.value()));
        while (m < M) {
            Integer m2 = m * m;
            Integer zinv;
            if (mpz_invert(zinv.get_mpz_t(), z.get_mpz_t(), m2.get_mpz_t()) == 0)
                throw error("is_square: lift failed");
            Integer two_inv;
            Integer two(2);
            if (mpz_invert(two_inv.get_mpz_t(), two.get_mpz_t(), m2.get_mpz_t()) == 0)
                throw error("is_square: even modulus");
            z = ((z + (abar % m2) * zinv) % m2) * two_inv % m2;
            if (sgn(z) < 0) z += m2;
            m = m2;
        }
        for (auto& coords : detail::reconstruct_candidates(K.degree(), rho, z, M)) {
            FieldElement cand = K.element(std::move(coords));
            if (cand * cand == a) return {true, cand};
        }
        bits *= 2;
    }
    throw error("is_square: reconstruction cap exceeded");
}

// K1 isomorphic to K2 iff g1 has a root in K2 (degrees being equal).
inline bool fields_isomorphic(const NumberField& K1, const NumberField& K2) {
    if (K1.degree() != K2.degree()) return false;
    if (K1.defining_polynomial() == K2.defining_polynomial()) return true;
    return !root_in_field(K1.defining_polynomial(), K2).empty();
}

// Scale a monic rational polynomial to a monic integer one: returns the field
// together with c such that (original root) = generator / c.
inline std::pair<NumberField, Rational> make_field_from_monic(const QPoly& g,
                                                              const std::string& var = "t") {
    if (g.is_zero() || !g.is_monic()) throw error("make_field_from_monic: not monic");
    Integer c = 1;
    int d = g.degree();
    for (int i = 0; i < d; ++i) {
        // need c^(d-i) * g_i integral: take lcm of denominator radicals; the
        // simple choice c = lcm of all denominators always works
        c = int_lcm(c, g[i].denominator());
    }
    std::vector<Rational> coeffs(static_cast<std::size_t>(d) + 1);
    coeffs[static_cast<std::size_t>(d)] = Rational(1);
    Rational cpow(1);
    for (int i = d - 1; i >= 0; --i) {
        cpow *= Rational(c);
        coeffs[static_cast<std::size_t>(i)] = g[i] * cpow;
    }
    return {NumberField(QPoly(std::move(coeffs)), var), Rational(c)};
}

// Q(sqrt(delta)) for a non-square rational delta, plus the element sqrt(delta).
inline std::pair<NumberField, FieldElement> quadratic_field(const Rational& delta) {
    if (rational_is_square(delta)) throw error("quadratic_field: delta is a square");
    Integer n = delta.numerator() * delta.denominator();
    // strip small square factors for a tidier defining polynomial
    for (Integer f : {Integer(4), Integer(9), Integer(25), Integer(49), Integer(121), Integer(169)}) {
        for (;;) {
            if (n % f == 0) {
                Integer cand = n / f;
                n = cand;
            } else {
                break;
            }
        }
    }
    NumberField K(QPoly({Rational(Integer(-n)), Rational(), Rational(1)}), "t");
    // sqrt(delta) = t * sqrt(delta / n); delta / n is a square by construction
    Rational ratio = delta / Rational(n);
    Rational root;
    if (!rational_is_square(ratio, &root)) throw error("quadratic_field: internal");
    return {K, K.generator() * root};
}

} // namespace ectk
