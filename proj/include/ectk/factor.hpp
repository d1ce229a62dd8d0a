#pragma once

#include <bitset>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ectk/fp_factor.hpp"
#include "ectk/poly.hpp"

namespace ectk {

// ---------------------------------------------------------------------------
// Integer-polynomial utilities
// ---------------------------------------------------------------------------

inline Integer zpoly_content(const ZPoly& f) {
    Integer c = 0;
    for (const Integer& a : f.coeffs()) c = int_gcd(c, a);
    return c;
}

// Primitive part with positive leading coefficient.
inline ZPoly zpoly_primitive(const ZPoly& f) {
    if (f.is_zero()) return f;
    Integer c = zpoly_content(f);
    if (sgn(f.lead()) < 0) c = -c;
    return f.map<Integer>([&](const Integer& a) { return Integer(a / c); });
}

// Clear denominators: f = unit * F with F primitive, lc(F) > 0.
inline std::pair<Rational, ZPoly> qpoly_to_primitive(const QPoly& f) {
    if (f.is_zero()) return {Rational(), ZPoly()};
    Integer den = 1;
    for (const Rational& c : f.coeffs()) den = int_lcm(den, c.denominator());
    ZPoly scaled = f.map<Integer>([&](const Rational& c) {
        return Integer(c.numerator() * (den / c.denominator()));
    });
    Integer cont = zpoly_content(scaled);
    if (sgn(scaled.lead()) < 0) cont = -cont;
    ZPoly prim = scaled.map<Integer>([&](const Integer& a) { return Integer(a / cont); });
    return {Rational(cont, den), prim};
}

inline QPoly zpoly_to_qpoly(const ZPoly& f) {
    return f.map<Rational>([](const Integer& a) { return Rational(a); });
}

inline QPoly qpoly_monic(const QPoly& f) { return make_monic(f); }

// Exact divisibility test over Q. Requires f != 0; divides(f, 0) is true.
inline bool divides(const QPoly& f, const QPoly& g) {
    if (f.is_zero()) throw error("divides: zero divisor");
    if (g.is_zero()) return true;
    if (f.degree() > g.degree()) return false;
    return poly_divmod(g, f).second.is_zero();
}

// Symmetric (centered) representative in (-m/2, m/2].
inline Integer mod_center(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (sgn(r) < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

inline ZPoly zpoly_reduce(const ZPoly& f, const Integer& m) {
    return f.map<Integer>([&](const Integer& a) {
        Integer r = a % m;
        if (sgn(r) < 0) r += m;
        return r;
    });
}

inline ZPoly zpoly_center(const ZPoly& f, const Integer& m) {
    return f.map<Integer>([&](const Integer& a) { return mod_center(a, m); });
}

inline ZPoly zpoly_mulmod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    return zpoly_reduce(a * b, m);
}

// Division with remainder by a monic divisor, coefficients mod m.
inline std::pair<ZPoly, ZPoly> zpoly_divmod_monic_mod(const ZPoly& f, const ZPoly& g,
                                                      const Integer& m) {
    if (!g.is_monic()) throw error("zpoly_divmod_monic_mod: divisor not monic");
    std::vector<Integer> rem(f.coeffs());
    int dq = f.degree() - g.degree();
    if (dq < 0) return {ZPoly(), zpoly_reduce(f, m)};
    std::vector<Integer> quot(static_cast<std::size_t>(dq) + 1, Integer(0));
    for (int k = dq; k >= 0; --k) {
        Integer q = rem[static_cast<std::size_t>(k + g.degree())] % m;
        if (sgn(q) < 0) q += m;
        quot[static_cast<std::size_t>(k)] = q;
        if (sgn(q) == 0) continue;
        for (int i = 0; i <= g.degree(); ++i) {
            Integer& r = rem[static_cast<std::size_t>(k + i)];
            r = (r - q * g[i]) % m;
        }
    }
    ZPoly rpoly = zpoly_reduce(ZPoly(std::move(rem)), m);
    // remainder has degree < deg g by construction
    std::vector<Integer> rcut;
    for (int i = 0; i < g.degree() && i <= rpoly.degree(); ++i) rcut.push_back(rpoly[i]);
    return {zpoly_reduce(ZPoly(std::move(quot)), m), ZPoly(std::move(rcut))};
}

inline std::optional<ZPoly> try_divide_monic(const ZPoly& f, const ZPoly& g) {
    if (!g.is_monic()) throw error("try_divide_monic: divisor not monic");
    if (f.is_zero()) return ZPoly();
    if (f.degree() < g.degree()) return std::nullopt;
    std::vector<Integer> rem(f.coeffs());
    int dq = f.degree() - g.degree();
    std::vector<Integer> quot(static_cast<std::size_t>(dq) + 1, Integer(0));
    for (int k = dq; k >= 0; --k) {
        Integer q = rem[static_cast<std::size_t>(k + g.degree())];
        quot[static_cast<std::size_t>(k)] = q;
        if (sgn(q) == 0) continue;
        for (int i = 0; i <= g.degree(); ++i)
            rem[static_cast<std::size_t>(k + i)] -= q * g[i];
    }
    for (const Integer& c : rem)
        if (sgn(c) != 0) return std::nullopt;
    return ZPoly(std::move(quot));
}

// ---------------------------------------------------------------------------
// GCD over Z by modular images + CRT, verified by exact division
// ---------------------------------------------------------------------------

namespace detail {

inline Integer crt_pair(const Integer& r1, const Integer& m1, const Integer& r2,
                        const Integer& m2) {
    // m1, m2 coprime
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()) == 0)
        throw error("crt: moduli not coprime");
    Integer t = ((r2 - r1) * inv) % m2;
    if (sgn(t) < 0) t += m2;
    return r1 + m1 * t;
}

} // namespace detail

// gcd of primitive integer polynomials (primitive result, positive lc).
inline ZPoly zpoly_gcd_modular(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero()) return zpoly_primitive(b);
    if (b.is_zero()) return zpoly_primitive(a);
    ZPoly F = zpoly_primitive(a), G = zpoly_primitive(b);
    if (F.degree() > G.degree()) std::swap(F, G);
    Integer gamma = int_gcd(F.lead(), G.lead());

    Integer p = 2;
    int best_deg = -1;
    std::vector<Integer> acc; // coefficients of gamma * (monic gcd image), CRT-combined
    Integer mod = 1;
    for (int iter = 0; iter < 512; ++iter) {
        p = next_prime(p);
        if (F.lead() % p == 0 || G.lead() % p == 0) continue;
        uint64_t pu = p.get_ui();
        FpPoly fp = zpoly_mod_p(F, pu), gp = zpoly_mod_p(G, pu);
        FpPoly d = poly_gcd_euclid(fp, gp);
        if (d.degree() == 0) return ZPoly({Integer(1)});
        if (best_deg != -1 && d.degree() > best_deg) continue; // unlucky prime
        FpPoly scaled = d * Fp::from_integer(gamma, pu);
        std::vector<Integer> img;
        for (int i = 0; i <= scaled.degree(); ++i)
            img.push_back(Integer(static_cast<unsigned long>(scaled[i].value())));
        if (best_deg == -1 || d.degree() < best_deg) {
            best_deg = d.degree();
            acc = std::move(img);
            mod = p;
        } else {
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] = detail::crt_pair(acc[i], mod, img[i], p);
            mod *= p;
        }
        ZPoly cand{std::vector<Integer>(acc)};
        cand = zpoly_primitive(zpoly_center(cand, mod));
        if (!cand.is_zero() && cand.degree() == best_deg) {
            QPoly cq = zpoly_to_qpoly(cand);
            if (divides(cq, zpoly_to_qpoly(F)) && divides(cq, zpoly_to_qpoly(G)))
                return cand;
        }
    }
    throw error("zpoly_gcd_modular: did not stabilize");
}

// Monic gcd over Q; gcd(0, 0) = 0.
inline QPoly poly_gcd(const QPoly& a, const QPoly& b) {
    if (a.is_zero() && b.is_zero()) return QPoly();
    if (a.is_zero()) return qpoly_monic(b);
    if (b.is_zero()) return qpoly_monic(a);
    ZPoly g = zpoly_gcd_modular(qpoly_to_primitive(a).second, qpoly_to_primitive(b).second);
    return qpoly_monic(zpoly_to_qpoly(g));
}

// ---------------------------------------------------------------------------
// Squarefree decomposition over Q (Yun's algorithm, gcds done modularly)
// ---------------------------------------------------------------------------

// Returns [(monic squarefree part, multiplicity)]; f = lc * prod part_i^i.
inline std::vector<std::pair<QPoly, int>> squarefree_decomposition_q(const QPoly& f) {
    if (f.is_zero()) throw error("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<QPoly, int>> out;
    QPoly g = qpoly_monic(f);
    if (g.degree() == 0) return out;
    QPoly der = g.derivative();
    QPoly a = poly_gcd(g, der);
    if (a.degree() == 0) {
        out.emplace_back(g, 1);
        return out;
    }
    QPoly w = poly_divmod(g, a).first;
    QPoly y = poly_divmod(der, a).first;
    QPoly z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        QPoly fac = poly_gcd(w, z);
        if (fac.degree() > 0) out.emplace_back(qpoly_monic(fac), i);
        w = poly_divmod(w, fac).first;
        y = poly_divmod(z, fac).first;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting (monic factorizations, quadratic steps, balanced tree)
// ---------------------------------------------------------------------------

namespace detail {

struct HenselPair {
    ZPoly g, h; // monic, f = g*h mod modulus
    ZPoly a, b; // a*g + b*h = 1 mod modulus
};

// One quadratic step: from modulus m to m^2 (capped products are fine since
// everything is reduced mod m2).
inline void hensel_step(const ZPoly& f, HenselPair& P, const Integer& m) {
    Integer m2 = m * m;
    ZPoly e = zpoly_reduce(f - P.g * P.h, m2);
    auto [q, r] = zpoly_divmod_monic_mod(zpoly_mulmod(P.b, e, m2), P.g, m2);
    ZPoly gstar = zpoly_reduce(P.g + r, m2);
    ZPoly hstar = zpoly_reduce(P.h + zpoly_mulmod(P.a, e, m2) + zpoly_mulmod(q, P.h, m2), m2);
    ZPoly delta = zpoly_reduce(P.a * gstar + P.b * hstar - ZPoly({Integer(1)}), m2);
    auto [q2, r2] = zpoly_divmod_monic_mod(zpoly_mulmod(P.a, delta, m2), hstar, m2);
    ZPoly astar = zpoly_reduce(P.a - r2, m2);
    ZPoly bstar = zpoly_reduce(P.b - zpoly_mulmod(P.b, delta, m2) - zpoly_mulmod(q2, gstar, m2), m2);
    P.g = std::move(gstar);
    P.h = std::move(hstar);
    P.a = std::move(astar);
    P.b = std::move(bstar);
}

// Lift the factorization f = prod(leaves) (monic, mod p) to mod target.
// f is monic over Z. Returns factors reduced mod `modulus_out` (>= target).
inline void hensel_tree(const ZPoly& f, const std::vector<FpPoly>& leaves, std::size_t lo,
                        std::size_t hi, const Integer& p, const Integer& modulus,
                        std::vector<ZPoly>& out) {
    if (hi - lo == 1) {
        out.push_back(zpoly_reduce(f, modulus));
        return;
    }
    // balance by degree sum
    int total = 0;
    for (std::size_t i = lo; i < hi; ++i) total += leaves[i].degree();
    std::size_t mid = lo + 1;
    int left = leaves[lo].degree();
    while (mid < hi - 1 && 2 * (left + leaves[mid].degree()) <= total) {
        left += leaves[mid].degree();
        ++mid;
    }
    uint64_t pu = p.get_ui();
    FpPoly gp = FpPoly::constant(Fp(1, pu)), hp = FpPoly::constant(Fp(1, pu));
    for (std::size_t i = lo; i < mid; ++i) gp = gp * leaves[i];
    for (std::size_t i = mid; i < hi; ++i) hp = hp * leaves[i];
    auto [one, ap, bp] = poly_xgcd(gp, hp);
    if (one.degree() != 0) throw error("hensel: factors not coprime mod p");

    HenselPair P{fp_poly_lift(gp), fp_poly_lift(hp), fp_poly_lift(ap), fp_poly_lift(bp)};
    Integer m = p;
    while (m < modulus) {
        hensel_step(zpoly_reduce(f, m * m), P, m);
        m *= m;
    }
    P.g = zpoly_reduce(P.g, modulus);
    P.h = zpoly_reduce(P.h, modulus);
    hensel_tree(P.g, leaves, lo, mid, p, modulus, out);
    hensel_tree(P.h, leaves, mid, hi, p, modulus, out);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Zassenhaus factorization over Q
// ---------------------------------------------------------------------------

struct Factorization {
    Rational unit;
    std::vector<std::pair<QPoly, int>> factors; // monic irreducible, multiplicity

    QPoly expand() const {
        QPoly acc = QPoly::constant(unit);
        for (const auto& [fac, mult] : factors)
            for (int i = 0; i < mult; ++i) acc = acc * fac;
        return acc;
    }
};

namespace detail {

// Smallest odd prime at which F stays squarefree with the same degree.
inline Integer good_prime(const ZPoly& F) {
    Integer p = 2;
    for (;;) {
        p = next_prime(p);
        if (F.lead() % p == 0) continue;
        uint64_t pu = p.get_ui();
        FpPoly fp = zpoly_mod_p(F, pu);
        if (poly_gcd_euclid(fp, fp.derivative()).degree() == 0) return p;
        if (p > 20000) throw error("good_prime: no usable prime found");
    }
}

inline Integer zpoly_norm2_ceil(const ZPoly& f) {
    Integer s = 0;
    for (const Integer& c : f.coeffs()) s += c * c;
    return int_sqrt(s) + 1;
}

// Degrees realizable by products of irreducible factors mod a prime;
// used to prune subset recombination.
inline std::bitset<1024> degree_pattern(const ZPoly& F, const Integer& p) {
    uint64_t pu = p.get_ui();
    FpFactorization fac = factor_mod_p(zpoly_mod_p(F, pu));
    std::bitset<1024> reach;
    reach[0] = true;
    for (auto& [g, mult] : fac.factors) {
        (void)mult;
        reach |= reach << static_cast<std::size_t>(g.degree());
    }
    return reach;
}

// Factor a primitive squarefree integer polynomial with positive leading
// coefficient. Extracts every irreducible factor of degree <= max_deg;
// with max_deg >= deg(F) this is the complete factorization.
inline std::vector<ZPoly> zassenhaus_squarefree(ZPoly F, int max_deg) {
    std::vector<ZPoly> found;
    if (F.degree() <= 0) return found;
    // x | F
    if (sgn(F[0]) == 0) {
        std::vector<Integer> shifted(F.coeffs().begin() + 1, F.coeffs().end());
        F = ZPoly(std::move(shifted));
        if (1 <= max_deg) found.push_back(ZPoly({Integer(0), Integer(1)}));
        if (F.degree() == 0) return found;
    }
    if (F.degree() == 1) {
        if (1 <= max_deg) found.push_back(F);
        return found;
    }

    Integer p = good_prime(F);
    uint64_t pu = p.get_ui();

    // Make monic by substitution: Fstar(x) = L^(n-1) F(x/L), monic over Z.
    const Integer L = F.lead();
    const int n = F.degree();
    std::vector<Integer> fs(static_cast<std::size_t>(n) + 1);
    {
        fs[static_cast<std::size_t>(n)] = 1;
        Integer power = 1; // L^(n-1-i)
        for (int i = n - 1; i >= 0; --i) {
            fs[static_cast<std::size_t>(i)] = F[i] * power;
            power *= L;
        }
    }
    ZPoly Fstar(std::move(fs));

    FpFactorization modular = factor_mod_p(zpoly_mod_p(Fstar, pu));
    std::vector<FpPoly> leaves;
    for (auto& [g, mult] : modular.factors) {
        if (mult != 1) throw error("zassenhaus: prime not squarefree");
        leaves.push_back(g);
    }

    if (leaves.size() == 1) {
        if (n <= max_deg) found.push_back(F);
        return found;
    }

    // Degree-pattern prune using two further good primes.
    std::bitset<1024> allowed;
    allowed.set();
    if (n < 1000) {
        allowed = degree_pattern(Fstar, p);
        Integer q = p;
        for (int extra = 0; extra < 2; ++extra) {
            for (;;) {
                q = next_prime(q);
                if (Fstar.lead() % q == 0) continue;
                FpPoly fq = zpoly_mod_p(Fstar, q.get_ui());
                if (poly_gcd_euclid(fq, fq.derivative()).degree() == 0) break;
            }
            allowed &= degree_pattern(Fstar, q);
        }
    }

    // Hensel-lift to above twice the Mignotte bound for half-degree factors.
    Integer bound = int_pow(Integer(2), static_cast<unsigned long>(n / 2 + 3)) *
                    zpoly_norm2_ceil(Fstar);
    Integer modulus = p;
    while (modulus < bound) modulus *= modulus;
    std::vector<ZPoly> lifted;
    detail::hensel_tree(zpoly_reduce(Fstar, modulus), leaves, 0, leaves.size(), p, modulus,
                        lifted);

    // Subset recombination, smallest cardinality first.
    std::vector<int> avail(lifted.size());
    for (std::size_t i = 0; i < lifted.size(); ++i) avail[i] = static_cast<int>(i);
    ZPoly remaining = Fstar;
    std::vector<ZPoly> star_factors;

    auto extract = [&](const std::vector<int>& subset) -> bool {
        int degsum = 0;
        for (int i : subset) degsum += lifted[static_cast<std::size_t>(i)].degree();
        if (degsum > remaining.degree() / 2 || degsum > max_deg) return false;
        if (!allowed[static_cast<std::size_t>(degsum)]) return false;
        // quick test on the constant coefficient
        Integer c0 = 1;
        for (int i : subset) c0 = (c0 * lifted[static_cast<std::size_t>(i)][0]) % modulus;
        c0 = mod_center(c0, modulus);
        if (sgn(c0) == 0 || remaining[0] % c0 != 0) return false;
        ZPoly prod = ZPoly({Integer(1)});
        for (int i : subset) prod = zpoly_mulmod(prod, lifted[static_cast<std::size_t>(i)], modulus);
        prod = zpoly_center(prod, modulus);
        auto quot = try_divide_monic(remaining, prod);
        if (!quot) return false;
        star_factors.push_back(prod);
        remaining = *quot;
        std::vector<int> keep;
        for (int i : avail) {
            bool used = false;
            for (int j : subset)
                if (i == j) used = true;
            if (!used) keep.push_back(i);
        }
        avail = std::move(keep);
        return true;
    };

    bool progress = true;
    while (progress && remaining.degree() > 0 && !avail.empty()) {
        progress = false;
        for (std::size_t card = 1; card <= avail.size() && !progress; ++card) {
            std::vector<int> idx(card);
            // enumerate combinations of avail of size card
            std::vector<std::size_t> pos(card);
            for (std::size_t i = 0; i < card; ++i) pos[i] = i;
            for (;;) {
                std::vector<int> subset;
                subset.reserve(card);
                for (std::size_t i = 0; i < card; ++i) subset.push_back(avail[pos[i]]);
                if (extract(subset)) {
                    progress = true;
                    break;
                }
                // next combination
                std::size_t i = card;
                while (i > 0 && pos[i - 1] == avail.size() - card + (i - 1)) --i;
                if (i == 0) break;
                ++pos[i - 1];
                for (std::size_t j = i; j < card; ++j) pos[j] = pos[j - 1] + 1;
            }
        }
    }
    if (remaining.degree() > 0 && remaining.degree() <= max_deg &&
        remaining.degree() <= n)
        star_factors.push_back(remaining);

    // Undo the monic substitution: G(x) = primitive part of Gstar(L x).
    for (ZPoly& gs : star_factors) {
        Integer power = 1;
        std::vector<Integer> c(static_cast<std::size_t>(gs.degree()) + 1);
        for (int i = 0; i <= gs.degree(); ++i) {
            c[static_cast<std::size_t>(i)] = gs[i] * power;
            power *= L;
        }
        found.push_back(zpoly_primitive(ZPoly(std::move(c))));
    }
    return found;
}

} // namespace detail

// Complete irreducible factorization over Q: clear denominators, squarefree
// decomposition, factorization mod a good prime, quadratic Hensel lifting to
// past the Mignotte bound, subset recombination of the modular factors.
inline Factorization factor_over_q(const QPoly& f) {
    if (f.is_zero()) throw error("factor_over_q: zero polynomial");
    Factorization result;
    result.unit = f.lead();
    if (f.degree() == 0) return result;
    for (auto& [part, mult] : squarefree_decomposition_q(f)) {
        ZPoly prim = qpoly_to_primitive(part).second;
        for (ZPoly& g : detail::zassenhaus_squarefree(prim, prim.degree()))
            result.factors.emplace_back(qpoly_monic(zpoly_to_qpoly(g)), mult);
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& a, const auto& b) { return qpoly_less(a.first, b.first); });
    return result;
}

// All monic irreducible factors of degree <= max_deg, with multiplicities.
// Much cheaper than a full factorization when max_deg is small: subset
// recombination never forms products of degree beyond the cap.
inline std::vector<std::pair<QPoly, int>> small_factors(const QPoly& f, int max_deg) {
    if (f.is_zero()) throw error("small_factors: zero polynomial");
    std::vector<std::pair<QPoly, int>> out;
    if (f.degree() == 0) return out;
    for (auto& [part, mult] : squarefree_decomposition_q(f)) {
        ZPoly prim = qpoly_to_primitive(part).second;
        for (ZPoly& g : detail::zassenhaus_squarefree(prim, max_deg))
            if (g.degree() <= max_deg)
                out.emplace_back(qpoly_monic(zpoly_to_qpoly(g)), mult);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return qpoly_less(a.first, b.first); });
    return out;
}

// All rational roots (multiplicity discarded).
inline std::set<Rational> rational_roots(const QPoly& f) {
    std::set<Rational> roots;
    for (auto& [fac, mult] : small_factors(f, 1)) {
        (void)mult;
        if (fac.degree() == 1) roots.insert(-fac[0]);
    }
    return roots;
}

} // namespace ectk
