#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "ectk/divpoly.hpp"

namespace ectk {

// Invariant-factor presentation Z/m + Z/n with m | n; m = 1 means cyclic.
struct TorsionGroup {
    long m = 1, n = 1;

    long order() const { return m * n; }
    long exponent() const { return n; }
    friend bool operator==(const TorsionGroup& a, const TorsionGroup& b) {
        return a.m == b.m && a.n == b.n;
    }
    friend bool operator!=(const TorsionGroup& a, const TorsionGroup& b) { return !(a == b); }
    std::string str() const {
        if (m == 1 && n == 1) return "trivial";
        if (m == 1) return "Z/" + std::to_string(n);
        return "Z/" + std::to_string(m) + " + Z/" + std::to_string(n);
    }
};

inline bool in_mazur_list(const TorsionGroup& g) {
    if (g.m == 1) return (g.n >= 1 && g.n <= 12 && g.n != 11);
    if (g.m == 2) return g.n == 2 || g.n == 4 || g.n == 6 || g.n == 8;
    return false;
}

// Theorem list for rational curves over cubic fields.
inline bool in_cubic_list(const TorsionGroup& g) {
    if (g.m == 1)
        return (g.n >= 1 && g.n <= 10) || g.n == 12 || g.n == 13 || g.n == 14 ||
               g.n == 18 || g.n == 21;
    if (g.m == 2) return g.n == 2 || g.n == 4 || g.n == 6 || g.n == 8 || g.n == 14;
    return false;
}

struct ReductionCount {
    uint64_t p = 0;
    long count = 0;
};

template <class F>
struct TorsionComputation {
    EllipticCurve<Rational> curve; // the input model over Q
    NumberField field;
    TorsionGroup group;
    std::vector<CurvePoint<F>> witnesses; // generators on the input model over K
    std::vector<ReductionCount> bound_audit;
    long combined_bound = 0;
};

using TorsionComputationQ = TorsionComputation<Rational>;
using TorsionComputationK = TorsionComputation<FieldElement>;

namespace detail {

// ---- contexts: rational vs number-field root/square machinery -------------

struct QTorsionCtx {
    using Elem = Rational;
    NumberField field = NumberField::rationals();

    std::vector<Rational> roots(const QPoly& h) const {
        auto s = rational_roots(h);
        return std::vector<Rational>(s.begin(), s.end());
    }
    std::optional<Rational> sqrt(const Rational& a) const {
        Rational r;
        if (rational_is_square(a, &r)) return r;
        return std::nullopt;
    }
    Rational embed(const Rational& r) const { return r; }
    EllipticCurve<Rational> curve(const EllipticCurve<Rational>& e) const { return e; }
};

struct KTorsionCtx {
    using Elem = FieldElement;
    NumberField field;

    std::vector<FieldElement> roots(const QPoly& h) const { return root_in_field(h, field); }
    std::optional<FieldElement> sqrt(const FieldElement& a) const {
        auto [ok, w] = is_square(a);
        if (ok) return *w;
        return std::nullopt;
    }
    FieldElement embed(const Rational& r) const { return field.embed(r); }
    EllipticCurve<FieldElement> curve(const EllipticCurve<Rational>& e) const {
        return embed_curve(e, field);
    }
};

// division polynomial source for one short rational curve
struct DivSource {
    std::optional<DivPolyCache<Integer>> zc;
    std::optional<DivPolyCache<Rational>> qc;

    explicit DivSource(const EllipticCurve<Rational>& s) {
        if (s.a4().is_integer() && s.a6().is_integer())
            zc.emplace(s.a4().numerator(), s.a6().numerator());
        else
            qc.emplace(s.a4(), s.a6());
    }
    QPoly t(long n) {
        if (zc) return zpoly_to_qpoly(zc->get(n));
        return qc->get(n);
    }
    // x-polynomial whose roots are exactly the x-coordinates of points of
    // exact order l^k (for l = 2, k = 1 this is the 2-division cubic)
    QPoly exact_order_poly(long l, int k) {
        long cur = 1;
        for (int i = 0; i < k; ++i) cur *= l;
        if (cur == 2) {
            if (zc) return zpoly_to_qpoly(zc->rhs_cubic());
            return qc->rhs_cubic();
        }
        QPoly num = t(cur);
        QPoly den = t(cur / l);
        return poly_divmod(num, den).first;
    }
};

} // namespace detail

// ---------------------------------------------------------------------------
// The torsion engine
// ---------------------------------------------------------------------------

namespace detail {

inline long lpart(long n, long l) {
    long v = 1;
    while (n % l == 0) {
        n /= l;
        v *= l;
    }
    return v;
}

template <class Ctx>
class TorsionEngine {
public:
    using Elem = typename Ctx::Elem;

    TorsionEngine(const EllipticCurve<Rational>& e, Ctx ctx)
        : e_(e), ctx_(std::move(ctx)), chg_(short_model(e)), divsrc_(chg_.target) {
        short_k_ = ctx_.curve(chg_.target);
    }

    TorsionComputation<Elem> run() {
        gather_reduction_counts(3);
        TorsionComputation<Elem> result;
        result.curve = e_;
        result.field = ctx_.field;

        std::vector<long> primes = bound_prime_support();
        long m = 1, n = 1;
        std::vector<CurvePoint<Elem>> gens; // per-prime top generators
        std::vector<CurvePoint<Elem>> cogens;
        for (long l : primes) {
            auto [a, b, p_top, p_ind] = sylow(l);
            if (a > 0) {
                m *= lpart_pow(l, a);
                cogens.push_back(*p_ind);
            }
            if (b > 0) {
                n *= lpart_pow(l, b);
                gens.push_back(*p_top);
            }
        }
        result.group = TorsionGroup{m, n};
        result.bound_audit = audit_; // refinement may have added primes
        result.combined_bound = combined_bound_;

        // assemble witnesses: P of order n, plus Q of order m if non-cyclic
        if (n > 1) {
            CurvePoint<Elem> p = sum_points(gens);
            if (!certify_order(p, n)) throw error("torsion: witness failed certification");
            result.witnesses.push_back(map_back(p));
        }
        if (m > 1) {
            CurvePoint<Elem> q = sum_points(cogens);
            if (!certify_order(q, m)) throw error("torsion: witness failed certification");
            // the subgroup generated by the two witnesses has m*n elements
            CurvePoint<Elem> p = sum_points(gens);
            std::vector<CurvePoint<Elem>> seen;
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < m; ++j) {
                    CurvePoint<Elem> pt = add(scalar_mul(i, p), scalar_mul(j, q));
                    for (auto& s : seen)
                        if (s == pt) throw error("torsion: generators not independent");
                    seen.push_back(pt);
                }
            result.witnesses.push_back(map_back(q));
        }
        return result;
    }

private:
    static long lpart_pow(long l, int k) {
        long r = 1;
        for (int i = 0; i < k; ++i) r *= l;
        return r;
    }

    CurvePoint<Elem> sum_points(const std::vector<CurvePoint<Elem>>& pts) {
        CurvePoint<Elem> acc = CurvePoint<Elem>::infinity(short_k_);
        for (auto& p : pts) acc = add(acc, p);
        return acc;
    }

    CurvePoint<Elem> map_back(const CurvePoint<Elem>& p) const {
        if (p.is_infinity()) return CurvePoint<Elem>::infinity(ctx_.curve(e_));
        // backward change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t over K
        Elem u = ctx_.embed(chg_.u), r = ctx_.embed(chg_.r), s = ctx_.embed(chg_.s),
             t = ctx_.embed(chg_.t);
        Elem u2 = u * u;
        Elem x = u2 * p.x() + r;
        Elem y = u2 * u * p.y() + s * u2 * p.x() + t;
        return CurvePoint<Elem>(ctx_.curve(e_), x, y);
    }

    void gather_reduction_counts(std::size_t want) {
        uint64_t p = 3;
        while (audit_.size() < want) {
            p = next_prime(Integer(static_cast<unsigned long>(p))).get_ui();
            if (p > 20000)
                throw error("torsion: no usable reduction primes below the cap");
            if (!try_prime(p)) continue;
        }
        recompute_bound();
    }

    bool try_prime(uint64_t p) {
        for (auto& a : audit_)
            if (a.p == p) return false;
        try {
            auto rm = residue_map(ctx_.field, p);
            if (!rm) return false;
            auto reduced = reduce_mod(ctx_.curve(e_), *rm);
            long count = count_points(reduced);
            audit_.push_back(ReductionCount{p, count});
            return true;
        } catch (const error&) {
            return false;
        }
    }

    void recompute_bound() {
        // per prime l: v_l(bound) = min over audits with p != l of v_l(count)
        std::map<long, int> val;
        std::set<long> support;
        for (auto& a : audit_) {
            long c = a.count;
            for (long l = 2; l * l <= c; ++l)
                if (c % l == 0) {
                    support.insert(l);
                    while (c % l == 0) c /= l;
                }
            if (c > 1) support.insert(c);
        }
        combined_bound_ = 1;
        lbound_.clear();
        for (long l : support) {
            int best = -1;
            for (auto& a : audit_) {
                if (static_cast<long>(a.p) == l) continue;
                int v = 0;
                long c = a.count;
                while (c % l == 0) {
                    c /= l;
                    ++v;
                }
                if (best < 0 || v < best) best = v;
            }
            if (best > 0) {
                lbound_[l] = best;
                for (int i = 0; i < best; ++i) combined_bound_ *= l;
            }
        }
    }

    std::vector<long> bound_prime_support() const {
        std::vector<long> out;
        for (auto& [l, v] : lbound_) out.push_back(l);
        return out;
    }

    // Shrink the l-part of the bound with extra reduction primes before
    // paying for a large division-polynomial factorization.
    void refine(long l, int target_k) {
        std::size_t extra = 0;
        uint64_t p = audit_.empty() ? 3 : audit_.back().p;
        while (extra < 12 && lbound_.count(l) && lbound_[l] >= target_k) {
            p = next_prime(Integer(static_cast<unsigned long>(p))).get_ui();
            if (p > 50000) break;
            if (!try_prime(p)) continue;
            ++extra;
            recompute_bound();
        }
    }

    // points of exact order l^k on the short model over K
    std::vector<CurvePoint<Elem>> level_points(long l, int k) {
        QPoly poly = divsrc_.exact_order_poly(l, k);
        std::vector<CurvePoint<Elem>> pts;
        for (const Elem& x0 : ctx_.roots(poly)) {
            // y^2 = x0^3 + A x0 + B on the short model
            Elem fx = x0 * x0 * x0 + ctx_.embed(chg_.target.a4()) * x0 +
                      ctx_.embed(chg_.target.a6());
            if (fx.is_zero()) {
                pts.emplace_back(short_k_, x0, fx.zero());
                continue;
            }
            auto y = ctx_.sqrt(fx);
            if (!y) continue;
            pts.emplace_back(short_k_, x0, *y);
            pts.emplace_back(short_k_, x0, -*y);
        }
        return pts;
    }

    // Sylow structure at l: returns (a, b, point of order l^b, independent
    // point of order l^a) with the group = Z/l^a + Z/l^b, a <= b.
    std::tuple<int, int, std::optional<CurvePoint<Elem>>, std::optional<CurvePoint<Elem>>>
    sylow(long l) {
        int e = lbound_.count(l) ? lbound_[l] : 0;
        // candidate orders tested in decreasing order; first success is the
        // exponent b of the l-Sylow subgroup
        int b = 0;
        std::vector<CurvePoint<Elem>> top;
        for (int k = e; k >= 1; --k) {
            long lk = lpart_pow(l, k);
            long deg = (lk * lk - lk * lk / (l * l)) / 2;
            if (deg > 120 && k == e) {
                refine(l, k);
                e = lbound_.count(l) ? lbound_[l] : 0;
                if (k > e) {
                    k = e + 1;
                    continue;
                }
            }
            if (lk > 37)
                throw error("torsion: candidate order " + std::to_string(lk) +
                            " beyond supported range");
            top = level_points(l, k);
            if (!top.empty()) {
                b = k;
                break;
            }
        }
        if (b == 0) return {0, 0, std::nullopt, std::nullopt};
        // second invariant factor: full l^j torsion must have l^{2j} points;
        // the group order bound caps a at e - b
        int a = 0;
        long cumulative = 0;
        std::vector<CurvePoint<Elem>> lvl1;
        for (int j = 1; j <= e - b; ++j) {
            auto pts = (j == b) ? top : level_points(l, j);
            if (j == 1) lvl1 = pts;
            cumulative += static_cast<long>(pts.size());
            if (cumulative + 1 == lpart_pow(l, 2 * j))
                a = j;
            else
                break;
        }
        if (lpart_pow(l, a) > 4)
            throw error("torsion: non-cyclic invariant factor exceeds 4 (internal error)");
        std::optional<CurvePoint<Elem>> p_top = top.front();
        std::optional<CurvePoint<Elem>> p_ind;
        if (a > 0) {
            // find a point of order l^a independent of the top generator
            long la = lpart_pow(l, a);
            long lb = lpart_pow(l, b);
            std::vector<CurvePoint<Elem>> in_span;
            for (long i = 0; i < la; ++i)
                in_span.push_back(scalar_mul(i * (lb / la), *p_top));
            auto pts = (a == b) ? top : (a == 1 ? lvl1 : level_points(l, a));
            for (auto& q : pts) {
                bool inside = false;
                for (auto& s : in_span)
                    if (s == q) inside = true;
                if (!inside) {
                    p_ind = q;
                    break;
                }
            }
            if (!p_ind) throw error("torsion: could not find independent generator");
        }
        return {a, b, p_top, p_ind};
    }

    EllipticCurve<Rational> e_;
    Ctx ctx_;
    CoordinateChange<Rational> chg_;
    DivSource divsrc_;
    EllipticCurve<Elem> short_k_;
    std::vector<ReductionCount> audit_;
    std::map<long, int> lbound_;
    long combined_bound_ = 1;
};

} // namespace detail

// Exact torsion subgroup of E(Q): reduction bounds at three good primes
// >= 5, then realization of each prime-power level through rational roots of
// the relevant division polynomials. The result always lands in Mazur's list.
inline TorsionComputationQ torsion_over_q(const EllipticCurve<Rational>& e) {
    detail::TorsionEngine<detail::QTorsionCtx> engine(e, detail::QTorsionCtx{});
    TorsionComputationQ r = engine.run();
    if (!in_mazur_list(r.group))
        throw error("torsion_over_q: computed group " + r.group.str() +
                    " is outside Mazur's list (internal error)");
    return r;
}

// Exact torsion subgroup of E(K) for a rational curve E and a number field K
// of degree <= 6. K = Q (degree 1) is legal and agrees with torsion_over_q.
inline TorsionComputationK torsion_over_k(const EllipticCurve<Rational>& e,
                                          const NumberField& K) {
    if (K.degree() > 6) throw error("torsion_over_k: field degree exceeds 6");
    detail::TorsionEngine<detail::KTorsionCtx> engine(e, detail::KTorsionCtx{K});
    return engine.run();
}

} // namespace ectk
