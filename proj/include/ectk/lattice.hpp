#pragma once

#include <vector>

#include "ectk/error.hpp"
#include "ectk/rational.hpp"

namespace ectk {

using IntVec = std::vector<Integer>;
using IntMat = std::vector<IntVec>;

namespace detail {

inline Integer round_to_nearest(const Rational& q) {
    // floor(q + 1/2)
    Integer num = 2 * q.numerator() + q.denominator();
    Integer den = 2 * q.denominator();
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
}

struct Gso {
    std::vector<std::vector<Rational>> mu;
    std::vector<Rational> norm2; // squared lengths of the orthogonalized rows

    static Gso compute(const IntMat& b) {
        std::size_t m = b.size();
        Gso g;
        g.mu.assign(m, std::vector<Rational>(m, Rational()));
        g.norm2.assign(m, Rational());
        std::vector<std::vector<Rational>> star(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Rational> v;
            v.reserve(b[i].size());
            for (const Integer& x : b[i]) v.emplace_back(x);
            for (std::size_t j = 0; j < i; ++j) {
                if (g.norm2[j].is_zero()) throw error("lll: dependent rows");
                Rational dot;
                for (std::size_t t = 0; t < v.size(); ++t)
                    dot += Rational(b[i][t]) * star[j][t];
                g.mu[i][j] = dot / g.norm2[j];
                for (std::size_t t = 0; t < v.size(); ++t)
                    v[t] -= g.mu[i][j] * star[j][t];
            }
            Rational n2;
            for (const Rational& x : v) n2 += x * x;
            g.norm2[i] = n2;
            if (n2.is_zero()) throw error("lll: dependent rows");
            star[i] = std::move(v);
        }
        return g;
    }
};

} // namespace detail

// LLL reduction with delta = 3/4 for integer bases of dimension <= 8.
// The Gram-Schmidt data is recomputed exactly after every swap; fine at
// this dimension and keeps the update logic trivial to audit.
inline IntMat lll_reduce(IntMat basis) {
    std::size_t m = basis.size();
    if (m == 0) return basis;
    if (m > 8) throw error("lll_reduce: dimension > 8");
    for (const IntVec& row : basis)
        if (row.size() != basis[0].size()) throw error("lll_reduce: ragged matrix");

    const Rational delta(Integer(3), Integer(4));
    detail::Gso g = detail::Gso::compute(basis);
    std::size_t k = 1;
    while (k < m) {
        for (std::size_t j = k; j-- > 0;) {
            Integer r = detail::round_to_nearest(g.mu[k][j]);
            if (sgn(r) != 0) {
                for (std::size_t t = 0; t < basis[k].size(); ++t)
                    basis[k][t] -= r * basis[j][t];
                // b_k -= r b_j leaves the orthogonalization unchanged;
                // only row k of mu moves
                Rational rq{Integer(r)};
                for (std::size_t i = 0; i < j; ++i) g.mu[k][i] -= rq * g.mu[j][i];
                g.mu[k][j] -= rq;
            }
        }
        Rational lhs = g.norm2[k];
        Rational rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm2[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            g = detail::Gso::compute(basis);
            k = k > 1 ? k - 1 : 1;
        }
    }
    return basis;
}

} // namespace ectk
