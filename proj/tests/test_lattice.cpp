#include <catch2/catch_amalgamated.hpp>

#include "ectk/lattice.hpp"
#include "ectk/prime_field.hpp"

using namespace ectk;

namespace {

Integer det_bareiss(IntMat m) {
    // fraction-free Gaussian elimination; m square
    std::size_t n = m.size();
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m[k][k]) == 0) {
            std::size_t s = k + 1;
            while (s < n && sgn(m[s][k]) == 0) ++s;
            if (s == n) return Integer(0);
            std::swap(m[k], m[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]);
}

Integer sup_norm(const IntVec& v) {
    Integer m = 0;
    for (const Integer& x : v) {
        Integer a = abs(x);
        if (a > m) m = a;
    }
    return m;
}

Integer norm2(const IntVec& v) {
    Integer s = 0;
    for (const Integer& x : v) s += x * x;
    return s;
}

} // namespace

TEST_CASE("identity basis is already reduced", "[lattice]") {
    IntMat basis = {{1, 0}, {0, 1}};
    CHECK(lll_reduce(basis) == basis);
}

TEST_CASE("reduction finds the short vector in {(1,0),(10,1)}", "[lattice]") {
    IntMat reduced = lll_reduce({{1, 0}, {10, 1}});
    // oracle: exhaustive short-vector search in 2 dims says the shortest
    // nonzero vector has sup-norm 1; the reduced basis must contain one.
    bool found = false;
    for (const IntVec& v : reduced)
        if (sup_norm(v) <= 1 && sgn(norm2(v)) != 0) found = true;
    CHECK(found);
}

TEST_CASE("dimension above 8 is rejected", "[lattice]") {
    IntMat basis(9, IntVec(9, 0));
    for (int i = 0; i < 9; ++i) basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    CHECK_THROWS_AS(lll_reduce(basis), error);
    CHECK_THROWS_AS(lll_reduce({{1, 1}, {2, 2}}), error); // dependent rows
}

TEST_CASE("determinant preserved up to sign on random 4x4 bases", "[lattice][property]") {
    SplitMix64 rng(20240815);
    for (int trial = 0; trial < 30; ++trial) {
        IntMat b(4, IntVec(4));
        for (auto& row : b)
            for (auto& x : row) x = Integer(static_cast<long>(rng.below(41)) - 20);
        Integer d = det_bareiss(b);
        if (sgn(d) == 0) continue;
        IntMat r = lll_reduce(b);
        Integer d2 = det_bareiss(r);
        CHECK(abs(d2) == abs(d));
        // the reduced first vector is no worse than the 2^(n-1) guarantee
        // relative to the shortest original row
        Integer best = norm2(b[0]);
        for (const auto& row : b) best = std::min(best, norm2(row));
        CHECK(norm2(r[0]) <= Integer(8) * best);
    }
}

TEST_CASE("reduction never lengthens the worst basis vector", "[lattice]") {
    IntMat b = {{1, 0, 3}, {0, 1, 7}, {0, 0, 10}};
    IntMat r = lll_reduce(b);
    Integer worst_in = 0, worst_out = 0;
    for (auto& v : b) worst_in = std::max(worst_in, norm2(v));
    for (auto& v : r) worst_out = std::max(worst_out, norm2(v));
    CHECK(worst_out <= worst_in);
    CHECK(abs(det_bareiss(r)) == 10);
}
