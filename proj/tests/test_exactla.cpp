#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "heis/exactla.hpp"

using namespace heis;

namespace {

SparseMat dense(const std::vector<std::vector<long>>& rows) {
    SparseMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.add(r, c, rows[r][c]);
    return m;
}

SparseMat random_sparse(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<int> coin(0, 3), val(-4, 4);
    SparseMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (coin(rng) == 0) {
                Rational q(val(rng), 1 + coin(rng));
                q.canonicalize();  // the two-integer constructor does not reduce
                m.add(r, c, q);
            }
    return m;
}

}  // namespace

TEST_CASE("rationals stay canonical") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("5")) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("rank examples") {
    CHECK(rank(identity_mat(2)) == 2);
    CHECK(rank(dense({{1, 1}, {1, 1}})) == 1);
    CHECK(rank(dense({{1, 2}, {2, 4}, {3, 6}})) == 1);
    CHECK(rank(SparseMat(3, 4)) == 0);
}

TEST_CASE("homology_dim examples") {
    CHECK(homology_dim(SparseMat(1, 1), SparseMat(1, 1)) == 1);
    CHECK(homology_dim(dense({{1}}), SparseMat(1, 1)) == 0);
    CHECK(homology_dim(dense({{1}, {0}}), dense({{0, 1}})) == 0);
    CHECK_THROWS_AS(homology_dim(dense({{1}}), dense({{1}})), CompositionNotZero);
    CHECK_THROWS_AS(homology_dim(dense({{1}, {0}}), dense({{1}})), ShapeMismatch);
}

TEST_CASE("no stored zeros") {
    SparseMat m(2, 2);
    m.add(0, 0, 1);
    m.add(0, 0, -1);
    CHECK(m.nnz() == 0);
    CHECK(m.is_zero());
    CHECK_THROWS(m.add(2, 0, 1));
}

TEST_CASE("rank is transpose and permutation invariant") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        std::uniform_int_distribution<std::size_t> dim(1, 30);
        const std::size_t r = dim(rng), c = dim(rng);
        const SparseMat m = random_sparse(rng, r, c);
        const std::size_t k = rank(m);
        CHECK(k == rank(m.transpose()));
        CHECK(k <= std::min(r, c));

        std::vector<std::size_t> pr(r), pc(c);
        std::iota(pr.begin(), pr.end(), 0);
        std::iota(pc.begin(), pc.end(), 0);
        std::shuffle(pr.begin(), pr.end(), rng);
        std::shuffle(pc.begin(), pc.end(), rng);
        SparseMat p(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (const auto& [j, v] : m.row(i)) p.add(pr[i], pc[static_cast<std::size_t>(j)], v);
        CHECK(rank(p) == k);
    }
}

TEST_CASE("homology of random complexes is bounded by the middle dimension") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        // d_out = B, d_in = N with B N = 0 built from a kernel basis of B
        const SparseMat b = random_sparse(rng, 4, 9);
        const auto ker = kernel_basis(b);
        SparseMat n(9, ker.size());
        for (std::size_t k = 0; k < ker.size(); ++k)
            for (const auto& [i, v] : ker[k]) n.add(static_cast<std::size_t>(i), k, v);
        CHECK((b * n).is_zero());
        const std::size_t h = homology_dim(n, b);
        CHECK(h == 0);  // im N is all of ker B
        SparseMat half(9, ker.size() / 2);
        for (std::size_t k = 0; k < ker.size() / 2; ++k)
            for (const auto& [i, v] : ker[k]) half.add(static_cast<std::size_t>(i), k, v);
        CHECK(homology_dim(half, b) == ker.size() - ker.size() / 2);
        CHECK(homology_dim(half, b) <= 9);
    }
}

TEST_CASE("kernel basis spans the null space") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const SparseMat m = random_sparse(rng, 6, 10);
        const auto ker = kernel_basis(m);
        CHECK(ker.size() + rank(m) == 10);
        Echelon e;
        for (const auto& v : ker) {
            CHECK(e.insert(v));
            for (std::size_t r = 0; r < m.nrows(); ++r) {
                Rational dot = 0;
                for (const auto& [j, x] : m.row(r)) dot += x * sparse_get(v, j);
                CHECK(dot == 0);
            }
        }
    }
}

TEST_CASE("echelon reduction records the combination used") {
    Echelon e;
    CHECK(e.insert({{0, 1}, {1, 2}}, {{0, 1}}));
    CHECK(e.insert({{1, 1}, {2, 1}}, {{1, 1}}));
    CHECK_FALSE(e.insert({{0, 1}, {1, 3}, {2, 1}}, {{2, 1}}));
    SparseVec tag;
    const SparseVec rest = e.reduce({{0, 2}, {1, 5}, {2, 1}}, &tag);
    CHECK(rest.empty());
    CHECK(sparse_get(tag, 0) == 2);
    CHECK(sparse_get(tag, 1) == 1);
    CHECK(e.rank() == 2);
}

TEST_CASE("quotient coordinates") {
    // relations: e0 - e1; basis: e0, e2
    QuotientCoordinates qc({{{0, 1}, {1, -1}}}, {{{0, 1}}, {{2, 1}}});
    CHECK(qc.basis_independent());
    const auto c = qc.coordinates({{1, 3}, {2, -1}});
    REQUIRE(c.size() == 2);
    CHECK(c[0] == 3);
    CHECK(c[1] == -1);
    CHECK_FALSE(qc.in_span({{3, 1}}));
    CHECK_THROWS_AS(qc.coordinates({{3, 1}}), Error);
    QuotientCoordinates dependent({{{0, 1}, {1, -1}}}, {{{0, 1}}, {{1, 1}}});
    CHECK_FALSE(dependent.basis_independent());
}
