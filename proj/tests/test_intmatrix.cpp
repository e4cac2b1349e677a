#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fpt/intmatrix.hpp"
#include "fpt/linalg.hpp"

using namespace fpt;

namespace {

IntMatrix random_int_matrix(std::mt19937& rng, size_t r, size_t c, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
    return m;
}

IntMatrix random_unimodular(std::mt19937& rng, size_t n) {
    // product of random elementary row operations
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int t = 0; t < 12; ++t) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Int f = coef(rng);
        for (size_t k = 0; k < n; ++k) u.at(i, k) += f * u.at(j, k);
    }
    return u;
}

bool in_column_lattice(const IntMatrix& h, const IntVec& v) {
    // Solve H x = v over Q and check integrality of the (unique echelon) solution.
    ScalarMat hs = h.to_scalar();
    ScalarVec vs = to_scalar_vec(v);
    auto x = solve_linear(hs, vs);
    if (!x) return false;
    for (const auto& c : *x)
        if (!c.is_rational() || boost::multiprecision::denominator(c.as_rational()) != 1)
            return false;
    return true;
}

}  // namespace

TEST_CASE("hnf basics from known cases") {
    IntMatrix m = IntMatrix::from_rows({{4, 6}});
    auto r = hnf(m);
    CHECK(r.h.at(0, 0) == 2);
    CHECK(r.h.at(0, 1) == 0);

    IntMatrix id = IntMatrix::identity(3);
    auto ri = hnf(id);
    CHECK(ri.h == id);
    CHECK(ri.u == id);

    IntMatrix m2 = IntMatrix::from_rows({{2, 1}, {0, 1}});
    auto r2 = hnf(m2);
    Int det = r2.h.determinant();
    CHECK((det == 2 || det == -2));
}

TEST_CASE("hnf properties on random matrices") {
    std::mt19937 rng(42);
    for (int t = 0; t < 60; ++t) {
        size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        IntMatrix m = random_int_matrix(rng, rows, cols);
        auto r = hnf(m);
        CHECK(m * r.u == r.h);
        Int ud = r.u.determinant();
        CHECK((ud == 1 || ud == -1));
        // idempotence
        auto r2 = hnf(r.h);
        CHECK(r2.h == r.h);
        // equal column lattices (mutual membership)
        for (size_t j = 0; j < cols; ++j) {
            if (rank(m.to_scalar()) == 0) break;
            IntVec cm = m.col(j);
            bool all_zero = true;
            for (const auto& x : cm) all_zero &= (x == 0);
            if (!all_zero) CHECK(in_column_lattice(r.h, cm));
        }
    }
}

TEST_CASE("row_hnf tracks u and u_inv") {
    std::mt19937 rng(43);
    for (int t = 0; t < 40; ++t) {
        size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        IntMatrix m = random_int_matrix(rng, rows, cols);
        auto r = row_hnf(m);
        CHECK(r.u * m == r.h);
        CHECK(r.u * r.u_inv == IntMatrix::identity(rows));
        CHECK(r.u_inv * r.u == IntMatrix::identity(rows));
    }
}

TEST_CASE("smith invariants") {
    IntMatrix d = IntMatrix::from_rows({{2, 0}, {0, 3}});
    CHECK(smith_invariants(d) == std::vector<Int>{1, 6});
    CHECK(smith_invariants(IntMatrix::identity(3)) == std::vector<Int>{1, 1, 1});
    IntMatrix col = IntMatrix::from_rows({{2}, {0}});
    CHECK(smith_invariants(col) == std::vector<Int>{2});
}

TEST_CASE("smith invariants unimodular-invariant") {
    std::mt19937 rng(44);
    for (int t = 0; t < 25; ++t) {
        size_t n = 2 + rng() % 3;
        IntMatrix m = random_int_matrix(rng, n, n, -6, 6);
        IntMatrix l = random_unimodular(rng, n), r = random_unimodular(rng, n);
        CHECK(smith_invariants(m) == smith_invariants(l * m * r));
    }
}

TEST_CASE("integer kernel") {
    IntMatrix m = IntMatrix::from_rows({{1, 2, 3}});
    auto ker = integer_kernel(m);
    CHECK(ker.size() == 2);
    for (const auto& v : ker) {
        Int s = v[0] + 2 * v[1] + 3 * v[2];
        CHECK(s == 0);
    }
    // kernel lattice is saturated
    LatticeBasis kb{3, ker};
    CHECK(is_saturated(kb));
}

TEST_CASE("primitive covector") {
    CHECK(primitive_covector({Scalar(Rat(2, 3)), Scalar(Rat(4, 3))}) == IntVec{1, 2});
    CHECK(primitive_covector({Scalar(-4), Scalar(-6)}) == IntVec{-2, -3});
    CHECK(primitive_covector({Scalar(0), Scalar(5)}) == IntVec{0, 1});
    CHECK_THROWS_AS(primitive_covector({Scalar(0), Scalar(0)}), Error);
    CHECK_THROWS_AS(primitive_covector({Scalar::sqrt_of(2)}), Error);
    // scale invariance
    std::mt19937 rng(45);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int t = 0; t < 30; ++t) {
        ScalarVec v(3);
        bool nz = false;
        for (auto& x : v) {
            x = Scalar(Rat(d(rng), std::abs(d(rng)) + 1));
            nz |= !x.is_zero();
        }
        if (!nz) continue;
        Scalar lambda(Rat(std::abs(d(rng)) + 1, std::abs(d(rng)) + 1));
        CHECK(primitive_covector(v) == primitive_covector(vec_scale(lambda, v)));
    }
}

TEST_CASE("lattice intersect subspace") {
    auto b1 = lattice_intersect_subspace(2, {{Scalar(1), Scalar(1)}});
    REQUIRE(b1.basis_vectors.size() == 1);
    CHECK((b1.basis_vectors[0] == IntVec{1, 1} || b1.basis_vectors[0] == IntVec{-1, -1}));

    auto b2 = lattice_intersect_subspace(2, {{Scalar(Rat(1, 2)), Scalar(1)}});
    REQUIRE(b2.basis_vectors.size() == 1);
    CHECK((b2.basis_vectors[0] == IntVec{1, 2} || b2.basis_vectors[0] == IntVec{-1, -2}));

    auto b3 = lattice_intersect_subspace(2, {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}});
    CHECK(b3.basis_vectors.size() == 2);
    CHECK(is_saturated(b3));
}

TEST_CASE("lattice complement") {
    LatticeBasis s{2, {{1, 0}}};
    auto k = lattice_complement(s);
    REQUIRE(k.basis_vectors.size() == 1);
    IntMatrix joined = IntMatrix::from_cols({s.basis_vectors[0], k.basis_vectors[0]});
    Int det = joined.determinant();
    CHECK((det == 1 || det == -1));

    LatticeBasis s2{2, {{1, 2}}};
    auto k2 = lattice_complement(s2);
    IntMatrix j2 = IntMatrix::from_cols({s2.basis_vectors[0], k2.basis_vectors[0]});
    Int det2 = j2.determinant();
    CHECK((det2 == 1 || det2 == -1));

    LatticeBasis full{2, {{1, 0}, {0, 1}}};
    CHECK(lattice_complement(full).basis_vectors.empty());

    LatticeBasis bad{2, {{2, 0}}};
    CHECK(!is_saturated(bad));
    CHECK_THROWS_AS(lattice_complement(bad), Error);
}

TEST_CASE("lattice complement determinant property, random") {
    std::mt19937 rng(46);
    for (int t = 0; t < 30; ++t) {
        size_t n = 2 + rng() % 3;
        size_t r = 1 + rng() % n;
        // random saturated lattice: integer kernel of a random covector stack
        IntMatrix m = random_int_matrix(rng, n - r, n, -5, 5);
        auto ker = integer_kernel(m);
        if (ker.size() != r) continue;  // rank-deficient draw
        LatticeBasis s{static_cast<int>(n), ker};
        auto k = lattice_complement(s);
        std::vector<IntVec> all = s.basis_vectors;
        all.insert(all.end(), k.basis_vectors.begin(), k.basis_vectors.end());
        Int det = IntMatrix::from_cols(all).determinant();
        CHECK((det == 1 || det == -1));
    }
}

TEST_CASE("qspan_rank") {
    CHECK(qspan_rank({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}) == 2);
    CHECK(qspan_rank({{Scalar(1)}, {Scalar::sqrt_of(2)}}) == 2);
    ScalarVec v = {Scalar(1), Scalar::sqrt_of(2)};
    CHECK(qspan_rank({v, vec_scale(Scalar(2), v)}) == 1);
}

TEST_CASE("integer_split_rows") {
    ScalarVec v = {Scalar(Rat(1, 2)), Scalar(Rat(0), Rat(3), 2)};
    auto rows = integer_split_rows(v);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == IntVec{1, 0});
    CHECK(rows[1] == IntVec{0, 1});
    CHECK(integer_split_rows({Scalar(2), Scalar(4)}).size() == 1);
}

TEST_CASE("determinant") {
    CHECK(IntMatrix::identity(4).determinant() == 1);
    IntMatrix m = IntMatrix::from_rows({{0, 2}, {3, 0}});
    CHECK(m.determinant() == -6);
    std::mt19937 rng(47);
    for (int t = 0; t < 20; ++t) {
        IntMatrix u = random_unimodular(rng, 3);
        Int d = u.determinant();
        CHECK((d == 1 || d == -1));
    }
}
