#pragma once

#include "fpt/scalar.hpp"

namespace fpt {

using IntVec = std::vector<Int>;

/// Dense matrix of arbitrary-precision integers.
struct IntMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Int> a;  // row-major

    IntMatrix() = default;
    IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
    static IntMatrix identity(size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows);
    static IntMatrix from_cols(const std::vector<IntVec>& cols);

    Int& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Int& at(size_t i, size_t j) const { return a[i * cols + j]; }

    IntVec row(size_t i) const;
    IntVec col(size_t j) const;
    std::vector<IntVec> col_list() const;

    IntMatrix transposed() const;
    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    Int determinant() const;  // square only, exact fraction-free
    ScalarMat to_scalar() const;
};

struct HnfResult {
    IntMatrix h;  // column Hermite normal form, M*U = H
    IntMatrix u;  // unimodular
};

/// Column-style Hermite normal form: column echelon with positive pivots
/// and off-pivot entries in each pivot row reduced into [0, pivot).
HnfResult hnf(const IntMatrix& m);

struct RowHnfResult {
    IntMatrix h;      // row Hermite normal form, U*M = H
    IntMatrix u;      // unimodular
    IntMatrix u_inv;  // inverse of u, maintained exactly
};

RowHnfResult row_hnf(const IntMatrix& m);

/// Invariant factors d_1 | d_2 | ... of m, zero factors omitted.
std::vector<Int> smith_invariants(const IntMatrix& m);

/// Basis of {x in Z^cols : M x = 0}; always a saturated lattice.
std::vector<IntVec> integer_kernel(const IntMatrix& m);

/// A basis of rank-N free lattices and sublattices of Z^N.
struct LatticeBasis {
    int ambient_dim = 0;
    std::vector<IntVec> basis_vectors;
};

/// The unique positive multiple of a rational vector with coprime integer
/// entries; orientation preserved. Throws on zero or irrational input.
IntVec primitive_covector(const ScalarVec& v);

/// Basis of Z^N intersected with a rational subspace W (given by spanning
/// vectors with rational entries); the result has rank dim W.
LatticeBasis lattice_intersect_subspace(int ambient_dim, const std::vector<ScalarVec>& span);

/// For a saturated sublattice S of Z^N, a complement K with S + K = Z^N.
LatticeBasis lattice_complement(const LatticeBasis& s);

bool is_saturated(const LatticeBasis& s);

/// Rank over Q of Scalar vectors viewed in Q^{2n} by splitting rational
/// and radical coordinates; equals the rank of the generated abelian group.
int qspan_rank(const std::vector<ScalarVec>& vectors);

/// Splits a Scalar vector into its rational-part and radical-part rows,
/// scaled to integers (the radical row is omitted when zero everywhere).
std::vector<IntVec> integer_split_rows(const ScalarVec& v);

Int gcd_of(const IntVec& v);

ScalarVec to_scalar_vec(const IntVec& v);

}  // namespace fpt
