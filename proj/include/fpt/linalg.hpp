#pragma once

#include <optional>

#include "fpt/scalar.hpp"

namespace fpt {

// Dense exact linear algebra over Q(sqrt(m)). Matrices are row-major
// vectors of rows; everything is pure and deterministic (first-nonzero
// pivoting throughout).

Scalar dot(const ScalarVec& a, const ScalarVec& b);
ScalarVec vec_add(const ScalarVec& a, const ScalarVec& b);
ScalarVec vec_sub(const ScalarVec& a, const ScalarVec& b);
ScalarVec vec_scale(const Scalar& s, const ScalarVec& a);
bool vec_is_zero(const ScalarVec& a);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(ScalarMat& m);

int rank(ScalarMat m);

/// Rank of a set of row vectors.
int rank_of(const std::vector<ScalarVec>& rows);

/// One solution of A x = b, if any (free variables set to zero).
std::optional<ScalarVec> solve_linear(const ScalarMat& a, const ScalarVec& b);

/// Canonical basis of {x : A x = 0} (RREF back-substitution order).
std::vector<ScalarVec> nullspace(const ScalarMat& a);

/// Inverse of a square matrix; throws on singular input.
ScalarMat invert(const ScalarMat& a);

ScalarMat transpose(const ScalarMat& a);
ScalarVec mat_vec(const ScalarMat& a, const ScalarVec& x);

/// Lexicographic comparison by exact value.
bool lex_less(const ScalarVec& a, const ScalarVec& b);

}  // namespace fpt
