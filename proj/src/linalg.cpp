#include "fpt/linalg.hpp"

#include <algorithm>

namespace fpt {

Scalar dot(const ScalarVec& a, const ScalarVec& b) {
    if (a.size() != b.size()) throw Error("shape-mismatch: dot of unequal lengths");
    Scalar s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

ScalarVec vec_add(const ScalarVec& a, const ScalarVec& b) {
    ScalarVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

ScalarVec vec_sub(const ScalarVec& a, const ScalarVec& b) {
    ScalarVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

ScalarVec vec_scale(const Scalar& s, const ScalarVec& a) {
    ScalarVec r(a);
    for (auto& x : r) x *= s;
    return r;
}

bool vec_is_zero(const ScalarVec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<int> rref(ScalarMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Scalar inv = m[r][c].inverse();
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Scalar f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

int rank(ScalarMat m) { return static_cast<int>(rref(m).size()); }

int rank_of(const std::vector<ScalarVec>& rows) { return rank(rows); }

std::optional<ScalarVec> solve_linear(const ScalarMat& a, const ScalarVec& b) {
    if (a.size() != b.size()) throw Error("shape-mismatch: solve_linear");
    if (a.empty()) return ScalarVec{};
    size_t cols = a[0].size();
    ScalarMat aug(a);
    for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    std::vector<int> pivots = rref(aug);
    for (size_t i = 0; i < aug.size(); ++i) {
        bool zero_row = true;
        for (size_t j = 0; j < cols; ++j)
            if (!aug[i][j].is_zero()) { zero_row = false; break; }
        if (zero_row && !aug[i][cols].is_zero()) return std::nullopt;
    }
    ScalarVec x(cols, Scalar(0));
    for (size_t k = 0; k < pivots.size(); ++k) {
        if (pivots[k] == static_cast<int>(cols)) return std::nullopt;
        x[pivots[k]] = aug[k][cols];
    }
    return x;
}

std::vector<ScalarVec> nullspace(const ScalarMat& a) {
    if (a.empty()) return {};
    size_t cols = a[0].size();
    ScalarMat m(a);
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<ScalarVec> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        ScalarVec v(cols, Scalar(0));
        v[free] = Scalar(1);
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

ScalarMat invert(const ScalarMat& a) {
    size_t n = a.size();
    ScalarMat aug(a);
    for (size_t i = 0; i < n; ++i) {
        if (aug[i].size() != n) throw Error("shape-mismatch: invert expects square");
        for (size_t j = 0; j < n; ++j) aug[i].push_back(Scalar(i == j ? 1 : 0));
    }
    std::vector<int> pivots = rref(aug);
    size_t left_pivots = 0;
    for (int p : pivots)
        if (p < static_cast<int>(n)) ++left_pivots;
    if (left_pivots != n) throw Error("singular-matrix");
    ScalarMat inv(n, ScalarVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

ScalarMat transpose(const ScalarMat& a) {
    if (a.empty()) return {};
    ScalarMat t(a[0].size(), ScalarVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

ScalarVec mat_vec(const ScalarMat& a, const ScalarVec& x) {
    ScalarVec r;
    r.reserve(a.size());
    for (const auto& row : a) r.push_back(dot(row, x));
    return r;
}

bool lex_less(const ScalarVec& a, const ScalarVec& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        int s = (a[i] - b[i]).sign();
        if (s != 0) return s < 0;
    }
    return a.size() < b.size();
}

}  // namespace fpt
