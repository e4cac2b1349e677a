#include "fpt/intmatrix.hpp"

#include <algorithm>

#include "fpt/linalg.hpp"

namespace fpt {

namespace {

Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

// g = gcd(a,b) = s*a + t*b
void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    Int old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s1;
        old_s = s1;
        s1 = tmp;
        tmp = old_t - q * t1;
        old_t = t1;
        t1 = tmp;
    }
    g = old_r;
    s = old_s;
    t = old_t;
    if (g < 0) {
        g = -g;
        s = -s;
        t = -t;
    }
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols) throw Error("shape-mismatch: ragged rows");
        for (size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_cols(const std::vector<IntVec>& cols) {
    return from_rows(cols).transposed();
}

IntVec IntMatrix::row(size_t i) const {
    IntVec r(cols);
    for (size_t j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

IntVec IntMatrix::col(size_t j) const {
    IntVec c(rows);
    for (size_t i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

std::vector<IntVec> IntMatrix::col_list() const {
    std::vector<IntVec> cs;
    cs.reserve(cols);
    for (size_t j = 0; j < cols; ++j) cs.push_back(col(j));
    return cs;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw Error("shape-mismatch: matrix product");
    IntMatrix r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0) continue;
            for (size_t j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

ScalarMat IntMatrix::to_scalar() const {
    ScalarMat m(rows, ScalarVec(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m[i][j] = Scalar(at(i, j));
    return m;
}

Int IntMatrix::determinant() const {
    if (rows != cols) throw Error("shape-mismatch: determinant of non-square");
    if (rows == 0) return 1;
    // Fraction-free Bareiss elimination.
    IntMatrix m(*this);
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < rows; ++k) {
        if (m.at(k, k) == 0) {
            size_t p = k + 1;
            while (p < rows && m.at(p, k) == 0) ++p;
            if (p == rows) return 0;
            for (size_t j = 0; j < cols; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < rows; ++i)
            for (size_t j = k + 1; j < cols; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(rows - 1, rows - 1);
}

HnfResult hnf(const IntMatrix& m) {
    IntMatrix h(m);
    IntMatrix u = IntMatrix::identity(m.cols);
    auto col_combine = [&](IntMatrix& mat, size_t ca, size_t cb, const Int& p, const Int& q,
                           const Int& r, const Int& s) {
        // (col_a, col_b) <- (p*col_a + q*col_b, r*col_a + s*col_b)
        for (size_t i = 0; i < mat.rows; ++i) {
            Int va = mat.at(i, ca), vb = mat.at(i, cb);
            mat.at(i, ca) = p * va + q * vb;
            mat.at(i, cb) = r * va + s * vb;
        }
    };
    auto col_addmul = [&](IntMatrix& mat, size_t dst, size_t src, const Int& f) {
        for (size_t i = 0; i < mat.rows; ++i) mat.at(i, dst) += f * mat.at(i, src);
    };
    auto col_swap = [&](IntMatrix& mat, size_t x, size_t y) {
        for (size_t i = 0; i < mat.rows; ++i) std::swap(mat.at(i, x), mat.at(i, y));
    };
    auto col_negate = [&](IntMatrix& mat, size_t x) {
        for (size_t i = 0; i < mat.rows; ++i) mat.at(i, x) = -mat.at(i, x);
    };

    size_t pcol = 0;
    for (size_t row = 0; row < h.rows && pcol < h.cols; ++row) {
        size_t j = pcol;
        while (j < h.cols && h.at(row, j) == 0) ++j;
        if (j == h.cols) continue;
        if (j != pcol) {
            col_swap(h, pcol, j);
            col_swap(u, pcol, j);
        }
        for (j = pcol + 1; j < h.cols; ++j) {
            if (h.at(row, j) == 0) continue;
            Int g, s, t;
            xgcd(h.at(row, pcol), h.at(row, j), g, s, t);
            Int p = h.at(row, pcol) / g, q = h.at(row, j) / g;
            // new pivot column = s*C_p + t*C_j (entry g); C_j <- -q*C_p + p*C_j (entry 0)
            col_combine(h, pcol, j, s, t, -q, p);
            col_combine(u, pcol, j, s, t, -q, p);
        }
        if (h.at(row, pcol) < 0) {
            col_negate(h, pcol);
            col_negate(u, pcol);
        }
        for (j = 0; j < pcol; ++j) {
            Int f = floor_div(h.at(row, j), h.at(row, pcol));
            if (f != 0) {
                col_addmul(h, j, pcol, -f);
                col_addmul(u, j, pcol, -f);
            }
        }
        ++pcol;
    }
    return {h, u};
}

RowHnfResult row_hnf(const IntMatrix& m) {
    IntMatrix h(m);
    IntMatrix u = IntMatrix::identity(m.rows);
    IntMatrix v = IntMatrix::identity(m.rows);  // v = u^{-1}

    auto row_swap = [&](size_t x, size_t y) {
        for (size_t j = 0; j < h.cols; ++j) std::swap(h.at(x, j), h.at(y, j));
        for (size_t j = 0; j < u.cols; ++j) std::swap(u.at(x, j), u.at(y, j));
        for (size_t i = 0; i < v.rows; ++i) std::swap(v.at(i, x), v.at(i, y));
    };
    auto row_negate = [&](size_t x) {
        for (size_t j = 0; j < h.cols; ++j) h.at(x, j) = -h.at(x, j);
        for (size_t j = 0; j < u.cols; ++j) u.at(x, j) = -u.at(x, j);
        for (size_t i = 0; i < v.rows; ++i) v.at(i, x) = -v.at(i, x);
    };
    auto row_addmul = [&](size_t dst, size_t src, const Int& f) {
        // rows of h,u: R_dst += f R_src ; columns of v: C_src -= f C_dst
        for (size_t j = 0; j < h.cols; ++j) h.at(dst, j) += f * h.at(src, j);
        for (size_t j = 0; j < u.cols; ++j) u.at(dst, j) += f * u.at(src, j);
        for (size_t i = 0; i < v.rows; ++i) v.at(i, src) -= f * v.at(i, dst);
    };
    auto row_combine = [&](size_t ra, size_t rb, const Int& p, const Int& q, const Int& r,
                           const Int& s) {
        // (R_a, R_b) <- (p R_a + q R_b, r R_a + s R_b), det(ps - qr) = 1.
        // Inverse column op on v: (C_a, C_b) <- (s C_a - r C_b, -q C_a + p C_b)
        for (size_t j = 0; j < h.cols; ++j) {
            Int va = h.at(ra, j), vb = h.at(rb, j);
            h.at(ra, j) = p * va + q * vb;
            h.at(rb, j) = r * va + s * vb;
        }
        for (size_t j = 0; j < u.cols; ++j) {
            Int va = u.at(ra, j), vb = u.at(rb, j);
            u.at(ra, j) = p * va + q * vb;
            u.at(rb, j) = r * va + s * vb;
        }
        for (size_t i = 0; i < v.rows; ++i) {
            Int va = v.at(i, ra), vb = v.at(i, rb);
            v.at(i, ra) = s * va - r * vb;
            v.at(i, rb) = -q * va + p * vb;
        }
    };

    size_t prow = 0;
    for (size_t col = 0; col < h.cols && prow < h.rows; ++col) {
        size_t i = prow;
        while (i < h.rows && h.at(i, col) == 0) ++i;
        if (i == h.rows) continue;
        if (i != prow) row_swap(prow, i);
        for (i = prow + 1; i < h.rows; ++i) {
            if (h.at(i, col) == 0) continue;
            Int g, s, t;
            xgcd(h.at(prow, col), h.at(i, col), g, s, t);
            Int p = h.at(prow, col) / g, q = h.at(i, col) / g;
            row_combine(prow, i, s, t, -q, p);
        }
        if (h.at(prow, col) < 0) row_negate(prow);
        for (i = 0; i < prow; ++i) {
            Int f = floor_div(h.at(i, col), h.at(prow, col));
            if (f != 0) row_addmul(i, prow, -f);
        }
        ++prow;
    }
    return {h, u, v};
}

std::vector<Int> smith_invariants(const IntMatrix& m0) {
    IntMatrix m(m0);
    std::vector<Int> inv;
    size_t offset = 0;
    while (true) {
        // find a nonzero entry at or after (offset, offset)
        size_t pi = m.rows, pj = m.cols;
        for (size_t i = offset; i < m.rows && pi == m.rows; ++i)
            for (size_t j = offset; j < m.cols; ++j)
                if (m.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == m.rows) break;
        if (pi != offset)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(offset, j), m.at(pi, j));
        if (pj != offset)
            for (size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, offset), m.at(i, pj));

        bool again = true;
        while (again) {
            again = false;
            for (size_t i = offset + 1; i < m.rows; ++i) {
                if (m.at(i, offset) == 0) continue;
                if (m.at(i, offset) % m.at(offset, offset) == 0) {
                    // Plain subtraction keeps the pivot row intact.
                    Int f = m.at(i, offset) / m.at(offset, offset);
                    for (size_t j = offset; j < m.cols; ++j)
                        m.at(i, j) -= f * m.at(offset, j);
                    continue;
                }
                Int g, s, t;
                xgcd(m.at(offset, offset), m.at(i, offset), g, s, t);
                Int p = m.at(offset, offset) / g, q = m.at(i, offset) / g;
                for (size_t j = offset; j < m.cols; ++j) {
                    Int va = m.at(offset, j), vb = m.at(i, j);
                    m.at(offset, j) = s * va + t * vb;
                    m.at(i, j) = -q * va + p * vb;
                }
            }
            for (size_t j = offset + 1; j < m.cols; ++j) {
                if (m.at(offset, j) == 0) continue;
                if (m.at(offset, j) % m.at(offset, offset) == 0) {
                    Int f = m.at(offset, j) / m.at(offset, offset);
                    for (size_t i = offset; i < m.rows; ++i)
                        m.at(i, j) -= f * m.at(i, offset);
                    continue;
                }
                Int g, s, t;
                xgcd(m.at(offset, offset), m.at(offset, j), g, s, t);
                Int p = m.at(offset, offset) / g, q = m.at(offset, j) / g;
                for (size_t i = offset; i < m.rows; ++i) {
                    Int va = m.at(i, offset), vb = m.at(i, j);
                    m.at(i, offset) = s * va + t * vb;
                    m.at(i, j) = -q * va + p * vb;
                }
                for (size_t i = offset + 1; i < m.rows; ++i)
                    if (m.at(i, offset) != 0) { again = true; }
            }
        }
        // divisibility: fold any non-divisible entry into the pivot column
        Int piv = m.at(offset, offset);
        if (piv < 0) piv = -piv;
        m.at(offset, offset) = piv;
        bool redo = false;
        for (size_t i = offset + 1; i < m.rows && !redo; ++i)
            for (size_t j = offset + 1; j < m.cols && !redo; ++j)
                if (m.at(i, j) % piv != 0) {
                    for (size_t jj = offset; jj < m.cols; ++jj) m.at(offset, jj) += m.at(i, jj);
                    redo = true;
                }
        if (redo) continue;
        inv.push_back(piv);
        ++offset;
        if (offset >= m.rows || offset >= m.cols) break;
    }
    return inv;
}

std::vector<IntVec> integer_kernel(const IntMatrix& m) {
    HnfResult r = hnf(m);
    std::vector<IntVec> ker;
    for (size_t j = 0; j < r.h.cols; ++j) {
        bool zero = true;
        for (size_t i = 0; i < r.h.rows; ++i)
            if (r.h.at(i, j) != 0) { zero = false; break; }
        if (zero) ker.push_back(r.u.col(j));
    }
    return ker;
}

Int gcd_of(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) g = int_gcd(g, x);
    return g;
}

IntVec primitive_covector(const ScalarVec& v) {
    Int lcm = 1;
    bool nonzero = false;
    for (const auto& x : v) {
        if (!x.is_rational()) throw Error("irrational-value: primitive_covector needs rational entries");
        if (!x.is_zero()) nonzero = true;
        Int d = boost::multiprecision::denominator(x.as_rational());
        lcm = lcm / int_gcd(lcm, d) * d;
    }
    if (!nonzero) throw Error("zero-vector: primitive_covector of zero");
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat scaled = v[i].as_rational() * Rat(lcm);
        w[i] = boost::multiprecision::numerator(scaled);
    }
    Int g = gcd_of(w);
    for (auto& x : w) x /= g;
    return w;
}

std::vector<IntVec> integer_split_rows(const ScalarVec& v) {
    ScalarVec rat(v.size()), rad(v.size());
    bool has_rat = false, has_rad = false;
    for (size_t i = 0; i < v.size(); ++i) {
        rat[i] = Scalar(v[i].rational_part());
        rad[i] = Scalar(v[i].radical_part());
        if (!rat[i].is_zero()) has_rat = true;
        if (!rad[i].is_zero()) has_rad = true;
    }
    std::vector<IntVec> rows;
    if (has_rat) rows.push_back(primitive_covector(rat));
    if (has_rad) rows.push_back(primitive_covector(rad));
    return rows;
}

LatticeBasis lattice_intersect_subspace(int ambient_dim, const std::vector<ScalarVec>& span) {
    std::vector<IntVec> constraint_rows;
    for (const auto& w : span) {
        if (static_cast<int>(w.size()) != ambient_dim)
            throw Error("shape-mismatch: spanning vector dimension");
        for (const auto& x : w)
            if (!x.is_rational())
                throw Error("irrational-value: lattice_intersect_subspace needs rational span");
        if (!vec_is_zero(w)) constraint_rows.push_back(primitive_covector(w));
    }
    // Covectors annihilating W, then lattice vectors annihilated by those.
    IntMatrix span_mat = constraint_rows.empty() ? IntMatrix(0, ambient_dim)
                                                 : IntMatrix::from_rows(constraint_rows);
    std::vector<IntVec> ann = integer_kernel(span_mat);
    LatticeBasis out;
    out.ambient_dim = ambient_dim;
    if (ann.empty()) {
        // W is all of Q^N: the standard basis.
        for (int i = 0; i < ambient_dim; ++i) {
            IntVec e(ambient_dim, 0);
            e[i] = 1;
            out.basis_vectors.push_back(e);
        }
        return out;
    }
    out.basis_vectors = integer_kernel(IntMatrix::from_rows(ann));
    return out;
}

bool is_saturated(const LatticeBasis& s) {
    if (s.basis_vectors.empty()) return true;
    auto inv = smith_invariants(IntMatrix::from_cols(s.basis_vectors));
    if (inv.size() != s.basis_vectors.size()) return false;  // dependent vectors
    for (const auto& d : inv)
        if (d != 1) return false;
    return true;
}

LatticeBasis lattice_complement(const LatticeBasis& s) {
    int n = s.ambient_dim;
    size_t r = s.basis_vectors.size();
    LatticeBasis out;
    out.ambient_dim = n;
    if (r == 0) {
        for (int i = 0; i < n; ++i) {
            IntVec e(n, 0);
            e[i] = 1;
            out.basis_vectors.push_back(e);
        }
        return out;
    }
    IntMatrix m = IntMatrix::from_cols(s.basis_vectors);  // n x r
    RowHnfResult rh = row_hnf(m);
    // Saturated full-rank input reduces to [I_r; 0].
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            if (rh.h.at(i, j) != Int(i == j ? 1 : 0))
                throw Error("not-saturated: lattice_complement needs a saturated basis");
    for (size_t i = r; i < rh.h.rows; ++i)
        for (size_t j = 0; j < r; ++j)
            if (rh.h.at(i, j) != 0) throw Error("not-saturated: dependent basis vectors");
    // m = u_inv * [I;0], so the first r columns of u_inv span the lattice
    // and the remaining columns complement it.
    for (size_t j = r; j < rh.u_inv.cols; ++j) out.basis_vectors.push_back(rh.u_inv.col(j));
    return out;
}

int qspan_rank(const std::vector<ScalarVec>& vectors) {
    if (vectors.empty()) return 0;
    size_t n = vectors[0].size();
    ScalarMat split;
    for (const auto& v : vectors) {
        if (v.size() != n) throw Error("shape-mismatch: qspan_rank");
        ScalarVec row(2 * n);
        for (size_t i = 0; i < n; ++i) {
            row[i] = Scalar(v[i].rational_part());
            row[n + i] = Scalar(v[i].radical_part());
        }
        split.push_back(std::move(row));
    }
    return rank(std::move(split));
}

ScalarVec to_scalar_vec(const IntVec& v) {
    ScalarVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(Scalar(x));
    return r;
}

}  // namespace fpt
