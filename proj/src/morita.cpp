#include "fpt/morita.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace fpt {

namespace {

ScalarVec mat_vec_int(const IntMatrix& m, const ScalarVec& x) {
    if (m.cols != x.size()) throw Error("shape-mismatch: matrix-vector product");
    ScalarVec out(m.rows, Scalar(0));
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) out[i] += Scalar(m.at(i, j)) * x[j];
    return out;
}

IntVec covector_pullback(const IntVec& u, const IntMatrix& a) {
    if (u.size() != a.rows) throw Error("shape-mismatch: covector pullback");
    IntVec out(a.cols, 0);
    for (size_t j = 0; j < a.cols; ++j)
        for (size_t i = 0; i < a.rows; ++i) out[j] += u[i] * a.at(i, j);
    return out;
}

Scalar dot_iv(const IntVec& u, const ScalarVec& x) {
    Scalar s(0);
    for (size_t i = 0; i < u.size(); ++i) s += Scalar(u[i]) * x[i];
    return s;
}

bool is_unimodular(const IntMatrix& a) {
    if (a.rows != a.cols) return false;
    Int d = a.determinant();
    return d == 1 || d == -1;
}

IntMatrix integer_inverse(const IntMatrix& a) {
    ScalarMat inv = invert(a.to_scalar());
    IntMatrix out(a.rows, a.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) out.at(i, j) = inv[i][j].as_integer();
    return out;
}

/// One integer solution of M x = r, if any, via the column Hermite form.
std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& r) {
    if (m.rows != r.size()) throw Error("shape-mismatch: solve_integer");
    HnfResult hr = hnf(m);
    IntVec residual = r;
    IntVec y(m.cols, 0);
    size_t scanned = 0;  // rows known to be settled
    for (size_t j = 0; j < m.cols; ++j) {
        size_t piv = m.rows;
        for (size_t i = 0; i < m.rows; ++i)
            if (hr.h.at(i, j) != 0) {
                piv = i;
                break;
            }
        if (piv == m.rows) break;  // zero columns trail
        for (size_t i = scanned; i < piv; ++i)
            if (residual[i] != 0) return std::nullopt;
        if (residual[piv] % hr.h.at(piv, j) != 0) return std::nullopt;
        y[j] = residual[piv] / hr.h.at(piv, j);
        for (size_t i = 0; i < m.rows; ++i) residual[i] -= y[j] * hr.h.at(i, j);
        scanned = piv + 1;
    }
    for (const Int& v : residual)
        if (v != 0) return std::nullopt;
    IntVec x(m.cols, 0);
    for (size_t i = 0; i < m.cols; ++i)
        for (size_t j = 0; j < m.cols; ++j) x[i] += hr.u.at(i, j) * y[j];
    return x;
}

Int round_rat(const Rat& q) {
    Int num = numerator(q), den = denominator(q);  // den > 0
    Int twice = 2 * num + den;
    Int d2 = 2 * den;
    Int fl = twice / d2;
    if (twice < 0 && twice % d2 != 0) fl -= 1;
    return fl;
}

/// Adjacency lists of the edge graph, per vertex index.
std::vector<std::vector<int>> edge_graph(const HPolyhedron& h, const VPolytope& p) {
    std::vector<std::vector<int>> nbr(p.vertices.size());
    for (const auto& face : all_faces(h, p)) {
        if (face.dim != 1 || face.vertex_ids.size() != 2) continue;
        nbr[face.vertex_ids[0]].push_back(face.vertex_ids[1]);
        nbr[face.vertex_ids[1]].push_back(face.vertex_ids[0]);
    }
    for (auto& v : nbr) std::sort(v.begin(), v.end());
    return nbr;
}

int find_vertex(const VPolytope& p, const ScalarVec& v) {
    for (size_t i = 0; i < p.vertices.size(); ++i)
        if (p.vertices[i] == v) return static_cast<int>(i);
    return -1;
}

/// Rational/radical split of a matched vector pair into A x = y constraints;
/// returns false when no rational matrix can map a to b.
bool split_pairs(const ScalarVec& a, const ScalarVec& b,
                 std::vector<std::pair<ScalarVec, ScalarVec>>& out) {
    size_t na = a.size(), nb = b.size();
    ScalarVec pa(na), qa(na), pb(nb), qb(nb);
    long ma = 0, mb = 0;
    for (size_t i = 0; i < na; ++i) {
        pa[i] = Scalar(a[i].rational_part());
        qa[i] = Scalar(a[i].radical_part());
        if (a[i].radicand() != 0) ma = a[i].radicand();
    }
    for (size_t i = 0; i < nb; ++i) {
        pb[i] = Scalar(b[i].rational_part());
        qb[i] = Scalar(b[i].radical_part());
        if (b[i].radicand() != 0) mb = b[i].radicand();
    }
    bool qa_zero = vec_is_zero(qa), qb_zero = vec_is_zero(qb);
    if (!qa_zero && !qb_zero && ma != mb) return false;
    if (qa_zero && !qb_zero) return false;  // rational source, radical target
    out.emplace_back(std::move(pa), std::move(pb));
    if (!qa_zero) out.emplace_back(std::move(qa), std::move(qb));
    return true;
}

bool vertex_image_check(const std::vector<ScalarVec>& src, const IntegralAffineMap& m,
                        const std::vector<ScalarVec>& dst) {
    std::vector<ScalarVec> img;
    img.reserve(src.size());
    for (const auto& v : src) img.push_back(apply_map(m, v));
    std::sort(img.begin(), img.end(), lex_less);
    return img == dst;
}

/// Full check of a framed-isomorphism candidate (unimodularity, vertex
/// bijection, canonical-germ equality after transport).
bool verify_framed_candidate(const FramedPolytope& f1, const FramedPolytope& f2,
                             const IntegralAffineMap& m) {
    if (!is_unimodular(m.linear)) return false;
    if (!vertex_image_check(f1.polytope.vertices, m, f2.polytope.vertices)) return false;
    if (f1.germ.size() != f2.germ.size()) return false;
    std::vector<GermFacet> pulled;
    for (const auto& g : f2.germ)
        pulled.push_back({covector_pullback(g.u, m.linear), g.c - dot_iv(g.u, m.translation)});
    auto less = [](const GermFacet& a, const GermFacet& b) {
        if (a.u != b.u) return a.u < b.u;
        return a.c < b.c;
    };
    std::sort(pulled.begin(), pulled.end(), less);
    std::vector<GermFacet> have = f1.germ;
    std::sort(have.begin(), have.end(), less);
    return pulled == have;
}

struct LinearSystem {
    ScalarMat rows;  // rational entries
    ScalarVec rhs;
};

/// Integer solutions of the rational system: a particular one plus the
/// integer kernel lattice; nullopt when no integer solution exists.
struct IntegerSolutions {
    IntVec particular;
    std::vector<IntVec> kernel;
};

std::optional<IntegerSolutions> integer_solutions(const LinearSystem& sys, size_t unknowns) {
    std::vector<IntVec> irows;
    IntVec irhs;
    for (size_t i = 0; i < sys.rows.size(); ++i) {
        Int lcm = 1;
        for (const auto& x : sys.rows[i]) lcm = boost::multiprecision::lcm(lcm, denominator(x.as_rational()));
        lcm = boost::multiprecision::lcm(lcm, denominator(sys.rhs[i].as_rational()));
        IntVec row(unknowns);
        for (size_t j = 0; j < unknowns; ++j) {
            Rat v = sys.rows[i][j].as_rational() * Rat(lcm);
            row[j] = numerator(v);
        }
        Rat v = sys.rhs[i].as_rational() * Rat(lcm);
        irhs.push_back(numerator(v));
        irows.push_back(std::move(row));
    }
    IntMatrix m = IntMatrix::from_rows(irows);
    if (m.rows == 0) m = IntMatrix(0, unknowns);
    auto part = solve_integer(m, irhs);
    if (!part) return std::nullopt;
    IntegerSolutions out;
    out.particular = std::move(*part);
    out.kernel = integer_kernel(m);
    // size-reduce the particular solution against the kernel lattice
    for (const auto& k : out.kernel) {
        Int num = 0, den = 0;
        for (size_t j = 0; j < unknowns; ++j) {
            num += out.particular[j] * k[j];
            den += k[j] * k[j];
        }
        Int c = round_rat(Rat(num, den));
        for (size_t j = 0; j < unknowns; ++j) out.particular[j] -= c * k[j];
    }
    return out;
}

IntMatrix unflatten(const IntVec& flat, size_t rows, size_t cols) {
    IntMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = flat[i * cols + j];
    return m;
}

/// Vertex-id set of each germ facet's contact with P.
std::vector<std::vector<int>> germ_contacts(const FramedPolytope& f) {
    std::vector<std::vector<int>> out(f.germ.size());
    for (size_t g = 0; g < f.germ.size(); ++g)
        for (size_t v = 0; v < f.polytope.vertices.size(); ++v)
            if ((dot_iv(f.germ[g].u, f.polytope.vertices[v]) - f.germ[g].c).is_zero())
                out[g].push_back(static_cast<int>(v));
    return out;
}

}  // namespace

ScalarVec apply_map(const IntegralAffineMap& m, const ScalarVec& x) {
    ScalarVec out = mat_vec_int(m.linear, x);
    if (out.size() != m.translation.size()) throw Error("shape-mismatch: apply_map");
    return vec_add(out, m.translation);
}

bool map_less(const IntegralAffineMap& a, const IntegralAffineMap& b) {
    if (a.linear.rows != b.linear.rows) return a.linear.rows < b.linear.rows;
    if (a.linear.cols != b.linear.cols) return a.linear.cols < b.linear.cols;
    if (a.linear.a != b.linear.a) return a.linear.a < b.linear.a;
    return lex_less(a.translation, b.translation);
}

FramedPolytope transform_framed(const FramedPolytope& f, const IntegralAffineMap& m) {
    if (m.linear.rows != static_cast<size_t>(f.ambient_dim) || !is_unimodular(m.linear))
        throw Error("bad-parameter: transform needs an ambient unimodular matrix");
    IntMatrix inv = integer_inverse(m.linear);
    Slice s;
    s.base = apply_map(m, f.slice.base);
    for (const auto& d : f.slice.directions) s.directions.push_back(mat_vec_int(m.linear, d));
    std::vector<GermFacet> germ;
    for (const auto& g : f.germ) {
        IntVec u = covector_pullback(g.u, inv);
        Scalar c = g.c + dot_iv(u, m.translation);
        germ.push_back({std::move(u), std::move(c)});
    }
    return canonicalize_germ(make_framed(f.ambient_dim, std::move(s), std::move(germ)));
}

Int facet_weight(const FramedPolytope& f, int germ_index) {
    if (germ_index < 0 || germ_index >= static_cast<int>(f.germ.size()))
        throw Error("bad-parameter: germ index out of range");
    LatticeBasis lat = slice_lattice(f);  // throws on an irrational slice
    IntVec values;
    for (const auto& beta : lat.basis_vectors) {
        Int v = 0;
        const IntVec& u = f.germ[germ_index].u;
        for (size_t i = 0; i < u.size(); ++i) v += u[i] * beta[i];
        values.push_back(v);
    }
    Int g = gcd_of(values);
    if (g == 0) throw Error("internal-inconsistency: facet covector vanishes on the slice");
    return g;
}

std::vector<Int> facet_weights(const FramedPolytope& f) {
    std::vector<Int> out;
    for (size_t i = 0; i < f.germ.size(); ++i) out.push_back(facet_weight(f, static_cast<int>(i)));
    return out;
}

std::vector<IntegralAffineMap> polytope_iso_all(const VPolytope& p1_in, const VPolytope& p2_in) {
    VPolytope p1 = canonical_vpolytope(p1_in);
    VPolytope p2 = canonical_vpolytope(p2_in);
    for (const VPolytope* p : {&p1, &p2}) {
        IrrationalityReport r = irrationality_degree(*p);
        if (r.daff_rank != p->ambient_dim)
            throw Error("not-canonically-embedded: daff rank below the ambient dimension");
    }
    std::vector<IntegralAffineMap> found;
    if (p1.ambient_dim != p2.ambient_dim) return found;
    if (p1.vertices.size() != p2.vertices.size()) return found;
    int n = dim_of(p1);
    if (n != dim_of(p2)) return found;
    size_t nn = static_cast<size_t>(p1.ambient_dim);

    if (n == 0) {
        IntegralAffineMap m{IntMatrix::identity(nn), vec_sub(p2.vertices[0], p1.vertices[0])};
        found.push_back(std::move(m));
        return found;
    }

    HPolyhedron h1 = irredundant_hrep(p1), h2 = irredundant_hrep(p2);
    if (h1.inequalities.size() != h2.inequalities.size()) return found;

    auto nbr1 = edge_graph(h1, p1), nbr2 = edge_graph(h2, p2);

    // edge lattice length multiset: a cheap unimodular-invariant filter
    auto edge_lengths = [](const VPolytope& p, const std::vector<std::vector<int>>& nbr) {
        std::vector<Rat> out;
        for (size_t i = 0; i < nbr.size(); ++i)
            for (int j : nbr[i]) {
                if (static_cast<size_t>(j) < i) continue;
                ScalarVec e = vec_sub(p.vertices[j], p.vertices[i]);
                bool rational = true;
                for (const auto& x : e) rational &= x.is_rational();
                if (!rational) return std::optional<std::vector<Rat>>();
                IntVec prim = primitive_covector(e);
                for (size_t t = 0; t < e.size(); ++t)
                    if (prim[t] != 0) {
                        out.push_back(e[t].as_rational() / Rat(prim[t]));
                        break;
                    }
            }
        std::sort(out.begin(), out.end());
        return std::optional<std::vector<Rat>>(std::move(out));
    };
    auto len1 = edge_lengths(p1, nbr1), len2 = edge_lengths(p2, nbr2);
    if (len1 && len2 && *len1 != *len2) return found;

    // fixed independent edge tuple at vertex 0 of P1
    const ScalarVec& a = p1.vertices[0];
    std::vector<ScalarVec> base_edges;
    {
        ScalarMat acc;
        for (int j : nbr1[0]) {
            ScalarVec e = vec_sub(p1.vertices[j], a);
            acc.push_back(e);
            if (rank_of(std::vector<ScalarVec>(acc.begin(), acc.end())) ==
                static_cast<int>(acc.size()))
                base_edges.push_back(std::move(e));
            else
                acc.pop_back();
            if (static_cast<int>(base_edges.size()) == n) break;
        }
        if (static_cast<int>(base_edges.size()) != n)
            throw Error("internal-inconsistency: vertex cone not full in dir(P)");
    }

    for (size_t w_id = 0; w_id < p2.vertices.size(); ++w_id) {
        const ScalarVec& w = p2.vertices[w_id];
        const std::vector<int>& cand = nbr2[w_id];
        std::vector<int> pick(n, -1);
        std::vector<char> used(cand.size(), 0);
        auto try_tuple = [&]() {
            std::vector<std::pair<ScalarVec, ScalarVec>> pairs;
            for (int j = 0; j < n; ++j) {
                ScalarVec fj = vec_sub(p2.vertices[cand[pick[j]]], w);
                if (!split_pairs(base_edges[j], fj, pairs)) return;
            }
            // determine A row by row: <A_r, x> = y[r] for every pair (x, y)
            ScalarMat xmat;
            for (const auto& pr : pairs) xmat.push_back(pr.first);
            if (rank(xmat) != static_cast<int>(nn))
                throw Error("internal-inconsistency: underdetermined isomorphism system");
            IntMatrix lin(nn, nn);
            for (size_t r = 0; r < nn; ++r) {
                ScalarMat m;
                ScalarVec rhs;
                for (const auto& pr : pairs) {
                    m.push_back(pr.first);
                    rhs.push_back(pr.second[r]);
                }
                auto sol = solve_linear(m, rhs);
                if (!sol) return;
                for (size_t c = 0; c < nn; ++c) {
                    if (!(*sol)[c].is_integer()) return;
                    lin.at(r, c) = (*sol)[c].as_integer();
                }
            }
            if (!is_unimodular(lin)) return;
            IntegralAffineMap m{lin, vec_sub(w, mat_vec_int(lin, a))};
            if (!vertex_image_check(p1.vertices, m, p2.vertices)) return;
            for (const auto& seen : found)
                if (!map_less(seen, m) && !map_less(m, seen)) return;
            found.push_back(std::move(m));
        };
        std::function<void(int)> rec = [&](int depth) {
            if (depth == n) {
                try_tuple();
                return;
            }
            for (size_t c = 0; c < cand.size(); ++c) {
                if (used[c]) continue;
                used[c] = 1;
                pick[depth] = static_cast<int>(c);
                rec(depth + 1);
                used[c] = 0;
            }
        };
        rec(0);
    }
    std::sort(found.begin(), found.end(), map_less);
    return found;
}

std::optional<IntegralAffineMap> polytope_iso(const VPolytope& p1, const VPolytope& p2) {
    auto all = polytope_iso_all(p1, p2);
    if (all.empty()) return std::nullopt;
    return all.front();
}

std::optional<IntegralAffineMap> framed_iso(const FramedPolytope& f1, const FramedPolytope& f2) {
    if (f1.ambient_dim != f2.ambient_dim) return std::nullopt;
    size_t nn = static_cast<size_t>(f1.ambient_dim);
    const VPolytope& P1 = f1.polytope;
    const VPolytope& P2 = f2.polytope;
    if (P1.vertices.size() != P2.vertices.size()) return std::nullopt;
    if (f1.germ.size() != f2.germ.size()) return std::nullopt;
    int n = dim_of(P1);
    if (n != dim_of(P2)) return std::nullopt;

    if (n == 0) {
        IntegralAffineMap m{IntMatrix::identity(nn), vec_sub(P2.vertices[0], P1.vertices[0])};
        if (verify_framed_candidate(f1, f2, m)) return m;
        return std::nullopt;
    }

    HPolyhedron h1 = framed_hrep(f1), h2 = framed_hrep(f2);
    auto nbr1 = edge_graph(h1, P1), nbr2 = edge_graph(h2, P2);
    auto contacts1 = germ_contacts(f1), contacts2 = germ_contacts(f2);

    const ScalarVec& a = P1.vertices[0];
    std::vector<ScalarVec> base_edges;
    {
        ScalarMat acc;
        for (int j : nbr1[0]) {
            ScalarVec e = vec_sub(P1.vertices[j], a);
            acc.push_back(e);
            if (rank_of(std::vector<ScalarVec>(acc.begin(), acc.end())) ==
                static_cast<int>(acc.size()))
                base_edges.push_back(std::move(e));
            else
                acc.pop_back();
            if (static_cast<int>(base_edges.size()) == n) break;
        }
        if (static_cast<int>(base_edges.size()) != n)
            throw Error("internal-inconsistency: vertex cone not full in dir(P)");
    }
    // coefficients of every P1 vertex over the base edge tuple
    ScalarMat edge_cols(nn, ScalarVec(n, Scalar(0)));
    for (size_t i = 0; i < nn; ++i)
        for (int j = 0; j < n; ++j) edge_cols[i][j] = base_edges[j][i];
    std::vector<ScalarVec> coords;
    for (const auto& v : P1.vertices) {
        auto sol = solve_linear(edge_cols, vec_sub(v, a));
        if (!sol) throw Error("internal-inconsistency: vertex outside its affine hull");
        coords.push_back(std::move(*sol));
    }

    std::vector<IntegralAffineMap> results;

    auto try_matching = [&](const std::vector<ScalarVec>& target_edges, const ScalarVec& w,
                            const std::vector<int>& germ_to) {
        LinearSystem sys;
        std::vector<std::pair<ScalarVec, ScalarVec>> pairs;
        for (int j = 0; j < n; ++j)
            if (!split_pairs(base_edges[j], target_edges[j], pairs)) return;
        size_t unknowns = nn * nn;
        for (const auto& pr : pairs) {
            // A x = y, one equation per ambient row
            for (size_t r = 0; r < nn; ++r) {
                ScalarVec row(unknowns, Scalar(0));
                for (size_t c = 0; c < nn; ++c) row[r * nn + c] = pr.first[c];
                sys.rows.push_back(std::move(row));
                sys.rhs.push_back(pr.second[r]);
            }
        }
        for (size_t g = 0; g < f1.germ.size(); ++g) {
            const IntVec& u2 = f2.germ[germ_to[g]].u;
            const IntVec& u1 = f1.germ[g].u;
            for (size_t c = 0; c < nn; ++c) {
                ScalarVec row(unknowns, Scalar(0));
                for (size_t r = 0; r < nn; ++r) row[r * nn + c] = Scalar(u2[r]);
                sys.rows.push_back(std::move(row));
                sys.rhs.push_back(Scalar(u1[c]));
            }
        }
        auto sols = integer_solutions(sys, unknowns);
        if (!sols) return;
        auto emit = [&](const IntVec& flat) {
            IntMatrix lin = unflatten(flat, nn, nn);
            if (!is_unimodular(lin)) return;
            IntegralAffineMap m{lin, vec_sub(w, mat_vec_int(lin, a))};
            if (!verify_framed_candidate(f1, f2, m)) return;
            for (const auto& seen : results)
                if (!map_less(seen, m) && !map_less(m, seen)) return;
            results.push_back(std::move(m));
        };
        if (sols->kernel.empty()) {
            emit(sols->particular);
            return;
        }
        size_t h = sols->kernel.size();
        if (h > 4) h = 4;  // bounded search; larger families are out of desk scale
        std::vector<int> k(h, -2);
        while (true) {
            IntVec flat = sols->particular;
            for (size_t j = 0; j < h; ++j)
                for (size_t t = 0; t < flat.size(); ++t) flat[t] += Int(k[j]) * sols->kernel[j][t];
            emit(flat);
            size_t j = 0;
            while (j < h && k[j] == 2) k[j++] = -2;
            if (j == h) break;
            ++k[j];
        }
    };

    for (size_t w_id = 0; w_id < P2.vertices.size(); ++w_id) {
        const ScalarVec& w = P2.vertices[w_id];
        const std::vector<int>& cand = nbr2[w_id];
        std::vector<int> pick(n, -1);
        std::vector<char> used(cand.size(), 0);
        auto at_tuple = [&]() {
            std::vector<ScalarVec> tedges;
            for (int j = 0; j < n; ++j) tedges.push_back(vec_sub(P2.vertices[cand[pick[j]]], w));
            // the induced vertex map must be a bijection onto P2's vertices
            std::vector<int> sigma(P1.vertices.size(), -1);
            std::vector<char> hit(P2.vertices.size(), 0);
            for (size_t v = 0; v < P1.vertices.size(); ++v) {
                ScalarVec img = w;
                for (int j = 0; j < n; ++j) img = vec_add(img, vec_scale(coords[v][j], tedges[j]));
                int id = find_vertex(P2, img);
                if (id < 0 || hit[id]) return;
                hit[id] = 1;
                sigma[v] = id;
            }
            // induced germ matching, with permutations inside contact-set ties
            std::map<std::vector<int>, std::vector<int>> groups2;
            for (size_t g = 0; g < contacts2.size(); ++g)
                groups2[contacts2[g]].push_back(static_cast<int>(g));
            std::vector<std::pair<std::vector<int>, std::vector<int>>> match_groups;
            {
                std::map<std::vector<int>, std::vector<int>> groups1;
                for (size_t g = 0; g < contacts1.size(); ++g) {
                    std::vector<int> img;
                    for (int v : contacts1[g]) img.push_back(sigma[v]);
                    std::sort(img.begin(), img.end());
                    groups1[img].push_back(static_cast<int>(g));
                }
                for (auto& [key, from_ids] : groups1) {
                    auto it = groups2.find(key);
                    if (it == groups2.end() || it->second.size() != from_ids.size()) return;
                    match_groups.emplace_back(from_ids, it->second);
                }
            }
            std::vector<int> germ_to(f1.germ.size(), -1);
            std::function<void(size_t)> assign = [&](size_t gi) {
                if (gi == match_groups.size()) {
                    try_matching(tedges, w, germ_to);
                    return;
                }
                auto& [from_ids, to_ids] = match_groups[gi];
                std::vector<int> perm = to_ids;
                std::sort(perm.begin(), perm.end());
                do {
                    for (size_t t = 0; t < from_ids.size(); ++t) germ_to[from_ids[t]] = perm[t];
                    assign(gi + 1);
                } while (std::next_permutation(perm.begin(), perm.end()));
            };
            assign(0);
        };
        std::function<void(int)> rec = [&](int depth) {
            if (depth == n) {
                at_tuple();
                return;
            }
            for (size_t c = 0; c < cand.size(); ++c) {
                if (used[c]) continue;
                used[c] = 1;
                pick[depth] = static_cast<int>(c);
                rec(depth + 1);
                used[c] = 0;
            }
        };
        rec(0);
    }
    if (results.empty()) return std::nullopt;
    std::sort(results.begin(), results.end(), map_less);
    return results.front();
}

MoritaEmbeddingReport verify_morita_embedding(const IntegralAffineMap& eta,
                                              const FramedPolytope& from,
                                              const FramedPolytope& to) {
    MoritaEmbeddingReport rep;
    size_t nf = static_cast<size_t>(from.ambient_dim), nt = static_cast<size_t>(to.ambient_dim);
    if (eta.linear.cols != nf || eta.linear.rows != nt || nf > nt) {
        rep.failure = "shape: map does not go from the small ambient into the large one";
        return rep;
    }
    // (a) saturated linear part
    std::vector<Int> inv = smith_invariants(eta.linear);
    if (inv.size() != nf || std::any_of(inv.begin(), inv.end(), [](const Int& d) { return d != 1; })) {
        rep.failure = "saturation: linear part is not a saturated embedding";
        return rep;
    }
    // (b) slice onto slice, vertices onto vertices
    Slice image;
    image.base = apply_map(eta, from.slice.base);
    for (const auto& d : from.slice.directions) image.directions.push_back(mat_vec_int(eta.linear, d));
    if (!slice_equal(image, to.slice)) {
        rep.failure = "slice: image of the slice differs from the target slice";
        return rep;
    }
    if (!vertex_image_check(from.polytope.vertices, eta, to.polytope.vertices)) {
        rep.failure = "polytope: vertex sets do not correspond";
        return rep;
    }
    // (c) slice-germ equality: each target facet pulls back to a positive
    // multiple of exactly one source facet, with matching constants. The
    // matching constants force the active sets (hence the supporting cones
    // along every face) to correspond as well.
    if (to.germ.size() != from.germ.size()) {
        rep.failure = "germ-bijection: facet counts differ";
        return rep;
    }
    std::vector<char> matched(from.germ.size(), 0);
    for (const auto& g : to.germ) {
        IntVec w = covector_pullback(g.u, eta.linear);
        Scalar cpull = g.c - dot_iv(g.u, eta.translation);
        Int lambda = gcd_of(w);
        if (lambda == 0) {
            rep.failure = "germ-pullback: a facet covector vanishes on the image";
            return rep;
        }
        IntVec prim = w;
        for (auto& x : prim) x /= lambda;
        bool found = false;
        for (size_t j = 0; j < from.germ.size(); ++j) {
            if (matched[j]) continue;
            if (from.germ[j].u == prim && Scalar(lambda) * from.germ[j].c == cpull) {
                matched[j] = 1;
                found = true;
                break;
            }
        }
        if (!found) {
            rep.failure = "germ-pullback: no source facet matches a pullback";
            return rep;
        }
        rep.lambdas.push_back(lambda);
    }
    // (d) all pullback multiples equal one
    for (const Int& l : rep.lambdas)
        if (l != 1) {
            rep.failure = "multiplier: pullback multiple " + l.str() + " differs from 1";
            return rep;
        }
    rep.ok = true;
    return rep;
}

MoritaWitness crossed_product(const FramedPolytope& f1, const FramedPolytope& f2,
                              const IntegralAffineMap& chi) {
    if (!slice_is_rational(f1) || !slice_is_rational(f2))
        throw Error("irrational-value: crossed product needs rational slices");
    CanonicalEmbedding ce1 = canonical_embedding(f1.polytope);
    CanonicalEmbedding ce2 = canonical_embedding(f2.polytope);
    int n = dim_of(f1.polytope);
    if (ce1.image.ambient_dim != n || ce2.image.ambient_dim != n || dim_of(f2.polytope) != n)
        throw Error("bad-parameter: crossed product needs rational polytopes of equal dimension");
    if (!vertex_image_check(ce1.image.vertices, chi, ce2.image.vertices))
        throw Error("bad-identification: chi does not carry CE(P1) onto CE(P2)");
    if (!is_unimodular(chi.linear)) throw Error("bad-identification: chi is not unimodular");

    size_t n1 = static_cast<size_t>(f1.ambient_dim), n2 = static_cast<size_t>(f2.ambient_dim);
    IntMatrix g1 = IntMatrix::from_rows(ce1.covectors);
    IntMatrix g2 = IntMatrix::from_rows(ce2.covectors);

    // ambient splittings V_i = dir(L_i)-lattice + complement
    auto splitting = [](const FramedPolytope& f, size_t nn, int n_dim) {
        LatticeBasis s = slice_lattice(f);
        LatticeBasis k = lattice_complement(s);
        std::vector<IntVec> cols = s.basis_vectors;
        for (const auto& c : k.basis_vectors) cols.push_back(c);
        IntMatrix full = IntMatrix::from_cols(cols);
        IntMatrix inv = integer_inverse(full);
        size_t kk = nn - static_cast<size_t>(n_dim);
        IntMatrix d(kk, nn);
        for (size_t i = 0; i < kk; ++i)
            for (size_t j = 0; j < nn; ++j) d.at(i, j) = inv.at(static_cast<size_t>(n_dim) + i, j);
        return d;
    };
    IntMatrix d1 = splitting(f1, n1, n);
    IntMatrix d2 = splitting(f2, n2, n);
    size_t k1 = d1.rows, k2 = d2.rows;
    size_t n3 = static_cast<size_t>(n) + k1 + k2;

    auto build_embedding = [&](const IntMatrix& top, const ScalarVec& top_t, const IntMatrix& dmat,
                               const ScalarVec& base, bool middle) {
        IntegralAffineMap eta;
        size_t nn = top.cols;
        eta.linear = IntMatrix(n3, nn);
        for (size_t i = 0; i < top.rows; ++i)
            for (size_t j = 0; j < nn; ++j) eta.linear.at(i, j) = top.at(i, j);
        size_t off = static_cast<size_t>(n) + (middle ? 0 : k1);
        for (size_t i = 0; i < dmat.rows; ++i)
            for (size_t j = 0; j < nn; ++j) eta.linear.at(off + i, j) = dmat.at(i, j);
        eta.translation = top_t;
        ScalarVec dshift = mat_vec_int(dmat, base);
        eta.translation.resize(n3, Scalar(0));
        for (size_t i = 0; i < dmat.rows; ++i) eta.translation[off + i] = -dshift[i];
        return eta;
    };
    IntegralAffineMap eta1 = build_embedding(chi.linear * g1, chi.translation, d1, f1.slice.base, true);
    IntegralAffineMap eta2 =
        build_embedding(g2, ScalarVec(static_cast<size_t>(n), Scalar(0)), d2, f2.slice.base, false);

    // facet correspondence through the common model X = CE(P2)
    const VPolytope& x2 = ce2.image;
    auto to_x2_ids = [&](const FramedPolytope& f, const IntMatrix& g, const IntegralAffineMap* via) {
        std::vector<int> ids;
        for (const auto& v : f.polytope.vertices) {
            ScalarVec img = mat_vec_int(g, v);
            if (via) img = apply_map(*via, img);
            int id = find_vertex(x2, img);
            if (id < 0) throw Error("internal-inconsistency: embedded vertex lost");
            ids.push_back(id);
        }
        return ids;
    };
    std::vector<int> map1 = to_x2_ids(f1, g1, &chi);
    std::vector<int> map2 = to_x2_ids(f2, g2, nullptr);
    auto contact_keys = [&](const FramedPolytope& f, const std::vector<int>& vmap) {
        std::vector<std::vector<int>> keys;
        for (const auto& contact : germ_contacts(f)) {
            std::vector<int> key;
            for (int v : contact) key.push_back(vmap[v]);
            std::sort(key.begin(), key.end());
            keys.push_back(std::move(key));
        }
        return keys;
    };
    auto keys1 = contact_keys(f1, map1), keys2 = contact_keys(f2, map2);
    if (keys1.size() != keys2.size())
        throw Error("internal-inconsistency: germ facet counts differ over a common P");

    std::vector<GermFacet> germ3;
    std::vector<ScalarVec> p3_points;
    for (const auto& v : f2.polytope.vertices) p3_points.push_back(apply_map(eta2, v));
    for (size_t a = 0; a < keys1.size(); ++a) {
        int b = -1;
        for (size_t t = 0; t < keys2.size(); ++t)
            if (keys2[t] == keys1[a]) b = static_cast<int>(t);
        if (b < 0) throw Error("internal-inconsistency: unmatched facet over a common P");

        auto hyperplane_data = [&](const FramedPolytope& f, size_t g_idx,
                                   const IntegralAffineMap& eta) {
            ScalarMat urow{to_scalar_vec(f.germ[g_idx].u)};
            auto pt = solve_linear(urow, {f.germ[g_idx].c});
            if (!pt) throw Error("internal-inconsistency: empty facet hyperplane");
            std::vector<ScalarVec> dirs = nullspace(urow);
            ScalarVec p = apply_map(eta, *pt);
            std::vector<ScalarVec> out;
            for (const auto& d : dirs) out.push_back(mat_vec_int(eta.linear, d));
            return std::make_pair(p, out);
        };
        auto [pa, dira] = hyperplane_data(f1, a, eta1);
        auto [pb, dirb] = hyperplane_data(f2, static_cast<size_t>(b), eta2);
        ScalarMat stack = dira;
        for (auto& d : dirb) stack.push_back(std::move(d));
        stack.push_back(vec_sub(pb, pa));
        std::vector<ScalarVec> ann = nullspace(stack);
        if (ann.size() != 1)
            throw Error("hyperplane-span: facet hulls do not span a hyperplane");
        IntVec w = primitive_covector(ann[0]);
        Scalar c = dot_iv(w, pa);
        int pos = 0, neg = 0;
        for (const auto& pt : p3_points) {
            int s = (dot_iv(w, pt) - c).sign();
            if (s > 0) ++pos;
            if (s < 0) ++neg;
        }
        if (pos > 0 && neg > 0) throw Error("hyperplane-span: facet hyperplane separates P");
        if (neg > 0) {
            for (auto& x : w) x = -x;
            c = -c;
        }
        germ3.push_back({std::move(w), std::move(c)});
    }

    Slice l3;
    l3.base = apply_map(eta2, f2.slice.base);
    for (const auto& d : f2.slice.directions) l3.directions.push_back(mat_vec_int(eta2.linear, d));
    FramedPolytope third = canonicalize_germ(
        make_framed(static_cast<int>(n3), std::move(l3), std::move(germ3)));
    std::sort(p3_points.begin(), p3_points.end(), lex_less);
    if (third.polytope.vertices != p3_points)
        throw Error("internal-inconsistency: crossed-product polytope mismatch");

    RegularGermReport reg = is_regular_germ(third);
    if (!reg.regular) throw Error("output-irregular: crossed product germ fails regularity");
    MoritaEmbeddingReport r1 = verify_morita_embedding(eta1, f1, third);
    if (!r1.ok) throw Error("output-irregular: first embedding fails: " + r1.failure);
    MoritaEmbeddingReport r2 = verify_morita_embedding(eta2, f2, third);
    if (!r2.ok) throw Error("output-irregular: second embedding fails: " + r2.failure);
    return {std::move(third), std::move(eta1), std::move(eta2)};
}

WeightedPolytope weighted_polytope_of(const FramedPolytope& f) {
    CanonicalEmbedding ce = canonical_embedding(f.polytope);
    IntMatrix g = IntMatrix::from_rows(ce.covectors);
    std::vector<int> vmap;
    for (const auto& v : f.polytope.vertices) {
        int id = find_vertex(ce.image, mat_vec_int(g, v));
        if (id < 0) throw Error("internal-inconsistency: embedded vertex lost");
        vmap.push_back(id);
    }
    HPolyhedron h = irredundant_hrep(ce.image);
    auto inc = incidence(h, ce.image);
    std::vector<std::vector<int>> facet_sets(h.inequalities.size());
    for (size_t v = 0; v < inc.size(); ++v)
        for (int fi : inc[v]) facet_sets[fi].push_back(static_cast<int>(v));
    auto contacts = germ_contacts(f);
    WeightedPolytope out;
    out.polytope = ce.image;
    out.weights.assign(h.inequalities.size(), 0);
    for (size_t fi = 0; fi < facet_sets.size(); ++fi) {
        std::sort(facet_sets[fi].begin(), facet_sets[fi].end());
        int found = -1;
        for (size_t gi = 0; gi < contacts.size(); ++gi) {
            std::vector<int> key;
            for (int v : contacts[gi]) key.push_back(vmap[v]);
            std::sort(key.begin(), key.end());
            if (key == facet_sets[fi]) found = static_cast<int>(gi);
        }
        if (found < 0) throw Error("internal-inconsistency: facet without a germ facet");
        out.weights[fi] = facet_weight(f, found);
    }
    return out;
}

MoritaDecision decide_morita(const FramedPolytope& f1, const FramedPolytope& f2) {
    MoritaDecision out{MoritaVerdict::undecided_irrational, std::nullopt, ""};
    if (!slice_is_rational(f1) || !slice_is_rational(f2)) {
        out.detail = "undecided: irrational slice";
        return out;
    }
    WeightedPolytope w1 = weighted_polytope_of(f1);
    WeightedPolytope w2 = weighted_polytope_of(f2);
    std::vector<IntegralAffineMap> isos = polytope_iso_all(w1.polytope, w2.polytope);
    if (isos.empty()) {
        out.verdict = MoritaVerdict::inequivalent_polytopes;
        out.detail = "inequivalent: no integral affine isomorphism of the polytopes";
        return out;
    }
    HPolyhedron h1 = irredundant_hrep(w1.polytope), h2 = irredundant_hrep(w2.polytope);
    auto inc1 = incidence(h1, w1.polytope), inc2 = incidence(h2, w2.polytope);
    auto facet_sets = [](const std::vector<std::set<int>>& inc, size_t k) {
        std::vector<std::vector<int>> out(k);
        for (size_t v = 0; v < inc.size(); ++v)
            for (int fi : inc[v]) out[fi].push_back(static_cast<int>(v));
        return out;
    };
    auto fs1 = facet_sets(inc1, h1.inequalities.size());
    auto fs2 = facet_sets(inc2, h2.inequalities.size());

    for (const auto& chi : isos) {
        std::vector<int> sigma;
        for (const auto& v : w1.polytope.vertices) {
            int id = find_vertex(w2.polytope, apply_map(chi, v));
            if (id < 0) throw Error("internal-inconsistency: isomorphism lost a vertex");
            sigma.push_back(id);
        }
        bool weights_match = true;
        for (size_t fi = 0; fi < fs1.size() && weights_match; ++fi) {
            std::vector<int> key;
            for (int v : fs1[fi]) key.push_back(sigma[v]);
            std::sort(key.begin(), key.end());
            int target = -1;
            for (size_t fj = 0; fj < fs2.size(); ++fj)
                if (fs2[fj] == key) target = static_cast<int>(fj);
            if (target < 0) throw Error("internal-inconsistency: facet image is not a facet");
            weights_match = (w1.weights[fi] == w2.weights[target]);
        }
        if (weights_match) {
            out.verdict = MoritaVerdict::equivalent;
            out.witness = crossed_product(f1, f2, chi);
            out.detail = "equivalent: weight-preserving isomorphism with verified witness";
            return out;
        }
    }
    out.verdict = MoritaVerdict::inequivalent_weights;
    out.detail = "inequivalent: facet weights differ under every isomorphism";
    return out;
}

QuotientInvariant quotient_invariant(const FramedPolytope& f) {
    QuotientInvariant out;
    if (slice_is_rational(f)) {
        out.orbifold = true;
        out.weighted = weighted_polytope_of(f);
    } else {
        out.report = irrationality_degree(f.polytope);
        out.flatness = flatness_relations(f);
    }
    return out;
}

}  // namespace fpt
