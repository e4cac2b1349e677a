#include "fpt/framing.hpp"

#include <algorithm>

namespace fpt {

namespace {

bool germ_less(const GermFacet& a, const GermFacet& b) {
    if (a.u != b.u) return std::lexicographical_compare(a.u.begin(), a.u.end(), b.u.begin(), b.u.end());
    return (a.c - b.c).sign() < 0;
}

GermFacet normalize_germ_facet(GermFacet g) {
    Int d = gcd_of(g.u);
    if (d == 0) throw Error("zero-covector: germ facet");
    if (d != 1) {
        for (auto& x : g.u) x /= d;
        g.c /= Scalar(d);
    }
    return g;
}

std::vector<ScalarVec> rref_directions(std::vector<ScalarVec> dirs) {
    ScalarMat m(dirs.begin(), dirs.end());
    rref(m);
    std::vector<ScalarVec> out;
    for (auto& row : m)
        if (!vec_is_zero(row)) out.push_back(std::move(row));
    return out;
}

// Active germ facets at a point, by exact evaluation.
std::vector<int> active_germ(const FramedPolytope& f, const ScalarVec& v) {
    std::vector<int> act;
    for (size_t i = 0; i < f.germ.size(); ++i) {
        Scalar val = dot(to_scalar_vec(f.germ[i].u), v) - f.germ[i].c;
        if (val.sign() < 0) throw Error("infeasible-vertex: point outside germ");
        if (val.is_zero()) act.push_back(static_cast<int>(i));
    }
    return act;
}

}  // namespace

std::vector<Halfspace> slice_equalities(const Slice& s, int ambient_dim) {
    for (const auto& d : s.directions)
        if (static_cast<int>(d.size()) != ambient_dim)
            throw Error("shape-mismatch: slice direction dimension");
    ScalarMat rows(s.directions.begin(), s.directions.end());
    std::vector<Halfspace> eqs;
    if (rows.empty()) {
        for (int i = 0; i < ambient_dim; ++i) {
            ScalarVec u(ambient_dim, Scalar(0));
            u[i] = Scalar(1);
            eqs.push_back({u, s.base[i]});
        }
        return eqs;
    }
    for (const auto& u : nullspace(rows)) eqs.push_back({u, dot(u, s.base)});
    return eqs;
}

HPolyhedron framed_hrep(const FramedPolytope& f) {
    HPolyhedron h;
    h.ambient_dim = f.ambient_dim;
    for (const auto& g : f.germ) h.inequalities.push_back({to_scalar_vec(g.u), g.c});
    h.equalities = slice_equalities(f.slice, f.ambient_dim);
    return h;
}

FramedPolytope make_framed(int ambient_dim, Slice slice, std::vector<GermFacet> germ) {
    FramedPolytope f;
    f.ambient_dim = ambient_dim;
    slice.directions = rref_directions(std::move(slice.directions));
    f.slice = std::move(slice);
    for (auto& g : germ) {
        if (static_cast<int>(g.u.size()) != ambient_dim)
            throw Error("shape-mismatch: germ covector dimension");
        f.germ.push_back(normalize_germ_facet(std::move(g)));
    }
    auto v = enumerate_vertices(framed_hrep(f));
    if (!v) throw Error("empty-slice: germ does not meet the slice");
    f.polytope = *v;
    return f;
}

bool slice_equal(const Slice& a, const Slice& b) {
    if (a.directions.size() != b.directions.size()) return false;
    std::vector<ScalarVec> da = rref_directions(a.directions);
    std::vector<ScalarVec> db = rref_directions(b.directions);
    if (da != db) return false;
    // equal direction spaces: bases must coincide through one base point
    ScalarVec diff = vec_sub(a.base, b.base);
    if (vec_is_zero(diff)) return true;
    ScalarMat cols;  // solve sum t_j d_j = diff
    if (da.empty()) return false;
    cols = transpose(ScalarMat(da.begin(), da.end()));
    return solve_linear(cols, diff).has_value();
}

FramedPolytope canonicalize_germ(const FramedPolytope& f) {
    int n = dim_of(f.polytope);
    FramedPolytope out;
    out.ambient_dim = f.ambient_dim;
    out.slice = f.slice;
    out.polytope = f.polytope;
    for (const auto& g : f.germ) {
        ScalarVec u = to_scalar_vec(g.u);
        std::vector<ScalarVec> contact;
        for (const auto& v : f.polytope.vertices)
            if ((dot(u, v) - g.c).is_zero()) contact.push_back(v);
        if (contact.empty()) continue;
        ScalarMat diffs;
        for (size_t i = 1; i < contact.size(); ++i) diffs.push_back(vec_sub(contact[i], contact[0]));
        int fdim = diffs.empty() ? 0 : rank(diffs);
        if (fdim == n - 1) out.germ.push_back(g);
    }
    std::sort(out.germ.begin(), out.germ.end(), germ_less);
    out.germ.erase(std::unique(out.germ.begin(), out.germ.end()), out.germ.end());
    return out;
}

ValidationReport validate(const FramedPolytope& f) {
    ValidationReport r;
    std::optional<VPolytope> v;
    try {
        v = enumerate_vertices(framed_hrep(f));
    } catch (const Error& e) {
        r.witness = e.what();
        return r;
    }
    if (!v) {
        r.witness = "empty-slice";
        return r;
    }
    r.bounded = true;
    const VPolytope& p = *v;
    int n = dim_of(p);

    FramedPolytope canon = canonicalize_germ(f);
    HPolyhedron hp = irredundant_hrep(p);
    r.germ_canonical =
        canon.germ.size() == f.germ.size() && hp.inequalities.size() == f.germ.size();
    if (!r.germ_canonical && r.witness.empty()) r.witness = "germ not canonical";

    auto simple_rep = is_simple(p);
    r.simple = simple_rep.simple;
    if (!r.simple && r.witness.empty()) r.witness = "non-simple vertex";

    r.transversal = true;
    for (const auto& vert : p.vertices) {
        auto act = active_germ(f, vert);
        ScalarMat restr;
        for (int i : act) {
            ScalarVec row;
            for (const auto& d : f.slice.directions) row.push_back(dot(to_scalar_vec(f.germ[i].u), d));
            restr.push_back(std::move(row));
        }
        if (!restr.empty() && rank(restr) != static_cast<int>(act.size())) {
            r.transversal = false;
            if (r.witness.empty()) r.witness = "non-transversal at a vertex";
            break;
        }
    }

    auto reg = is_regular_germ(f);
    r.regular = reg.regular;
    if (!r.regular && r.witness.empty()) r.witness = "irregular vertex stack";

    if (n == 0) {
        r.rational_faced = true;
    } else {
        r.rational_faced = is_rational_faced(p).rational_faced;
    }
    if (!r.rational_faced && r.witness.empty()) r.witness = "facet without integer covector";
    return r;
}

FramedPolytope slice_polyhedron(const HPolyhedron& q, const Slice& l) {
    if (q.ambient_dim == 0) throw Error("shape-mismatch: zero-dimensional ambient");
    std::vector<GermFacet> germ;
    for (const auto& iq : q.inequalities) {
        for (const auto& x : iq.u)
            if (!x.is_rational()) throw Error("irrational-value: facet covector of Q");
        IntVec prim = primitive_covector(iq.u);
        Scalar factor(1);
        for (size_t i = 0; i < iq.u.size(); ++i)
            if (!iq.u[i].is_zero()) {
                factor = Scalar(prim[i]) / iq.u[i];
                break;
            }
        germ.push_back({std::move(prim), iq.c * factor});
    }

    Slice sl = l;
    // fold the equalities of Q into the slice by intersecting direction spaces
    if (!q.equalities.empty()) {
        // new directions: dir(l) ∩ ker(rows); base must satisfy equalities;
        // solve for combinations of l.directions annihilated by the rows
        ScalarMat sys;  // rows_e . (sum t_j d_j) = 0
        for (const auto& e : q.equalities) {
            ScalarVec r;
            for (const auto& d : l.directions) r.push_back(dot(e.u, d));
            sys.push_back(std::move(r));
        }
        std::vector<ScalarVec> combos = nullspace(sys);
        std::vector<ScalarVec> new_dirs;
        for (const auto& t : combos) {
            ScalarVec d(q.ambient_dim, Scalar(0));
            for (size_t j = 0; j < l.directions.size(); ++j)
                d = vec_add(d, vec_scale(t[j], l.directions[j]));
            new_dirs.push_back(std::move(d));
        }
        // base point: solve equalities within the slice
        ScalarVec rhs;
        for (const auto& e : q.equalities) rhs.push_back(e.c - dot(e.u, l.base));
        auto t0 = solve_linear(sys, rhs);
        if (!t0) throw Error("empty-slice: slice misses the equalities of Q");
        ScalarVec base = l.base;
        for (size_t j = 0; j < l.directions.size(); ++j)
            base = vec_add(base, vec_scale((*t0)[j], l.directions[j]));
        sl.base = std::move(base);
        sl.directions = std::move(new_dirs);
    }

    FramedPolytope raw = make_framed(q.ambient_dim, sl, germ);
    FramedPolytope canon = canonicalize_germ(raw);

    ValidationReport rep = validate(canon);
    if (!rep.transversal) throw Error("non-transversal: " + rep.witness);
    return canon;
}

RationalFacedReport is_rational_faced(const VPolytope& p0) {
    VPolytope p = canonical_vpolytope(p0);
    if (dim_of(p) < 1) throw Error("dimension-too-small: is_rational_faced needs dim >= 1");
    HPolyhedron h = irredundant_hrep(p);
    AffineHull hull = affine_hull(p);
    RationalFacedReport rep;
    for (const auto& iq : h.inequalities) {
        // direction space of the facet
        std::vector<ScalarVec> contact;
        for (const auto& v : p.vertices)
            if ((dot(iq.u, v) - iq.c).is_zero()) contact.push_back(v);
        std::vector<IntVec> constraint_rows;
        for (size_t i = 1; i < contact.size(); ++i) {
            for (auto& row : integer_split_rows(vec_sub(contact[i], contact[0])))
                constraint_rows.push_back(std::move(row));
        }
        IntMatrix m = constraint_rows.empty() ? IntMatrix(0, p.ambient_dim)
                                              : IntMatrix::from_rows(constraint_rows);
        std::optional<IntVec> cert;
        for (const auto& u : integer_kernel(m)) {
            bool nonconstant = false;
            for (const auto& d : hull.directions)
                if (!dot(to_scalar_vec(u), d).is_zero()) { nonconstant = true; break; }
            if (nonconstant) {
                cert = u;
                break;
            }
        }
        if (!cert) rep.rational_faced = false;
        rep.certificates.push_back(std::move(cert));
    }
    return rep;
}

RegularGermReport is_regular_germ(const FramedPolytope& f) {
    RegularGermReport rep;
    for (const auto& v : f.polytope.vertices) {
        auto act = active_germ(f, v);
        if (act.empty()) continue;
        std::vector<IntVec> rows;
        for (int i : act) rows.push_back(f.germ[i].u);
        auto inv = smith_invariants(IntMatrix::from_rows(rows));
        bool ok = inv.size() == rows.size();
        for (const auto& d : inv) ok &= (d == 1);
        if (!ok) {
            rep.regular = false;
            rep.witness_vertex = v;
            rep.witness_invariants = inv;
            return rep;
        }
    }
    return rep;
}

bool is_delzant(const VPolytope& p0) {
    VPolytope p = canonical_vpolytope(p0);
    if (dim_of(p) != p.ambient_dim)
        throw Error("not-full-dimensional: is_delzant needs dim P = ambient dim");
    HPolyhedron h = irredundant_hrep(p);
    for (const auto& iq : h.inequalities)
        for (const auto& x : iq.u)
            if (!x.is_rational()) return false;
    if (!is_simple(p).simple) return false;
    auto inc = incidence(h, p);
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        std::vector<IntVec> rows;
        for (int j : inc[i]) rows.push_back(primitive_covector(h.inequalities[j].u));
        auto inv = smith_invariants(IntMatrix::from_rows(rows));
        if (inv.size() != rows.size()) return false;
        for (const auto& d : inv)
            if (d != 1) return false;
    }
    return true;
}

IrrationalityReport irrationality_degree(const VPolytope& p0) {
    VPolytope p = canonical_vpolytope(p0);
    AffineHull hull = affine_hull(p);
    int n = static_cast<int>(hull.directions.size());
    int N = p.ambient_dim;
    IrrationalityReport rep;
    rep.dim_p = n;
    if (n == 0) return rep;

    // restriction of the i-th standard covector to dir(P)
    std::vector<ScalarVec> restr(N, ScalarVec(n));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < n; ++j) restr[i][j] = hull.directions[j][i];
    rep.daff_rank = qspan_rank(restr);
    rep.degree = rep.daff_rank - n;

    // integerize the Q^{2n} split with one common denominator
    Int den = 1;
    auto fold_den = [&](const Rat& r) {
        Int d = boost::multiprecision::denominator(r);
        den = den / boost::multiprecision::gcd(den, d) * d;
    };
    for (const auto& row : restr)
        for (const auto& x : row) {
            fold_den(x.rational_part());
            fold_den(x.radical_part());
        }
    IntMatrix z(N, 2 * n);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < n; ++j) {
            Rat a = restr[i][j].rational_part() * Rat(den);
            Rat b = restr[i][j].radical_part() * Rat(den);
            z.at(i, j) = boost::multiprecision::numerator(a);
            z.at(i, n + j) = boost::multiprecision::numerator(b);
        }
    RowHnfResult rh = row_hnf(z);
    for (size_t i = 0; i < rh.h.rows; ++i) {
        bool zero = true;
        for (size_t j = 0; j < rh.h.cols; ++j)
            if (rh.h.at(i, j) != 0) { zero = false; break; }
        if (zero) break;
        rep.daff_basis.push_back(rh.u.row(i));
    }
    if (static_cast<int>(rep.daff_basis.size()) != rep.daff_rank)
        throw Error("internal-inconsistency: daff basis size");
    return rep;
}

CanonicalEmbedding canonical_embedding(const VPolytope& p0) {
    VPolytope p = canonical_vpolytope(p0);
    if (dim_of(p) >= 1 && !is_rational_faced(p).rational_faced)
        throw Error("not-rational-faced: canonical_embedding");
    IrrationalityReport rep = irrationality_degree(p);
    CanonicalEmbedding emb;
    emb.covectors = rep.daff_basis;
    emb.image.ambient_dim = static_cast<int>(rep.daff_basis.size());
    for (const auto& v : p.vertices) {
        ScalarVec w;
        for (const auto& g : rep.daff_basis) w.push_back(dot(to_scalar_vec(g), v));
        emb.image.vertices.push_back(std::move(w));
    }
    std::sort(emb.image.vertices.begin(), emb.image.vertices.end(), lex_less);
    emb.image.vertices.erase(std::unique(emb.image.vertices.begin(), emb.image.vertices.end()),
                             emb.image.vertices.end());
    if (emb.image.vertices.size() != p.vertices.size())
        throw Error("internal-inconsistency: canonical embedding not injective");
    return emb;
}

LatticeBasis slice_lattice(const FramedPolytope& f) {
    for (const auto& d : f.slice.directions)
        for (const auto& x : d)
            if (!x.is_rational()) throw Error("irrational-slice: no lattice in dir(L)");
    return lattice_intersect_subspace(f.ambient_dim, f.slice.directions);
}

bool slice_is_rational(const FramedPolytope& f) {
    std::vector<ScalarVec> canon = f.slice.directions;
    ScalarMat m(canon.begin(), canon.end());
    rref(m);
    for (const auto& row : m)
        for (const auto& x : row)
            if (!x.is_rational()) return false;
    return true;
}

}  // namespace fpt
