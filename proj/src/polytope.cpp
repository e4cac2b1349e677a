#include "fpt/polytope.hpp"

#include <algorithm>

#include "fpt/intmatrix.hpp"

namespace fpt {

ScalarVec canonical_ray(const ScalarVec& v) {
    bool rational = true, nonzero = false;
    for (const auto& x : v) {
        rational &= x.is_rational();
        nonzero |= !x.is_zero();
    }
    if (!nonzero) return v;
    if (rational) return to_scalar_vec(primitive_covector(v));
    for (const auto& x : v)
        if (!x.is_zero()) return vec_scale(x.abs().inverse(), v);
    return v;
}

namespace {

// Positive rescaling based on the covector part only: primitive integer when
// the covector is rational, otherwise first-nonzero absolute value 1. The
// constant follows the same factor. `sign_free` additionally flips equality
// rows so the first nonzero covector entry is positive.
Halfspace canonical_halfspace(ScalarVec u, Scalar c, bool sign_free) {
    bool rational = true;
    for (const auto& x : u) rational &= x.is_rational();
    Scalar factor(1);
    if (rational) {
        IntVec prim = primitive_covector(u);
        for (size_t i = 0; i < u.size(); ++i)
            if (!u[i].is_zero()) {
                factor = Scalar(prim[i]) / u[i];
                break;
            }
    } else {
        for (const auto& x : u)
            if (!x.is_zero()) {
                factor = x.abs().inverse();
                break;
            }
    }
    u = vec_scale(factor, u);
    c *= factor;
    if (sign_free) {
        for (const auto& x : u) {
            if (x.is_zero()) continue;
            if (x.sign() < 0) {
                u = vec_scale(Scalar(-1), u);
                c = -c;
            }
            break;
        }
    }
    return {std::move(u), std::move(c)};
}

bool halfspace_less(const Halfspace& a, const Halfspace& b) {
    if (a.u != b.u) return lex_less(a.u, b.u);
    return (a.c - b.c).sign() < 0;
}

}  // namespace

ConeDD dd_cone(const std::vector<ScalarVec>& constraints, int dim) {
    ConeDD state;
    for (int i = 0; i < dim; ++i) {
        ScalarVec e(dim, Scalar(0));
        e[i] = Scalar(1);
        state.lineality.push_back(std::move(e));
    }
    std::vector<ScalarVec> rays;
    std::vector<std::vector<char>> zsets;  // tight-constraint flags per ray
    size_t processed = 0;

    for (const auto& a : constraints) {
        if (static_cast<int>(a.size()) != dim) throw Error("shape-mismatch: dd_cone constraint");
        int pivot = -1;
        Scalar d0;
        for (size_t i = 0; i < state.lineality.size(); ++i) {
            Scalar d = dot(a, state.lineality[i]);
            if (!d.is_zero()) {
                pivot = static_cast<int>(i);
                d0 = d;
                break;
            }
        }
        if (pivot >= 0) {
            ScalarVec l0 = state.lineality[pivot];
            state.lineality.erase(state.lineality.begin() + pivot);
            Scalar inv = d0.inverse();
            for (auto& l : state.lineality) {
                Scalar f = dot(a, l) * inv;
                if (!f.is_zero()) l = vec_sub(l, vec_scale(f, l0));
            }
            for (size_t i = 0; i < rays.size(); ++i) {
                Scalar f = dot(a, rays[i]) * inv;
                if (!f.is_zero()) rays[i] = canonical_ray(vec_sub(rays[i], vec_scale(f, l0)));
                zsets[i].push_back(1);
            }
            ScalarVec nr = d0.sign() > 0 ? l0 : vec_scale(Scalar(-1), l0);
            rays.push_back(canonical_ray(nr));
            zsets.emplace_back(processed, static_cast<char>(1));
            zsets.back().push_back(0);
            ++processed;
            continue;
        }

        std::vector<int> sign_of(rays.size());
        bool any_neg = false;
        for (size_t i = 0; i < rays.size(); ++i) {
            sign_of[i] = dot(a, rays[i]).sign();
            any_neg |= (sign_of[i] < 0);
        }
        if (!any_neg) {
            for (size_t i = 0; i < rays.size(); ++i) zsets[i].push_back(sign_of[i] == 0 ? 1 : 0);
            ++processed;
            continue;
        }
        std::vector<ScalarVec> next_rays;
        std::vector<std::vector<char>> next_z;
        for (size_t i = 0; i < rays.size(); ++i) {
            if (sign_of[i] < 0) continue;
            next_rays.push_back(rays[i]);
            next_z.push_back(zsets[i]);
            next_z.back().push_back(sign_of[i] == 0 ? 1 : 0);
        }
        size_t nproc = processed;
        for (size_t i = 0; i < rays.size(); ++i) {
            if (sign_of[i] <= 0) continue;
            for (size_t j = 0; j < rays.size(); ++j) {
                if (sign_of[j] >= 0) continue;
                // combinatorial adjacency: no third ray is tight everywhere
                // both parents are tight
                std::vector<char> common(nproc);
                for (size_t t = 0; t < nproc; ++t) common[t] = zsets[i][t] & zsets[j][t];
                bool adjacent = true;
                for (size_t k = 0; k < rays.size() && adjacent; ++k) {
                    if (k == i || k == j) continue;
                    bool contains = true;
                    for (size_t t = 0; t < nproc && contains; ++t)
                        if (common[t] && !zsets[k][t]) contains = false;
                    if (contains) adjacent = false;
                }
                if (!adjacent) continue;
                Scalar di = dot(a, rays[i]), dj = dot(a, rays[j]);
                ScalarVec w = vec_sub(vec_scale(di, rays[j]), vec_scale(dj, rays[i]));
                if (vec_is_zero(w)) continue;
                w = canonical_ray(w);
                bool dup = false;
                for (const auto& r : next_rays)
                    if (r == w) { dup = true; break; }
                if (dup) continue;
                common.push_back(1);
                next_rays.push_back(std::move(w));
                next_z.push_back(std::move(common));
            }
        }
        rays = std::move(next_rays);
        zsets = std::move(next_z);
        ++processed;
    }
    state.rays = std::move(rays);
    return state;
}

std::optional<VPolytope> enumerate_vertices(const HPolyhedron& p) {
    int N = p.ambient_dim;
    ScalarVec x0(N, Scalar(0));
    std::vector<ScalarVec> B;
    if (!p.equalities.empty()) {
        ScalarMat e;
        ScalarVec d;
        for (const auto& eq : p.equalities) {
            e.push_back(eq.u);
            d.push_back(eq.c);
        }
        auto sol = solve_linear(e, d);
        if (!sol) return std::nullopt;
        x0 = *sol;
        B = nullspace(e);
    } else {
        for (int i = 0; i < N; ++i) {
            ScalarVec b(N, Scalar(0));
            b[i] = Scalar(1);
            B.push_back(std::move(b));
        }
    }
    size_t k = B.size();

    std::vector<ScalarVec> cons;
    {
        ScalarVec t_row(k + 1, Scalar(0));
        t_row[k] = Scalar(1);
        cons.push_back(std::move(t_row));
    }
    for (const auto& iq : p.inequalities) {
        ScalarVec row(k + 1);
        for (size_t j = 0; j < k; ++j) row[j] = dot(iq.u, B[j]);
        row[k] = dot(iq.u, x0) - iq.c;
        cons.push_back(std::move(row));
    }
    ConeDD dd = dd_cone(cons, static_cast<int>(k) + 1);

    bool nonempty = false;
    bool recession = !dd.lineality.empty();
    std::vector<ScalarVec> verts;
    for (const auto& r : dd.rays) {
        int ts = r[k].sign();
        if (ts > 0) {
            nonempty = true;
            ScalarVec v(x0);
            Scalar inv = r[k].inverse();
            for (size_t j = 0; j < k; ++j) v = vec_add(v, vec_scale(r[j] * inv, B[j]));
            verts.push_back(std::move(v));
        } else {
            recession = true;
        }
    }
    if (!nonempty) return std::nullopt;
    if (recession) throw Error("unbounded-polyhedron: recession direction exists");
    std::sort(verts.begin(), verts.end(), lex_less);
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return VPolytope{N, std::move(verts)};
}

HPolyhedron irredundant_hrep(const VPolytope& p) {
    if (p.vertices.empty()) throw Error("empty-polytope: irredundant_hrep needs a point");
    int N = p.ambient_dim;
    std::vector<ScalarVec> cons;
    for (const auto& v : p.vertices) {
        ScalarVec row(v);
        row.push_back(Scalar(1));
        cons.push_back(std::move(row));
    }
    ConeDD dd = dd_cone(cons, N + 1);

    HPolyhedron h;
    h.ambient_dim = N;
    for (const auto& l : dd.lineality) {
        ScalarVec u(l.begin(), l.end() - 1);
        if (vec_is_zero(u)) continue;  // cannot happen for distinct vertices
        h.equalities.push_back({std::move(u), -l[N]});
    }
    for (const auto& r : dd.rays) {
        ScalarVec u(r.begin(), r.end() - 1);
        if (vec_is_zero(u)) continue;  // the trivial inequality 0 >= -t
        h.inequalities.push_back({std::move(u), -r[N]});
    }
    return canonical_hrep(h);
}

HPolyhedron canonical_hrep(const HPolyhedron& p) {
    // Row-reduce the equality system [u | c].
    ScalarMat eq;
    for (const auto& e : p.equalities) {
        ScalarVec row(e.u);
        row.push_back(e.c);
        eq.push_back(std::move(row));
    }
    std::vector<int> pivots = rref(eq);
    HPolyhedron out;
    out.ambient_dim = p.ambient_dim;
    for (size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == p.ambient_dim) throw Error("inconsistent-hrep: equality 0 = 1");
        ScalarVec u(eq[i].begin(), eq[i].end() - 1);
        out.equalities.push_back(canonical_halfspace(std::move(u), eq[i].back(), true));
    }
    std::sort(out.equalities.begin(), out.equalities.end(), halfspace_less);

    for (const auto& iq : p.inequalities) {
        ScalarVec row(iq.u);
        row.push_back(iq.c);
        // reduce modulo the equality span
        for (size_t i = 0; i < pivots.size(); ++i) {
            Scalar f = row[pivots[i]];
            if (f.is_zero()) continue;
            for (size_t j = 0; j < row.size(); ++j) row[j] -= f * eq[i][j];
        }
        ScalarVec u(row.begin(), row.end() - 1);
        if (vec_is_zero(u)) {
            if (row.back().sign() > 0)
                throw Error("inconsistent-hrep: inequality 0 >= positive");
            continue;  // trivial
        }
        out.inequalities.push_back(canonical_halfspace(std::move(u), row.back(), false));
    }
    std::sort(out.inequalities.begin(), out.inequalities.end(), halfspace_less);
    out.inequalities.erase(std::unique(out.inequalities.begin(), out.inequalities.end()),
                           out.inequalities.end());
    return out;
}

VPolytope canonical_vpolytope(const VPolytope& p) {
    if (p.vertices.empty()) return p;
    auto v = enumerate_vertices(irredundant_hrep(p));
    if (!v) throw Error("internal-inconsistency: nonempty point set enumerated empty");
    return *v;
}

AffineHull affine_hull(const VPolytope& p) {
    if (p.vertices.empty()) throw Error("empty-polytope: affine_hull needs a point");
    AffineHull hull;
    hull.base = p.vertices[0];
    ScalarMat diffs;
    for (size_t i = 1; i < p.vertices.size(); ++i)
        diffs.push_back(vec_sub(p.vertices[i], p.vertices[0]));
    rref(diffs);
    for (const auto& row : diffs)
        if (!vec_is_zero(row)) hull.directions.push_back(row);
    return hull;
}

int dim_of(const VPolytope& p) { return static_cast<int>(affine_hull(p).directions.size()); }

std::vector<std::set<int>> incidence(const HPolyhedron& h, const VPolytope& v) {
    std::vector<std::set<int>> inc(v.vertices.size());
    for (size_t i = 0; i < v.vertices.size(); ++i)
        for (size_t j = 0; j < h.inequalities.size(); ++j) {
            const auto& iq = h.inequalities[j];
            int s = (dot(iq.u, v.vertices[i]) - iq.c).sign();
            if (s < 0) throw Error("infeasible-vertex: point violates an inequality");
            if (s == 0) inc[i].insert(static_cast<int>(j));
        }
    return inc;
}

std::vector<Face> all_faces(const HPolyhedron& h, const VPolytope& v) {
    auto inc = incidence(h, v);
    std::set<std::set<int>> sets(inc.begin(), inc.end());
    // close under pairwise intersection
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::set<int>> cur(sets.begin(), sets.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                std::set<int> meet;
                std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(),
                                      std::inserter(meet, meet.begin()));
                if (sets.insert(meet).second) grew = true;
            }
    }
    std::vector<Face> faces;
    for (const auto& a : sets) {
        Face f;
        f.active = a;
        for (size_t i = 0; i < inc.size(); ++i)
            if (std::includes(inc[i].begin(), inc[i].end(), a.begin(), a.end()))
                f.vertex_ids.push_back(static_cast<int>(i));
        ScalarMat diffs;
        for (size_t t = 1; t < f.vertex_ids.size(); ++t)
            diffs.push_back(vec_sub(v.vertices[f.vertex_ids[t]], v.vertices[f.vertex_ids[0]]));
        f.dim = diffs.empty() ? 0 : rank(diffs);
        faces.push_back(std::move(f));
    }
    return faces;
}

SimpleReport is_simple(const VPolytope& p) {
    VPolytope v = canonical_vpolytope(p);
    HPolyhedron h = irredundant_hrep(v);
    int n = dim_of(v);
    auto inc = incidence(h, v);
    for (size_t i = 0; i < inc.size(); ++i)
        if (static_cast<int>(inc[i].size()) != n) return {false, v.vertices[i]};
    return {true, std::nullopt};
}

SupportingCone supporting_cone(const HPolyhedron& h, const std::set<int>& face) {
    for (int i : face)
        if (i < 0 || i >= static_cast<int>(h.inequalities.size()))
            throw Error("bad-face-index: out of range");
    auto v = enumerate_vertices(h);
    if (!v) throw Error("empty-polytope: supporting_cone");
    auto inc = incidence(h, *v);
    std::vector<int> contact;
    for (size_t i = 0; i < inc.size(); ++i)
        if (std::includes(inc[i].begin(), inc[i].end(), face.begin(), face.end()))
            contact.push_back(static_cast<int>(i));
    if (contact.empty()) throw Error("not-a-face: no vertex realizes the index set");
    std::set<int> closure = inc[contact[0]];
    for (size_t t = 1; t < contact.size(); ++t) {
        std::set<int> meet;
        std::set_intersection(closure.begin(), closure.end(), inc[contact[t]].begin(),
                              inc[contact[t]].end(), std::inserter(meet, meet.begin()));
        closure = std::move(meet);
    }
    ScalarVec base(h.ambient_dim, Scalar(0));
    for (int id : contact) base = vec_add(base, v->vertices[id]);
    base = vec_scale(Scalar(Rat(1, static_cast<long>(contact.size()))), base);

    SupportingCone sc;
    sc.base_point = std::move(base);
    sc.cone.ambient_dim = h.ambient_dim;
    for (int i : closure) sc.cone.inequalities.push_back({h.inequalities[i].u, Scalar(0)});
    return sc;
}

}  // namespace fpt
