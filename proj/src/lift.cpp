#include "fpt/lift.hpp"

#include <algorithm>

namespace fpt {

namespace {

Scalar eval_row(const LiftRow& r, const ScalarVec& x) { return dot(r.a, x) + r.b; }

LiftResult build_lift(const VPolytope& p, std::vector<LiftRow> rows) {
    int n = p.ambient_dim;
    int k = static_cast<int>(rows.size());

    Scalar maxval(0);
    for (const auto& v : p.vertices) {
        for (const auto& coord : v)
            if (coord.abs() > maxval) maxval = coord.abs();
        for (const auto& r : rows) {
            Scalar f = eval_row(r, v);
            if (f.sign() < 0) throw Error("infeasible-row: negative on a vertex");
            if (f > maxval) maxval = f;
        }
    }
    Scalar m_big(scalar_ceil(maxval) + 1);

    AffineHull hull = affine_hull(p);
    Slice l;
    l.base = hull.base;
    for (const auto& r : rows) l.base.push_back(eval_row(r, hull.base));
    for (const auto& d : hull.directions) {
        ScalarVec dd = d;
        for (const auto& r : rows) dd.push_back(dot(r.a, d));
        l.directions.push_back(std::move(dd));
    }

    std::vector<GermFacet> germ;
    auto unit = [&](int i, int sign) {
        IntVec u(n + k, 0);
        u[i] = sign;
        return u;
    };
    for (int j = 0; j < n; ++j) {
        germ.push_back({unit(j, 1), -m_big});
        germ.push_back({unit(j, -1), -m_big});
    }
    for (int i = 0; i < k; ++i) {
        germ.push_back({unit(n + i, 1), Scalar(0)});
        germ.push_back({unit(n + i, -1), -m_big});
    }

    LiftResult out;
    out.framed = canonicalize_germ(make_framed(n + k, std::move(l), std::move(germ)));
    out.base_dim = n;
    out.base_polytope = p;
    out.is_integral_iso = true;
    for (const auto& r : rows)
        for (const auto& x : r.a)
            if (!x.is_integer()) out.is_integral_iso = false;
    out.rows = std::move(rows);

    // locate each row's facet {y_i >= 0} in the canonical germ
    for (int i = 0; i < k; ++i) {
        IntVec want(n + k, 0);
        want[n + i] = 1;
        int idx = -1;
        for (size_t g = 0; g < out.framed.germ.size(); ++g)
            if (out.framed.germ[g].u == want && out.framed.germ[g].c.is_zero())
                idx = static_cast<int>(g);
        if (idx < 0) throw Error("internal-inconsistency: lifted facet lost");
        out.germ_index_of_row.push_back(idx);
    }
    if (out.framed.germ.size() != static_cast<size_t>(k))
        throw Error("internal-inconsistency: germ of the lift is not cubic");

    // projection bijectivity onto the input vertices
    std::vector<ScalarVec> proj;
    for (const auto& v : out.framed.polytope.vertices)
        proj.emplace_back(v.begin(), v.begin() + n);
    std::sort(proj.begin(), proj.end(), lex_less);
    if (proj != p.vertices) throw Error("internal-inconsistency: projection not bijective");
    return out;
}

LiftRow normalize_row(const ScalarVec& u, const Scalar& c) {
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
    return {vec_scale(factor, u), -(c * factor)};
}

}  // namespace

LiftResult lift_and_frame(const HPolyhedron& p, bool strip_redundant) {
    auto v = enumerate_vertices(p);
    if (!v) throw Error("empty-polytope: nothing to lift");
    HPolyhedron canon = irredundant_hrep(*v);

    // classify input inequality rows as facet-defining or redundant
    auto inc = incidence(canon, *v);
    int n_dim = dim_of(*v);
    std::vector<LiftRow> rows;
    std::vector<Halfspace> seen;
    for (const auto& iq : p.inequalities) {
        // facet test: contact set has dimension dim P - 1
        std::vector<ScalarVec> contact;
        for (const auto& vert : v->vertices)
            if ((dot(iq.u, vert) - iq.c).is_zero()) contact.push_back(vert);
        ScalarMat diffs;
        for (size_t i = 1; i < contact.size(); ++i)
            diffs.push_back(vec_sub(contact[i], contact[0]));
        int fdim = contact.empty() ? -1 : (diffs.empty() ? 0 : rank(diffs));
        bool facet = (fdim == n_dim - 1);
        bool dup = false;
        if (facet) {
            LiftRow cand = normalize_row(iq.u, iq.c);
            for (const auto& s : seen)
                if (s.u == cand.a && s.c == -cand.b) dup = true;
            if (!dup) {
                seen.push_back({cand.a, -cand.b});
                rows.push_back(std::move(cand));
                continue;
            }
        }
        if (!strip_redundant)
            throw Error("redundant-rows: a row is not facet-defining (pass strip to drop)");
    }
    return build_lift(*v, std::move(rows));
}

FramedPolytope make_qpq(const Scalar& a, const Int& p, const Int& q) {
    if (p < 1) throw Error("bad-parameter: p must be >= 1");
    if (a.sign() <= 0) throw Error("bad-parameter: a must be positive");
    if (boost::multiprecision::gcd(p, q < 0 ? Int(-q) : q) != 1)
        throw Error("bad-parameter: gcd(p, q) must be 1");
    Slice l;
    l.base = {Scalar(0), Scalar(0)};
    l.directions = {{Scalar(1), Scalar(0)}};
    std::vector<GermFacet> germ;
    germ.push_back({{1, 0}, Scalar(0)});
    germ.push_back({{-p, -q}, -(Scalar(p) * a)});
    return canonicalize_germ(make_framed(2, std::move(l), std::move(germ)));
}

LiftResult retarget_weights(const LiftResult& lift, int row_index, const Int& p) {
    if (p < 1) throw Error("bad-parameter: weight must be >= 1");
    if (row_index < 0 || row_index >= static_cast<int>(lift.rows.size()))
        throw Error("bad-parameter: row index out of range");
    for (const auto& v : lift.base_polytope.vertices)
        for (const auto& x : v)
            if (!x.is_rational()) throw Error("irrational-value: retarget needs a rational P");
    std::vector<LiftRow> rows = lift.rows;
    LiftRow& r = rows[row_index];
    IntVec a_int;
    for (const auto& x : r.a) a_int.push_back(x.as_integer());  // throws on non-integers
    Int q = gcd_of(a_int);
    Scalar factor = Scalar(p) / Scalar(q);
    r.a = vec_scale(factor, r.a);
    r.b *= factor;
    return build_lift(lift.base_polytope, std::move(rows));
}

LiftResult realize_weighted(const VPolytope& p, const std::vector<Int>& weights) {
    VPolytope canon = canonical_vpolytope(p);
    for (const auto& v : canon.vertices)
        for (const auto& x : v)
            if (!x.is_rational()) throw Error("irrational-value: realize_weighted needs rational P");
    auto simple = is_simple(canon);
    if (!simple.simple) throw Error("non-simple: realize_weighted needs a simple polytope");
    HPolyhedron h = irredundant_hrep(canon);
    if (weights.size() != h.inequalities.size())
        throw Error("shape-mismatch: one weight per facet required");
    LiftResult lr = lift_and_frame(h);
    for (size_t i = 0; i < weights.size(); ++i)
        lr = retarget_weights(lr, static_cast<int>(i), weights[i]);
    return lr;
}

}  // namespace fpt
