#pragma once

#include <optional>
#include <set>

#include "fpt/linalg.hpp"

namespace fpt {

/// One constraint row: <u, x> >= c (or = c when used as an equality).
struct Halfspace {
    ScalarVec u;
    Scalar c;

    friend bool operator==(const Halfspace& a, const Halfspace& b) {
        return a.u == b.u && a.c == b.c;
    }
};

struct HPolyhedron {
    int ambient_dim = 0;
    std::vector<Halfspace> inequalities;
    std::vector<Halfspace> equalities;
};

struct VPolytope {
    int ambient_dim = 0;
    std::vector<ScalarVec> vertices;
};

/// Extreme rays and lineality space of {x : <a_i, x> >= 0}, computed by the
/// incremental double-description method. Rays are canonically scaled.
struct ConeDD {
    std::vector<ScalarVec> rays;
    std::vector<ScalarVec> lineality;
};
ConeDD dd_cone(const std::vector<ScalarVec>& constraints, int dim);

/// Canonical positive rescaling of a constraint row or ray: primitive integer
/// vector when all entries are rational, otherwise divided by the absolute
/// value of the first nonzero entry.
ScalarVec canonical_ray(const ScalarVec& v);

/// Exact vertex set, sorted lexicographically. Returns nullopt for the empty
/// polyhedron; throws "unbounded-polyhedron" when a recession direction or
/// lineality exists.
std::optional<VPolytope> enumerate_vertices(const HPolyhedron& p);

/// Facet-defining inequalities only, canonically scaled and sorted, with
/// equalities spanning the affine hull's annihilator.
HPolyhedron irredundant_hrep(const VPolytope& p);

/// Deduplicate, drop non-extreme points, sort: the canonical vertex list.
VPolytope canonical_vpolytope(const VPolytope& p);

struct AffineHull {
    ScalarVec base;
    std::vector<ScalarVec> directions;  // spans differences of vertices
};
AffineHull affine_hull(const VPolytope& p);

int dim_of(const VPolytope& p);

/// Active inequality indices per vertex (exact equality test), aligned with
/// h.inequalities and v.vertices.
std::vector<std::set<int>> incidence(const HPolyhedron& h, const VPolytope& v);

struct Face {
    std::set<int> active;        // inequality indices of h
    std::vector<int> vertex_ids;  // indices into v.vertices
    int dim = 0;
};

/// All nonempty faces of P (vertices up to P itself), derived from the
/// incidence data by closing vertex active-sets under intersection.
std::vector<Face> all_faces(const HPolyhedron& h, const VPolytope& v);

struct SimpleReport {
    bool simple = true;
    std::optional<ScalarVec> witness_vertex;  // a vertex on too many facets
};
SimpleReport is_simple(const VPolytope& p);

/// Cone {d : <u_i, d> >= 0 for i active at the face spanned by the given
/// index set}, with base point a relative-interior point of that face.
struct SupportingCone {
    ScalarVec base_point;
    HPolyhedron cone;  // inequalities through the origin
};
SupportingCone supporting_cone(const HPolyhedron& h, const std::set<int>& face);

/// Canonical form: inequalities reduced modulo the equality span, canonically
/// scaled, deduplicated, sorted; equalities in scaled RREF order.
HPolyhedron canonical_hrep(const HPolyhedron& p);

}  // namespace fpt
