#pragma once

#include "fpt/intmatrix.hpp"
#include "fpt/polytope.hpp"

namespace fpt {

/// One germ facet: <u, x> >= c with u a primitive integer covector.
struct GermFacet {
    IntVec u;
    Scalar c;

    friend bool operator==(const GermFacet& a, const GermFacet& b) {
        return a.u == b.u && a.c == b.c;
    }
};

/// Affine slice L = base + span(directions). Directions are kept in RREF
/// order so equal subspaces carry equal direction lists.
struct Slice {
    ScalarVec base;
    std::vector<ScalarVec> directions;
};

/// A framed momentum polytope: ambient Z^N, slice L, and the canonical germ
/// of the framing (only facets meeting P), with P = L ∩ germ cached.
struct FramedPolytope {
    int ambient_dim = 0;
    Slice slice;
    std::vector<GermFacet> germ;
    VPolytope polytope;  // canonical vertex list of P
};

/// Builds the cached polytope and normalizes covectors/directions; throws on
/// an empty or unbounded intersection. Does not canonicalize the germ.
FramedPolytope make_framed(int ambient_dim, Slice slice, std::vector<GermFacet> germ);

/// Equality rows cutting out the affine hull of the slice.
std::vector<Halfspace> slice_equalities(const Slice& s, int ambient_dim);

/// H-representation of P: germ inequalities plus slice equalities.
HPolyhedron framed_hrep(const FramedPolytope& f);

bool slice_equal(const Slice& a, const Slice& b);

/// Canonical germ: the facets of Q that meet P in a facet of P, sorted.
FramedPolytope canonicalize_germ(const FramedPolytope& f);

struct ValidationReport {
    bool bounded = false;
    bool transversal = false;
    bool simple = false;
    bool regular = false;
    bool rational_faced = false;
    bool germ_canonical = false;
    std::string witness;  // first failure, human-readable

    bool all() const {
        return bounded && transversal && simple && regular && rational_faced && germ_canonical;
    }
};
ValidationReport validate(const FramedPolytope& f);

/// P = Q ∩ L with germ canonicalization; throws on empty/unbounded slices,
/// non-transversal intersections and irrational facet covectors of Q.
FramedPolytope slice_polyhedron(const HPolyhedron& q, const Slice& l);

struct RationalFacedReport {
    bool rational_faced = true;
    // one entry per facet of the canonical H-representation: an integer
    // covector constant on the facet and non-constant on P, when one exists
    std::vector<std::optional<IntVec>> certificates;
};
RationalFacedReport is_rational_faced(const VPolytope& p);

struct RegularGermReport {
    bool regular = true;
    std::optional<ScalarVec> witness_vertex;
    std::vector<Int> witness_invariants;
};
RegularGermReport is_regular_germ(const FramedPolytope& f);

/// Delzant test for a full-dimensional polytope: rational facets, simple,
/// primitive vertex normals forming a lattice basis.
bool is_delzant(const VPolytope& p);

struct IrrationalityReport {
    int dim_p = 0;
    int daff_rank = 0;
    int degree = 0;
    std::vector<IntVec> daff_basis;  // ambient integer covectors
};
IrrationalityReport irrationality_degree(const VPolytope& p);

struct CanonicalEmbedding {
    VPolytope image;                 // full daff-rank copy in R^{n+d}
    std::vector<IntVec> covectors;   // rows of the embedding map G
};
CanonicalEmbedding canonical_embedding(const VPolytope& p);

/// Lattice basis of Z^N ∩ dir(L); throws when dir(L) is irrational.
LatticeBasis slice_lattice(const FramedPolytope& f);

bool slice_is_rational(const FramedPolytope& f);

}  // namespace fpt
