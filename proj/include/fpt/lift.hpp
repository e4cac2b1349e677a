#pragma once

#include "fpt/framing.hpp"

namespace fpt {

/// One affine functional F(x) = <a, x> + b cutting a facet {F >= 0}.
struct LiftRow {
    ScalarVec a;
    Scalar b;
};

struct LiftResult {
    FramedPolytope framed;  // in R^{n+k}, germ canonical
    int base_dim = 0;       // n: projection onto the first n coordinates
    VPolytope base_polytope;
    std::vector<LiftRow> rows;           // in input facet order
    std::vector<int> germ_index_of_row;  // row i -> index into framed.germ
    bool is_integral_iso = false;        // all linear parts integer
};

/// The cubic lift: box Q in R^{n+k} sliced by {y_i = F_i(x)}. Inequality
/// rows must be facet-defining; redundant rows throw unless stripping is
/// requested. Rational rows are normalized to coprime integer linear parts.
LiftResult lift_and_frame(const HPolyhedron& p, bool strip_redundant = false);

/// The Q_{p,q} framed segment: P = [(0,0),(a,0)], germ x >= 0 and
/// p(x - a) + q y <= 0, slice {y = 0}. Requires gcd(p, q) = 1.
FramedPolytope make_qpq(const Scalar& a, const Int& p, const Int& q);

/// Replaces row i by (p/q) times itself, q = gcd of the current linear part,
/// making the facet weight p; requires integer rows (rational P).
LiftResult retarget_weights(const LiftResult& lift, int row_index, const Int& p);

/// lift_and_frame followed by per-facet retargeting; weights are indexed in
/// irredundant_hrep facet order.
LiftResult realize_weighted(const VPolytope& p, const std::vector<Int>& weights);

}  // namespace fpt
