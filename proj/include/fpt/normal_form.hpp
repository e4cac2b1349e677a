#pragma once

#include "fpt/framing.hpp"

namespace fpt {

/// One affine relation <a, x> = b holding on the slice L.
struct FlatnessRelation {
    ScalarVec a;
    Scalar b;
};

struct FlatnessData {
    std::vector<FlatnessRelation> relations;  // basis of ann(dir L), d rows
    std::vector<ScalarVec> kernel_vectors;    // the rows read as vectors Y_i
    bool rationality = false;                 // ann(dir L) has a full integer basis
};

FlatnessData flatness_relations(const FramedPolytope& f);

struct KernelDirections {
    std::vector<ScalarVec> basis;
    bool closed_leaves = false;
};

KernelDirections kernel_directions(const FramedPolytope& f);

struct LocalModel {
    std::set<int> face;                    // full active germ facet set
    int face_dim = 0;
    int corank = 0;                        // s = number of active facets
    std::vector<IntVec> m_star_basis;      // active primitive covectors
    std::vector<ScalarVec> l_basis;        // direction vectors of L
    bool transversal = false;              // active covectors independent on dir(L)
    std::vector<ScalarVec> face_of_image;  // basis of dir(L) ∩ ker(active)
};

/// Local data at the face of P cut out by the given germ facets. Throws
/// "not-a-face" when no point of P activates all of them and
/// "non-transversal" when the framing is invalid at the face.
LocalModel local_model(const FramedPolytope& f, const std::set<int>& germ_facets);

}  // namespace fpt
