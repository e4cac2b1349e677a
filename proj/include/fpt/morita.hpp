#pragma once

#include "fpt/lift.hpp"
#include "fpt/normal_form.hpp"

namespace fpt {

/// x -> linear * x + translation; the linear part is an integer matrix with
/// saturated image (unimodular when square).
struct IntegralAffineMap {
    IntMatrix linear;
    ScalarVec translation;
};

ScalarVec apply_map(const IntegralAffineMap& m, const ScalarVec& x);

/// Deterministic order used to pick the least isomorphism.
bool map_less(const IntegralAffineMap& a, const IntegralAffineMap& b);

/// Transport a framing by an ambient unimodular-plus-translation map.
FramedPolytope transform_framed(const FramedPolytope& f, const IntegralAffineMap& m);

/// The positive generator of {<u_i, beta> : beta in Z^N ∩ dir(L)} for germ
/// facet i. Throws on an irrational slice.
Int facet_weight(const FramedPolytope& f, int germ_index);

/// All facet weights in germ order.
std::vector<Int> facet_weights(const FramedPolytope& f);

/// Integral affine isomorphisms carrying P1 onto P2. Inputs must be
/// canonically embedded (daff rank equal to ambient dimension). Complete
/// search; results sorted by map_less.
std::vector<IntegralAffineMap> polytope_iso_all(const VPolytope& p1, const VPolytope& p2);

/// The least isomorphism, if any.
std::optional<IntegralAffineMap> polytope_iso(const VPolytope& p1, const VPolytope& p2);

/// Ambient framed isomorphism: Phi(L1) = L2 and equal canonical germs after
/// transport. A returned map is always verified exactly. Absence is
/// certified when every candidate system is determined over Q; when a
/// candidate system is underdetermined the integer solutions are searched in
/// a bounded box, so a `nullopt` there means "none found".
std::optional<IntegralAffineMap> framed_iso(const FramedPolytope& f1, const FramedPolytope& f2);

struct MoritaEmbeddingReport {
    bool ok = false;
    std::string failure;        // first failing check, empty when ok
    std::vector<Int> lambdas;   // pullback multiples, per germ facet of `to`
};

/// Checks that eta is a Morita equivalence embedding of `from` into `to`:
/// (a) saturated linear part, (b) eta(L_from) = L_to with matching vertices,
/// (c) germ facets of `to` pull back bijectively to positive multiples of
/// the germ facets of `from` with matching constants, (d) all multiples 1.
MoritaEmbeddingReport verify_morita_embedding(const IntegralAffineMap& eta,
                                              const FramedPolytope& from,
                                              const FramedPolytope& to);

struct MoritaWitness {
    FramedPolytope third;
    IntegralAffineMap embed_1, embed_2;  // F1 -> third, F2 -> third
};

/// Crossed product of two rational regular framings over a common polytope.
/// `chi` identifies the canonical embeddings: chi(CE(P1)) = CE(P2).
/// Throws when a facet's joint hull is not a hyperplane or when the output
/// fails regularity (distinct weights).
MoritaWitness crossed_product(const FramedPolytope& f1, const FramedPolytope& f2,
                              const IntegralAffineMap& chi);

enum class MoritaVerdict {
    equivalent,
    inequivalent_polytopes,
    inequivalent_weights,
    undecided_irrational,
};

struct MoritaDecision {
    MoritaVerdict verdict;
    std::optional<MoritaWitness> witness;  // present iff equivalent
    std::string detail;
};

/// The rational-case decision procedure: polytope isomorphism first, then
/// facet weights over every isomorphism; `equivalent` ships a re-verified
/// crossed-product witness.
MoritaDecision decide_morita(const FramedPolytope& f1, const FramedPolytope& f2);

struct WeightedPolytope {
    VPolytope polytope;         // canonical embedding
    std::vector<Int> weights;   // per facet, irredundant_hrep order
};

struct QuotientInvariant {
    bool orbifold = false;
    std::optional<WeightedPolytope> weighted;     // orbifold branch
    std::optional<IrrationalityReport> report;    // quasifold branch
    std::optional<FlatnessData> flatness;         // quasifold branch
};

QuotientInvariant quotient_invariant(const FramedPolytope& f);

/// Facet weights of F transported to the facets of the canonical embedding
/// of P, indexed in irredundant_hrep order of the embedded polytope.
WeightedPolytope weighted_polytope_of(const FramedPolytope& f);

}  // namespace fpt
