#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fpt/lift.hpp"
#include "fpt/normal_form.hpp"

using namespace fpt;

namespace {

ScalarVec pt(std::initializer_list<int> xs) {
    ScalarVec v;
    for (int x : xs) v.push_back(Scalar(x));
    return v;
}

FramedPolytope strip_framing() {
    Slice l{{Scalar(0), Scalar(0)}, {{Scalar(1), Scalar(0)}}};
    std::vector<GermFacet> germ{{{1, 0}, Scalar(0)}, {{-1, 0}, Scalar(-1)}};
    return canonicalize_germ(make_framed(2, std::move(l), std::move(germ)));
}

FramedPolytope trivial_square() {
    Slice l{{Scalar(0), Scalar(0)}, {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}};
    std::vector<GermFacet> germ{{{1, 0}, Scalar(0)},
                                {{-1, 0}, Scalar(-1)},
                                {{0, 1}, Scalar(0)},
                                {{0, -1}, Scalar(-1)}};
    return canonicalize_germ(make_framed(2, std::move(l), std::move(germ)));
}

}  // namespace

TEST_CASE("flatness relations of the strip framing") {
    FlatnessData fd = flatness_relations(strip_framing());
    REQUIRE(fd.relations.size() == 1);
    CHECK(fd.relations[0].a == ScalarVec{Scalar(0), Scalar(1)});
    CHECK(fd.relations[0].b == Scalar(0));
    CHECK(fd.rationality);
    CHECK(fd.kernel_vectors.size() == 1);
}

TEST_CASE("flatness of a full-dimensional slice is empty") {
    FlatnessData fd = flatness_relations(trivial_square());
    CHECK(fd.relations.empty());
    CHECK(fd.rationality);
    KernelDirections kd = kernel_directions(trivial_square());
    CHECK(kd.basis.empty());
    CHECK(kd.closed_leaves);
}

TEST_CASE("flatness of the lifted sqrt(2)-slope segment") {
    VPolytope seg{2, {pt({0, 0}), {Scalar(1), Scalar::sqrt_of(2)}}};
    LiftResult lr = lift_and_frame(irredundant_hrep(seg));
    FlatnessData fd = flatness_relations(lr.framed);
    CHECK(fd.relations.size() == static_cast<size_t>(lr.framed.ambient_dim - 1));
    CHECK_FALSE(fd.rationality);
    bool radical = false;
    for (const auto& rel : fd.relations) {
        for (const auto& x : rel.a) radical |= !x.is_rational();
        // each relation holds on every vertex of P
        for (const auto& v : lr.framed.polytope.vertices)
            CHECK((dot(rel.a, v) - rel.b).is_zero());
    }
    CHECK(radical);
    CHECK_FALSE(kernel_directions(lr.framed).closed_leaves);
}

TEST_CASE("local model at faces of Q_{2,1}") {
    FramedPolytope f = make_qpq(Scalar(1), 2, 1);
    // interior: no active facet
    LocalModel interior = local_model(f, {});
    CHECK(interior.corank == 0);
    CHECK(interior.m_star_basis.empty());
    CHECK(interior.transversal);
    CHECK(interior.face_dim == 1);

    for (int i = 0; i < 2; ++i) {
        LocalModel vm = local_model(f, {i});
        CHECK(vm.corank == 1);
        CHECK(vm.face_dim == 0);
        CHECK(vm.transversal);
        CHECK(vm.m_star_basis == std::vector<IntVec>{f.germ[i].u});
    }
    // both facets are never simultaneously active
    CHECK_THROWS_AS(local_model(f, {0, 1}), Error);
}

TEST_CASE("local model at a vertex of the lifted square") {
    VPolytope square{2, {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})}};
    LiftResult lr = lift_and_frame(irredundant_hrep(square));
    // every vertex has corank 2 and the rank identity holds on all faces
    int n = dim_of(lr.framed.polytope);
    for (size_t i = 0; i < lr.framed.germ.size(); ++i) {
        LocalModel one = local_model(lr.framed, {static_cast<int>(i)});
        CHECK(one.face_dim + one.corank == n);
        for (size_t j = i + 1; j < lr.framed.germ.size(); ++j) {
            try {
                LocalModel two = local_model(lr.framed, {static_cast<int>(i), static_cast<int>(j)});
                CHECK(two.corank == 2);
                CHECK(two.face_dim + two.corank == n);
            } catch (const Error&) {
                // not a face: opposite facets
            }
        }
    }
}
