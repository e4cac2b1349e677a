#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fpt/lift.hpp"

using namespace fpt;

namespace {

ScalarVec pt(std::initializer_list<int> xs) {
    ScalarVec v;
    for (int x : xs) v.push_back(Scalar(x));
    return v;
}

bool framed_equal(const FramedPolytope& a, const FramedPolytope& b) {
    return a.ambient_dim == b.ambient_dim && a.germ == b.germ && slice_equal(a.slice, b.slice);
}

}  // namespace

TEST_CASE("lift of the unit interval") {
    HPolyhedron h;
    h.ambient_dim = 1;
    h.inequalities.push_back({{Scalar(1)}, Scalar(0)});
    h.inequalities.push_back({{Scalar(-1)}, Scalar(-1)});
    LiftResult lr = lift_and_frame(h);
    CHECK(lr.framed.ambient_dim == 3);
    CHECK(lr.base_dim == 1);
    CHECK(lr.is_integral_iso);
    REQUIRE(lr.framed.polytope.vertices.size() == 2);
    CHECK(lr.framed.polytope.vertices[0] == pt({0, 0, 1}));
    CHECK(lr.framed.polytope.vertices[1] == pt({1, 1, 0}));
    CHECK(lr.framed.germ.size() == 2);
    for (int idx : lr.germ_index_of_row) {
        CHECK(lr.framed.germ[idx].c.is_zero());
    }
    CHECK(validate(lr.framed).all());
}

TEST_CASE("lift of the (0,0),(1,0),(0,2) triangle") {
    VPolytope tri{2, {pt({0, 0}), pt({1, 0}), pt({0, 2})}};
    LiftResult lr = lift_and_frame(irredundant_hrep(tri));
    CHECK(lr.framed.ambient_dim == 5);
    CHECK(lr.framed.germ.size() == 3);
    CHECK(lr.framed.polytope.vertices.size() == 3);
    CHECK(validate(lr.framed).all());
    CHECK(lr.is_integral_iso);
}

TEST_CASE("lift of the sqrt(2)-slope segment") {
    VPolytope seg{2, {pt({0, 0}), {Scalar(1), Scalar::sqrt_of(2)}}};
    LiftResult lr = lift_and_frame(irredundant_hrep(seg));
    CHECK(lr.base_dim == 2);
    CHECK(lr.framed.germ.size() == 2);
    ValidationReport r = validate(lr.framed);
    CHECK(r.all());
    // rational-faced input, but the lifted P' keeps an irrational affine hull
    CHECK(irrationality_degree(lr.framed.polytope).degree == 1);
}

TEST_CASE("redundant rows are rejected unless stripped") {
    HPolyhedron h;
    h.ambient_dim = 1;
    h.inequalities.push_back({{Scalar(1)}, Scalar(0)});
    h.inequalities.push_back({{Scalar(-1)}, Scalar(-1)});
    h.inequalities.push_back({{Scalar(1)}, Scalar(-5)});  // redundant
    CHECK_THROWS_AS(lift_and_frame(h), Error);
    LiftResult lr = lift_and_frame(h, true);
    CHECK(lr.rows.size() == 2);
    CHECK(lr.framed.ambient_dim == 3);
}

TEST_CASE("make_qpq") {
    FramedPolytope f10 = make_qpq(Scalar(1), 1, 0);
    CHECK(f10.germ.size() == 2);
    CHECK(validate(f10).all());
    REQUIRE(f10.polytope.vertices.size() == 2);
    CHECK(f10.polytope.vertices[0] == pt({0, 0}));
    CHECK(f10.polytope.vertices[1] == pt({1, 0}));

    FramedPolytope f21 = make_qpq(Scalar(1), 2, 1);
    CHECK(validate(f21).all());
    bool found = false;
    for (const auto& g : f21.germ)
        if (g.u == IntVec{-2, -1}) {
            found = true;
            CHECK(g.c == Scalar(-2));
        }
    CHECK(found);

    FramedPolytope fneg = make_qpq(Scalar(1), 2, -3);
    CHECK(validate(fneg).all());

    CHECK_THROWS_AS(make_qpq(Scalar(1), 2, 2), Error);
    CHECK_THROWS_AS(make_qpq(Scalar(0), 1, 0), Error);
    CHECK_THROWS_AS(make_qpq(Scalar(1), 0, 1), Error);
}

TEST_CASE("retarget_weights rescales one row") {
    HPolyhedron h;
    h.ambient_dim = 1;
    h.inequalities.push_back({{Scalar(1)}, Scalar(0)});
    h.inequalities.push_back({{Scalar(-1)}, Scalar(-1)});
    LiftResult lr = lift_and_frame(h);
    LiftResult r3 = retarget_weights(lr, 0, 3);
    CHECK(r3.rows[0].a == ScalarVec{Scalar(3)});
    CHECK(r3.rows[0].b == Scalar(0));
    CHECK(r3.rows[1].a == lr.rows[1].a);
    CHECK(validate(r3.framed).all());
    // base polytope unchanged
    CHECK(r3.base_polytope.vertices == lr.base_polytope.vertices);

    // retargeting to the current weight is the identity on the framing
    LiftResult same = retarget_weights(lr, 0, 1);
    CHECK(framed_equal(same.framed, lr.framed));

    // two facets retarget independently, in either order
    LiftResult a = retarget_weights(retarget_weights(lr, 0, 2), 1, 5);
    LiftResult b = retarget_weights(retarget_weights(lr, 1, 5), 0, 2);
    CHECK(framed_equal(a.framed, b.framed));
    CHECK(a.rows[0].a == ScalarVec{Scalar(2)});
    CHECK(a.rows[1].a == ScalarVec{Scalar(-5)});
}

TEST_CASE("realize_weighted") {
    VPolytope square{2, {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})}};
    LiftResult plain = lift_and_frame(irredundant_hrep(square));
    LiftResult ones = realize_weighted(square, {1, 1, 1, 1});
    CHECK(framed_equal(plain.framed, ones.framed));

    LiftResult w = realize_weighted(square, {2, 3, 1, 5});
    CHECK(validate(w.framed).all());
    CHECK(w.framed.ambient_dim == 6);

    VPolytope pyramid{3,
                      {pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({1, 1, 0}),
                       {Scalar(Rat(1, 2)), Scalar(Rat(1, 2)), Scalar(1)}}};
    CHECK_THROWS_AS(realize_weighted(pyramid, {1, 1, 1, 1, 1}), Error);
}
