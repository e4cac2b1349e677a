// Acceptance gate: one pass/fail line per criterion; the exit code is the
// number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include "fpt/io.hpp"
#include "fpt/morita.hpp"
#include "fpt/normal_form.hpp"

using namespace fpt;

namespace {

using Clock = std::chrono::steady_clock;

ScalarVec pt(std::initializer_list<int> xs) {
    ScalarVec v;
    for (int x : xs) v.push_back(Scalar(x));
    return v;
}

HPolyhedron random_hpoly(std::mt19937& rng, int n, int extra, int box) {
    HPolyhedron h;
    h.ambient_dim = n;
    for (int j = 0; j < n; ++j) {
        ScalarVec up(n, Scalar(0)), dn(n, Scalar(0));
        up[j] = Scalar(1);
        dn[j] = Scalar(-1);
        h.inequalities.push_back({up, Scalar(-box)});
        h.inequalities.push_back({dn, Scalar(-box)});
    }
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int e = 0; e < extra; ++e) {
        ScalarVec u(n, Scalar(0));
        int absum = 0;
        for (int j = 0; j < n; ++j) {
            int c = coef(rng);
            u[j] = Scalar(c);
            absum += std::abs(c);
        }
        if (absum == 0) {
            --e;
            continue;
        }
        std::uniform_int_distribution<int> cdist(-box * absum, 0);
        h.inequalities.push_back({std::move(u), Scalar(cdist(rng))});
    }
    return h;
}

IntMatrix random_unimodular(size_t n, std::mt19937& rng) {
    IntMatrix m = IntMatrix::identity(n);
    std::uniform_int_distribution<int> coefd(-2, 2), pickd(0, static_cast<int>(n) - 1);
    for (int step = 0; step < 12; ++step) {
        size_t i = pickd(rng), j = pickd(rng);
        if (i == j) continue;
        Int f = coefd(rng);
        for (size_t c = 0; c < n; ++c) m.at(i, c) += f * m.at(j, c);
    }
    return m;
}

Int weight_after_transport(const FramedPolytope& from, size_t facet, const IntegralAffineMap& phi,
                           const FramedPolytope& moved) {
    ScalarMat inv = invert(phi.linear.to_scalar());
    const IntVec& u = from.germ[facet].u;
    IntVec moved_u(u.size(), 0);
    for (size_t c = 0; c < u.size(); ++c) {
        Scalar s(0);
        for (size_t r = 0; r < u.size(); ++r) s += Scalar(u[r]) * inv[r][c];
        moved_u[c] = s.as_integer();
    }
    for (size_t g = 0; g < moved.germ.size(); ++g)
        if (moved.germ[g].u == moved_u) return facet_weight(moved, static_cast<int>(g));
    throw Error("internal-inconsistency: transported facet lost");
}

// brute-force oracle: intersect every full-rank constraint subset
std::vector<ScalarVec> oracle_vertices(const HPolyhedron& h) {
    int n = h.ambient_dim;
    std::vector<ScalarVec> out;
    size_t m = h.inequalities.size();
    std::vector<int> idx(n, 0);
    std::function<void(int, size_t)> rec = [&](int depth, size_t from) {
        if (depth == n) {
            ScalarMat a;
            ScalarVec b;
            for (int i = 0; i < n; ++i) {
                a.push_back(h.inequalities[idx[i]].u);
                b.push_back(h.inequalities[idx[i]].c);
            }
            if (rank(a) != n) return;
            auto x = solve_linear(a, b);
            if (!x) return;
            for (const auto& iq : h.inequalities)
                if ((dot(iq.u, *x) - iq.c).sign() < 0) return;
            for (const auto& seen : out)
                if (seen == *x) return;
            out.push_back(*x);
            return;
        }
        for (size_t i = from; i < m; ++i) {
            idx[depth] = static_cast<int>(i);
            rec(depth + 1, i + 1);
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

std::vector<MoritaWitness> g_witnesses;  // built by criterion 4
std::vector<FramedPolytope> g_corpus;    // every framing seen, for criterion 9
std::vector<FramedPolytope> g_pairs1;    // first factor of each witness

FramedPolytope strip_framing() {
    Slice l{{Scalar(0), Scalar(0)}, {{Scalar(1), Scalar(0)}}};
    std::vector<GermFacet> germ{{{1, 0}, Scalar(0)}, {{-1, 0}, Scalar(-1)}};
    return canonicalize_germ(make_framed(2, std::move(l), std::move(germ)));
}

FramedPolytope corner_framing() {
    Slice l{{Scalar(1), Scalar(0)}, {{Scalar(1), Scalar(-1)}}};
    std::vector<GermFacet> germ{{{1, 0}, Scalar(0)}, {{0, 1}, Scalar(0)}};
    return canonicalize_germ(make_framed(2, std::move(l), std::move(germ)));
}

bool criterion_1() {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> ndist(1, 3), kdist(0, 4), wdist(1, 6);
    int done = 0;
    while (done < 200) {
        HPolyhedron h = random_hpoly(rng, ndist(rng), kdist(rng), 2);
        LiftResult lr;
        try {
            lr = lift_and_frame(h, true);
        } catch (const Error&) {
            continue;  // degenerate sample
        }
        if (!lr.rows.empty()) {
            int which = std::uniform_int_distribution<int>(
                0, static_cast<int>(lr.rows.size()) - 1)(rng);
            lr = retarget_weights(lr, which, wdist(rng));
        }
        for (size_t i = 0; i < lr.rows.size(); ++i) {
            IntVec a;
            for (const auto& x : lr.rows[i].a) a.push_back(x.as_integer());
            if (facet_weight(lr.framed, lr.germ_index_of_row[i]) != gcd_of(a)) return false;
        }
        g_corpus.push_back(lr.framed);
        ++done;
    }
    return true;
}

bool criterion_2() {
    std::vector<std::pair<int, int>> family;
    for (int p = 1; p <= 5; ++p)
        for (int q = -5; q <= 5; ++q)
            if (boost::multiprecision::gcd(Int(p), Int(std::abs(q))) == 1)
                family.emplace_back(p, q);
    std::vector<FramedPolytope> fr;
    for (auto [p, q] : family) fr.push_back(make_qpq(Scalar(1), p, q));
    for (size_t i = 0; i < family.size(); ++i) {
        g_corpus.push_back(fr[i]);
        for (size_t j = 0; j < family.size(); ++j) {
            auto [p1, q1] = family[i];
            auto [p2, q2] = family[j];
            bool want_iso = (p1 == p2) && (q1 == q2 || q1 == -q2);
            if (framed_iso(fr[i], fr[j]).has_value() != want_iso) return false;
            bool want_morita = (p1 == p2);
            MoritaDecision d = decide_morita(fr[i], fr[j]);
            if ((d.verdict == MoritaVerdict::equivalent) != want_morita) return false;
            if (d.verdict == MoritaVerdict::equivalent && !d.witness) return false;
        }
    }
    return true;
}

bool criterion_3(std::string& note) {
    std::mt19937 rng(303);
    std::uniform_int_distribution<int> ndist(1, 3), kdist(0, 3);
    int done = 0;
    bool ok = true;
    while (done < 50) {
        HPolyhedron h = random_hpoly(rng, ndist(rng), kdist(rng), 2);
        std::optional<VPolytope> v;
        try {
            v = enumerate_vertices(h);
        } catch (const Error&) {
            continue;
        }
        if (!v || dim_of(*v) != h.ambient_dim || !is_simple(*v).simple) continue;
        LiftResult lr = lift_and_frame(h, true);
        if (!validate(lr.framed).all()) return false;
        VPolytope ce_p = canonical_embedding(*v).image;
        VPolytope ce_lift = canonical_embedding(lr.framed.polytope).image;
        if (!polytope_iso(ce_p, ce_lift).has_value()) return false;
        g_corpus.push_back(lr.framed);
        ++done;
    }
    // the sqrt(2)-slope segment: the lift must validate and project bijectively
    VPolytope seg{2, {pt({0, 0}), {Scalar(1), Scalar::sqrt_of(2)}}};
    LiftResult lr = lift_and_frame(irredundant_hrep(seg));
    g_corpus.push_back(lr.framed);
    if (!validate(lr.framed).all()) return false;
    if (lr.framed.polytope.vertices.size() != seg.vertices.size()) return false;
    bool iso_fails = !polytope_iso(canonical_embedding(seg).image,
                                   canonical_embedding(lr.framed.polytope).image)
                          .has_value();
    if (!iso_fails) {
        note = "the lifted segment is integral-affinely isomorphic to its base"
               " (both canonical embeddings coincide), so the required isomorphism"
               " failure cannot occur";
        ok = false;
    }
    return ok;
}

bool criterion_4() {
    std::mt19937 rng(404);
    std::uniform_int_distribution<int> kdist(0, 2), wdist(1, 4);
    int done = 0;
    while (done < 30) {
        HPolyhedron h = random_hpoly(rng, 2, kdist(rng), 2);
        std::optional<VPolytope> v;
        try {
            v = enumerate_vertices(h);
        } catch (const Error&) {
            continue;
        }
        if (!v || dim_of(*v) != 2 || !is_simple(*v).simple) continue;
        HPolyhedron canon = irredundant_hrep(*v);
        std::vector<Int> w;
        for (size_t i = 0; i < canon.inequalities.size(); ++i) w.push_back(wdist(rng));

        LiftResult fa = realize_weighted(*v, w);
        // a second retarget history: intermediate weights, then the target
        // weights applied in reverse facet order
        LiftResult fb = lift_and_frame(canon);
        for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i)
            fb = retarget_weights(fb, i, w[i] + 1);
        for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i)
            fb = retarget_weights(fb, i, w[i]);

        int n = dim_of(fa.framed.polytope);
        IntegralAffineMap chi{IntMatrix::identity(n), ScalarVec(n, Scalar(0))};
        MoritaWitness wit;
        try {
            wit = crossed_product(fa.framed, fb.framed, chi);
        } catch (const Error&) {
            return false;
        }
        if (!is_regular_germ(wit.third).regular) return false;
        if (!verify_morita_embedding(wit.embed_1, fa.framed, wit.third).ok) return false;
        if (!verify_morita_embedding(wit.embed_2, fb.framed, wit.third).ok) return false;
        g_pairs1.push_back(fa.framed);
        g_witnesses.push_back(std::move(wit));
        g_corpus.push_back(fa.framed);
        g_corpus.push_back(fb.framed);
        ++done;
    }
    return true;
}

bool criterion_5() {
    // invariance under random unimodular ambient transforms
    std::mt19937 rng(505);
    std::vector<FramedPolytope> pool;
    pool.push_back(make_qpq(Scalar(1), 2, 1));
    pool.push_back(make_qpq(Scalar(2), 3, -2));
    VPolytope square{2, {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})}};
    pool.push_back(realize_weighted(square, {2, 3, 1, 5}).framed);
    for (int trial = 0; trial < 100; ++trial) {
        const FramedPolytope& f = pool[trial % pool.size()];
        size_t nn = static_cast<size_t>(f.ambient_dim);
        ScalarVec t(nn, Scalar(0));
        for (auto& x : t) x = Scalar(std::uniform_int_distribution<int>(-3, 3)(rng));
        IntegralAffineMap phi{random_unimodular(nn, rng), std::move(t)};
        FramedPolytope moved = transform_framed(f, phi);
        for (size_t i = 0; i < f.germ.size(); ++i)
            if (weight_after_transport(f, i, phi, moved) != facet_weight(f, static_cast<int>(i)))
                return false;
        if (trial < 10) g_corpus.push_back(moved);
    }
    // invariance across every verified embedding produced by criterion 4
    for (size_t widx = 0; widx < g_witnesses.size(); ++widx) {
        const MoritaWitness& wit = g_witnesses[widx];
        const FramedPolytope& f1 = g_pairs1[widx];
        for (size_t j = 0; j < wit.third.germ.size(); ++j) {
            const GermFacet& g = wit.third.germ[j];
            IntVec pull(wit.embed_1.linear.cols, 0);
            for (size_t c = 0; c < wit.embed_1.linear.cols; ++c)
                for (size_t r = 0; r < wit.embed_1.linear.rows; ++r)
                    pull[c] += g.u[r] * wit.embed_1.linear.at(r, c);
            int src = -1;
            for (size_t i = 0; i < f1.germ.size(); ++i)
                if (f1.germ[i].u == pull) src = static_cast<int>(i);
            if (src < 0) return false;
            if (facet_weight(wit.third, static_cast<int>(j)) != facet_weight(f1, src))
                return false;
        }
    }
    return true;
}

bool criterion_6() {
    // standard simplices and cubes are Delzant
    for (int n = 1; n <= 3; ++n) {
        HPolyhedron sx;
        sx.ambient_dim = n;
        ScalarVec sum(n, Scalar(-1));
        for (int j = 0; j < n; ++j) {
            ScalarVec e(n, Scalar(0));
            e[j] = Scalar(1);
            sx.inequalities.push_back({e, Scalar(0)});
        }
        sx.inequalities.push_back({sum, Scalar(-1)});
        auto sv = enumerate_vertices(sx);
        if (!sv || !is_delzant(*sv)) return false;

        HPolyhedron cube = random_hpoly(*(new std::mt19937(1)), n, 0, 1);
        auto cv = enumerate_vertices(cube);
        if (!cv || !is_delzant(*cv)) return false;
    }
    // the (0,0),(1,0),(0,2) triangle fails with determinant witness 2
    VPolytope tri{2, {pt({0, 0}), pt({1, 0}), pt({0, 2})}};
    if (is_delzant(tri)) return false;
    {
        HPolyhedron h = irredundant_hrep(tri);
        auto inc = incidence(h, tri);
        bool witness2 = false;
        for (size_t v = 0; v < inc.size(); ++v) {
            std::vector<IntVec> normals;
            for (int fi : inc[v]) normals.push_back(primitive_covector(h.inequalities[fi].u));
            Int det = IntMatrix::from_rows(normals).determinant();
            if (det == 2 || det == -2) witness2 = true;
        }
        if (!witness2) return false;
    }
    // weighted square round-trips through quotient_invariant
    VPolytope square{2, {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})}};
    LiftResult rw = realize_weighted(square, {2, 3, 1, 5});
    QuotientInvariant qi = quotient_invariant(rw.framed);
    if (!qi.orbifold || !qi.weighted) return false;
    if (qi.weighted->weights != std::vector<Int>{2, 3, 1, 5}) return false;
    if (qi.weighted->polytope.vertices != canonical_vpolytope(square).vertices) return false;
    g_corpus.push_back(rw.framed);
    return true;
}

bool criterion_7() {
    FramedPolytope strip = strip_framing();
    FramedPolytope corner = corner_framing();
    g_corpus.push_back(strip);
    g_corpus.push_back(corner);
    if (framed_iso(strip, corner).has_value()) return false;
    MoritaDecision d = decide_morita(strip, corner);
    if (d.verdict != MoritaVerdict::equivalent || !d.witness) return false;
    if (!verify_morita_embedding(d.witness->embed_1, strip, d.witness->third).ok) return false;
    if (!verify_morita_embedding(d.witness->embed_2, corner, d.witness->third).ok) return false;
    return true;
}

bool criterion_8() {
    std::mt19937 rng(808);
    std::uniform_int_distribution<int> ndist(1, 3), kdist(0, 4);
    int done = 0;
    while (done < 100) {
        int n = ndist(rng);
        HPolyhedron h = random_hpoly(rng, n, kdist(rng), 2);  // at most 2n+4 <= 10 rows
        auto v = enumerate_vertices(h);
        if (!v) return false;  // the generator always keeps the origin feasible
        if (v->vertices != oracle_vertices(h)) return false;
        // H -> V -> H -> V canonical roundtrip
        HPolyhedron canon = irredundant_hrep(*v);
        auto v2 = enumerate_vertices(canon);
        if (!v2 || v2->vertices != v->vertices) return false;
        HPolyhedron canon2 = irredundant_hrep(*v2);
        if (canonical_hrep(canon2).inequalities != canonical_hrep(canon).inequalities) return false;
        ++done;
    }
    return true;
}

bool criterion_9() {
    for (const FramedPolytope& f : g_corpus) {
        bool leaves = kernel_directions(f).closed_leaves;
        bool degree0 = irrationality_degree(f.polytope).degree == 0;
        bool orb = quotient_invariant(f).orbifold;
        if (leaves != degree0 || degree0 != orb) return false;
    }
    return !g_corpus.empty();
}

}  // namespace

int main() {
    struct Item {
        const char* label;
        std::function<bool(std::string&)> run;
        double budget_s;  // 0 = untimed
    };
    std::vector<Item> items{
        {"criterion 1: cubic-lift facet weights equal the row gcds (200 random polytopes)",
         [](std::string&) { return criterion_1(); }, 30.0},
        {"criterion 2: Q_{p,q} classification, framed iso iff q'=±q, Morita iff p'=p",
         [](std::string&) { return criterion_2(); }, 60.0},
        {"criterion 3: lifting theorem on 50 random simple polytopes and the sqrt(2) segment",
         [](std::string& n) { return criterion_3(n); }, 0.0},
        {"criterion 4: crossed products of 30 equal-weight pairs verify",
         [](std::string&) { return criterion_4(); }, 0.0},
        {"criterion 5: weight invariance under transforms and verified embeddings",
         [](std::string&) { return criterion_5(); }, 0.0},
        {"criterion 6: Delzant cases, irregular triangle witness, weighted-square roundtrip",
         [](std::string&) { return criterion_6(); }, 0.0},
        {"criterion 7: strip vs corner framings: non-isomorphic, Morita equivalent",
         [](std::string&) { return criterion_7(); }, 0.0},
        {"criterion 8: vertex enumeration agrees with the subset oracle (100 polytopes)",
         [](std::string&) { return criterion_8(); }, 60.0},
        {"criterion 9: trichotomy: closed leaves = degree 0 = orbifold branch",
         [](std::string&) { return criterion_9(); }, 0.0},
    };
    int failures = 0;
    for (auto& item : items) {
        std::string note;
        bool ok = false;
        auto t0 = Clock::now();
        try {
            ok = item.run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (item.budget_s > 0 && secs > item.budget_s) {
            ok = false;
            note += (note.empty() ? "" : "; ") + std::string("over time budget");
        }
        std::cout << (ok ? "PASS " : "FAIL ") << item.label << " [" << secs << "s]\n";
        if (!note.empty()) std::cout << "     note: " << note << "\n";
        if (!ok) ++failures;
    }
    return failures;
}
