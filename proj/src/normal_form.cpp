#include "fpt/normal_form.hpp"

#include <algorithm>

namespace fpt {

FlatnessData flatness_relations(const FramedPolytope& f) {
    FlatnessData out;
    ScalarMat dir_rows = f.slice.directions;
    std::vector<ScalarVec> ann;
    if (dir_rows.empty()) {
        for (int j = 0; j < f.ambient_dim; ++j) {
            ScalarVec e(f.ambient_dim, Scalar(0));
            e[j] = Scalar(1);
            ann.push_back(std::move(e));
        }
    } else {
        ann = nullspace(dir_rows);
    }
    for (auto& a : ann) {
        Scalar b = dot(a, f.slice.base);
        out.kernel_vectors.push_back(a);
        out.relations.push_back({std::move(a), std::move(b)});
    }

    // rationality: does the annihilator admit a full integer basis?
    std::vector<IntVec> split;
    for (const auto& d : f.slice.directions)
        for (auto& r : integer_split_rows(d)) split.push_back(std::move(r));
    size_t d_count = out.relations.size();
    if (split.empty()) {
        out.rationality = true;
    } else {
        out.rationality = integer_kernel(IntMatrix::from_rows(split)).size() == d_count;
    }
    return out;
}

KernelDirections kernel_directions(const FramedPolytope& f) {
    FlatnessData fd = flatness_relations(f);
    return {std::move(fd.kernel_vectors), fd.rationality};
}

LocalModel local_model(const FramedPolytope& f, const std::set<int>& germ_facets) {
    int k = static_cast<int>(f.germ.size());
    for (int i : germ_facets)
        if (i < 0 || i >= k) throw Error("bad-parameter: germ facet index out of range");

    auto active_at = [&](const ScalarVec& v, int i) {
        return (dot(to_scalar_vec(f.germ[i].u), v) - f.germ[i].c).is_zero();
    };
    std::vector<const ScalarVec*> contact;
    for (const auto& v : f.polytope.vertices) {
        bool all = true;
        for (int i : germ_facets) all = all && active_at(v, i);
        if (all) contact.push_back(&v);
    }
    if (contact.empty()) throw Error("not-a-face: no point of P activates all given facets");

    LocalModel out;
    for (int i = 0; i < k; ++i) {
        bool all = true;
        for (const auto* v : contact) all = all && active_at(*v, i);
        if (all) out.face.insert(i);
    }
    out.corank = static_cast<int>(out.face.size());
    for (int i : out.face) out.m_star_basis.push_back(f.germ[i].u);
    out.l_basis = f.slice.directions;

    // restriction of the active covectors to dir(L)
    ScalarMat restricted;
    for (int i : out.face) {
        ScalarVec row;
        for (const auto& d : f.slice.directions) row.push_back(dot(to_scalar_vec(f.germ[i].u), d));
        restricted.push_back(std::move(row));
    }
    int r = restricted.empty() ? 0 : rank(restricted);
    out.transversal = (r == out.corank);
    if (!out.transversal) throw Error("non-transversal: active covectors dependent on the slice");

    // directions of the cut face: dir(L) ∩ ker(active covectors)
    std::vector<ScalarVec> coeffs;
    {
        ScalarMat sys;
        for (int i : out.face) {
            ScalarVec row;
            for (const auto& d : f.slice.directions)
                row.push_back(dot(to_scalar_vec(f.germ[i].u), d));
            sys.push_back(std::move(row));
        }
        if (sys.empty()) {
            for (size_t j = 0; j < f.slice.directions.size(); ++j) {
                ScalarVec e(f.slice.directions.size(), Scalar(0));
                e[j] = Scalar(1);
                coeffs.push_back(std::move(e));
            }
        } else {
            coeffs = nullspace(sys);
        }
    }
    for (const auto& c : coeffs) {
        ScalarVec dir(f.ambient_dim, Scalar(0));
        for (size_t j = 0; j < f.slice.directions.size(); ++j)
            dir = vec_add(dir, vec_scale(c[j], f.slice.directions[j]));
        out.face_of_image.push_back(std::move(dir));
    }
    out.face_dim = static_cast<int>(out.face_of_image.size());
    return out;
}

}  // namespace fpt
