#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "fpt/io.hpp"
#include "fpt/morita.hpp"
#include "fpt/normal_form.hpp"

using nlohmann::json;
using namespace fpt;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io-error: cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("io-error: cannot write " + path);
    out << text;
}

Document load_doc(const std::string& path) { return parse_document(read_file(path)); }

json json_scalar_vec(const ScalarVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

json json_int_vec(const IntVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

json json_map(const IntegralAffineMap& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.linear.rows; ++i) rows.push_back(json_int_vec(m.linear.row(i)));
    return {{"linear", rows}, {"translation", json_scalar_vec(m.translation)}};
}

std::string map_text(const IntegralAffineMap& m) {
    std::ostringstream out;
    for (size_t i = 0; i < m.linear.rows; ++i) {
        out << "  [";
        for (size_t j = 0; j < m.linear.cols; ++j) out << (j ? " " : "") << m.linear.at(i, j);
        out << "]\n";
    }
    out << "  translation (";
    for (size_t i = 0; i < m.translation.size(); ++i)
        out << (i ? ", " : "") << m.translation[i].str();
    out << ")\n";
    return out.str();
}

int cmd_check(const std::string& file, bool as_json) {
    Document d = load_doc(file);
    if (d.kind == DocKind::framed) {
        FramedPolytope f = framed_of(d);
        ValidationReport r = validate(f);
        if (as_json) {
            json j{{"bounded", r.bounded},       {"transversal", r.transversal},
                   {"simple", r.simple},         {"regular", r.regular},
                   {"rational_faced", r.rational_faced},
                   {"germ_canonical", r.germ_canonical},
                   {"valid", r.all()},           {"witness", r.witness}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "bounded " << r.bounded << "\ntransversal " << r.transversal
                      << "\nsimple " << r.simple << "\nregular " << r.regular
                      << "\nrational-faced " << r.rational_faced << "\ngerm-canonical "
                      << r.germ_canonical << "\nvalid " << r.all() << "\n";
            if (!r.witness.empty()) std::cout << "witness " << r.witness << "\n";
        }
        return r.all() ? 0 : 1;
    }
    VPolytope v = vpolytope_of(d);
    RationalFacedReport rf = is_rational_faced(v);
    bool full = dim_of(v) == v.ambient_dim;
    bool delzant = full && is_delzant(v);
    if (as_json) {
        json j{{"ambient_dim", v.ambient_dim},
               {"dim", dim_of(v)},
               {"vertices", v.vertices.size()},
               {"facets", irredundant_hrep(v).inequalities.size()},
               {"rational_faced", rf.rational_faced},
               {"simple", is_simple(v).simple},
               {"delzant", delzant}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "ambient-dim " << v.ambient_dim << "\ndim " << dim_of(v) << "\nvertices "
                  << v.vertices.size() << "\nfacets " << irredundant_hrep(v).inequalities.size()
                  << "\nrational-faced " << rf.rational_faced << "\nsimple "
                  << is_simple(v).simple << "\ndelzant " << delzant << "\n";
    }
    return 0;
}

int cmd_lift(const std::string& file, bool strip) {
    Document d = load_doc(file);
    LiftResult lr = lift_and_frame(hpolyhedron_of(d), strip);
    std::cout << emit_document(document_of(lr.framed, d.name));
    return 0;
}

int cmd_weights(const std::string& file, bool as_json) {
    FramedPolytope f = framed_of(load_doc(file));
    std::vector<Int> w = facet_weights(f);
    if (as_json) {
        json a = json::array();
        for (size_t i = 0; i < w.size(); ++i)
            a.push_back({{"u", json_int_vec(f.germ[i].u)},
                         {"c", f.germ[i].c.str()},
                         {"weight", w[i].str()}});
        std::cout << json(a).dump(2) << "\n";
    } else {
        for (size_t i = 0; i < w.size(); ++i) {
            std::cout << "facet";
            for (const auto& u : f.germ[i].u) std::cout << " " << u;
            std::cout << " " << f.germ[i].c.str() << " weight " << w[i] << "\n";
        }
    }
    return 0;
}

int cmd_iso(const std::string& fa, const std::string& fb, bool as_json) {
    Document da = load_doc(fa), db = load_doc(fb);
    std::optional<IntegralAffineMap> m;
    if (da.kind == DocKind::framed && db.kind == DocKind::framed) {
        m = framed_iso(framed_of(da), framed_of(db));
    } else {
        VPolytope a = canonical_embedding(vpolytope_of(da)).image;
        VPolytope b = canonical_embedding(vpolytope_of(db)).image;
        m = polytope_iso(a, b);
    }
    if (as_json) {
        json j{{"found", m.has_value()}};
        if (m) j["map"] = json_map(*m);
        std::cout << j.dump(2) << "\n";
    } else if (m) {
        std::cout << "isomorphic\n" << map_text(*m);
    } else {
        std::cout << "not-isomorphic\n";
    }
    return m ? 0 : 1;
}

const char* verdict_name(MoritaVerdict v) {
    switch (v) {
        case MoritaVerdict::equivalent: return "equivalent";
        case MoritaVerdict::inequivalent_polytopes: return "inequivalent-polytopes";
        case MoritaVerdict::inequivalent_weights: return "inequivalent-weights";
        case MoritaVerdict::undecided_irrational: return "undecided-irrational";
    }
    return "unknown";
}

int cmd_morita(const std::string& fa, const std::string& fb, const std::string& out_file,
               bool as_json) {
    FramedPolytope f1 = framed_of(load_doc(fa));
    FramedPolytope f2 = framed_of(load_doc(fb));
    MoritaDecision dec = decide_morita(f1, f2);
    std::string witness_text;
    if (dec.witness) witness_text = emit_document(document_of(dec.witness->third, "witness"));
    if (as_json) {
        json j{{"verdict", verdict_name(dec.verdict)}, {"detail", dec.detail}};
        if (dec.witness) {
            j["witness"] = witness_text;
            j["embed_1"] = json_map(dec.witness->embed_1);
            j["embed_2"] = json_map(dec.witness->embed_2);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << verdict_name(dec.verdict) << "\n" << dec.detail << "\n";
        if (dec.witness && out_file.empty()) std::cout << witness_text;
    }
    if (dec.witness && !out_file.empty()) write_file(out_file, witness_text);
    return dec.verdict == MoritaVerdict::equivalent ? 0 : 1;
}

int cmd_crossed(const std::string& fa, const std::string& fb, const std::string& out_file,
                bool as_json) {
    FramedPolytope f1 = framed_of(load_doc(fa));
    FramedPolytope f2 = framed_of(load_doc(fb));
    auto isos = polytope_iso_all(canonical_embedding(f1.polytope).image,
                                 canonical_embedding(f2.polytope).image);
    if (isos.empty())
        throw Error("bad-identification: the polytopes are not integral-affinely isomorphic");
    MoritaWitness w = crossed_product(f1, f2, isos.front());
    std::string text = emit_document(document_of(w.third, "crossed-product"));
    if (as_json) {
        json j{{"witness", text},
               {"embed_1", json_map(w.embed_1)},
               {"embed_2", json_map(w.embed_2)}};
        std::cout << j.dump(2) << "\n";
    } else if (out_file.empty()) {
        std::cout << text;
    }
    if (!out_file.empty()) write_file(out_file, text);
    return 0;
}

int cmd_local_model(const std::string& file, const std::string& face_spec, bool as_json) {
    FramedPolytope f = framed_of(load_doc(file));
    std::set<int> face;
    std::istringstream in(face_spec);
    std::string part;
    while (std::getline(in, part, ','))
        if (!part.empty()) face.insert(std::stoi(part));
    LocalModel lm = local_model(f, face);
    if (as_json) {
        json mstar = json::array();
        for (const auto& u : lm.m_star_basis) mstar.push_back(json_int_vec(u));
        json j{{"corank", lm.corank},
               {"face_dim", lm.face_dim},
               {"transversal", lm.transversal},
               {"m_star", mstar}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "corank " << lm.corank << "\nface-dim " << lm.face_dim << "\ntransversal "
                  << lm.transversal << "\n";
        for (const auto& u : lm.m_star_basis) {
            std::cout << "active";
            for (const auto& x : u) std::cout << " " << x;
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_degree(const std::string& file, bool as_json) {
    Document d = load_doc(file);
    IrrationalityReport r = irrationality_degree(vpolytope_of(d));
    if (as_json) {
        json j{{"dim", r.dim_p}, {"daff_rank", r.daff_rank}, {"degree", r.degree}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "dim " << r.dim_p << "\ndaff-rank " << r.daff_rank << "\ndegree " << r.degree
                  << "\n";
    }
    return 0;
}

int cmd_render(const std::string& file, const std::string& out_file, const std::string& proj) {
    Document d = load_doc(file);
    int ax = -1, ay = -1;
    if (!proj.empty()) {
        size_t comma = proj.find(',');
        if (comma == std::string::npos) throw Error("bad-parameter: --proj wants `i,j`");
        ax = std::stoi(proj.substr(0, comma));
        ay = std::stoi(proj.substr(comma + 1));
    }
    std::string svg = render_svg(d, ax, ay);
    if (out_file.empty())
        std::cout << svg;
    else
        write_file(out_file, svg);
    return 0;
}

int cmd_qpq(const std::string& a, long p, long q) {
    FramedPolytope f = make_qpq(Scalar::parse(a), Int(p), Int(q));
    std::cout << emit_document(document_of(f, "qpq"));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact framed momentum polytope toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "structured JSON reports");

    int rc = 0;
    std::string file_a, file_b, out_file, face_spec, proj, qpq_a = "1";
    bool strip = false;
    long p = 1, q = 0;

    auto* check = app.add_subcommand("check", "validate a document and report");
    check->add_option("file", file_a)->required();
    check->callback([&] { rc = cmd_check(file_a, as_json); });

    auto* lift = app.add_subcommand("lift", "cubic lift of an H-polytope");
    lift->add_option("file", file_a)->required();
    lift->add_flag("--strip", strip, "drop redundant rows instead of failing");
    lift->callback([&] { rc = cmd_lift(file_a, strip); });

    auto* weights = app.add_subcommand("weights", "facet weights of a framing");
    weights->add_option("file", file_a)->required();
    weights->callback([&] { rc = cmd_weights(file_a, as_json); });

    auto* iso = app.add_subcommand("iso", "integral affine isomorphism test");
    iso->add_option("a", file_a)->required();
    iso->add_option("b", file_b)->required();
    iso->callback([&] { rc = cmd_iso(file_a, file_b, as_json); });

    auto* morita = app.add_subcommand("morita", "Morita equivalence decision");
    morita->add_option("a", file_a)->required();
    morita->add_option("b", file_b)->required();
    morita->add_option("-o,--out", out_file, "write the witness document here");
    morita->callback([&] { rc = cmd_morita(file_a, file_b, out_file, as_json); });

    auto* crossed = app.add_subcommand("crossed-product", "crossed product witness");
    crossed->add_option("a", file_a)->required();
    crossed->add_option("b", file_b)->required();
    crossed->add_option("-o,--out", out_file, "write the witness document here");
    crossed->callback([&] { rc = cmd_crossed(file_a, file_b, out_file, as_json); });

    auto* local = app.add_subcommand("local-model", "local normal-form data at a face");
    local->add_option("file", file_a)->required();
    local->add_option("--face", face_spec, "comma-separated germ facet indices");
    local->callback([&] { rc = cmd_local_model(file_a, face_spec, as_json); });

    auto* degree = app.add_subcommand("degree", "irrationality degree");
    degree->add_option("file", file_a)->required();
    degree->callback([&] { rc = cmd_degree(file_a, as_json); });

    auto* render = app.add_subcommand("render", "SVG drawing of a 2-D document");
    render->add_option("file", file_a)->required();
    render->add_option("-o,--out", out_file, "output SVG path (stdout otherwise)");
    render->add_option("--proj", proj, "coordinate projection `i,j`");
    render->callback([&] { rc = cmd_render(file_a, out_file, proj); });

    auto* qpq = app.add_subcommand("qpq", "emit the Q_{p,q} framed segment");
    qpq->add_option("-a", qpq_a, "segment length (exact scalar)");
    qpq->add_option("-p", p)->required();
    qpq->add_option("-q", q)->required();
    qpq->callback([&] { rc = cmd_qpq(qpq_a, p, q); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal-error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
