#include "fpt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fpt/morita.hpp"

namespace fpt {

namespace {

std::string kind_name(DocKind k) {
    switch (k) {
        case DocKind::polytope_h: return "polytope-h";
        case DocKind::polytope_v: return "polytope-v";
        case DocKind::framed: return "framed";
    }
    throw Error("internal-inconsistency: unknown document kind");
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

[[noreturn]] void bad_line(size_t no, const std::string& why) {
    throw Error("syntax-error: line " + std::to_string(no) + ": " + why);
}

long doc_radicand_of(const std::vector<const Scalar*>& xs) {
    long m = 0;
    for (const Scalar* x : xs)
        if (x->radicand() != 0) m = x->radicand();
    return m;
}

bool germ_row_less(const GermFacet& a, const GermFacet& b) {
    if (a.u != b.u) return a.u < b.u;
    return a.c < b.c;
}

bool halfspace_less(const Halfspace& a, const Halfspace& b) {
    if (a.u != b.u) return lex_less(a.u, b.u);
    return a.c < b.c;
}

void collect_scalars(const Document& d, std::vector<const Scalar*>& out) {
    auto take = [&](const ScalarVec& v) {
        for (const auto& x : v) out.push_back(&x);
    };
    for (const auto& h : d.hpoly.inequalities) take(h.u), out.push_back(&h.c);
    for (const auto& h : d.hpoly.equalities) take(h.u), out.push_back(&h.c);
    for (const auto& v : d.vpoly.vertices) take(v);
    take(d.slice.base);
    for (const auto& v : d.slice.directions) take(v);
    for (const auto& g : d.germ) out.push_back(&g.c);
}

}  // namespace

Document parse_document(const std::string& text) {
    Document doc;
    std::istringstream in(text);
    std::string line;
    size_t no = 0;
    bool have_header = false;
    bool sqrt_declared = false;
    while (std::getline(in, line)) {
        ++no;
        std::vector<std::string> tok = tokens_of(line);
        if (tok.empty()) continue;
        if (!have_header) {
            if (tok[0] != "kind" || tok.size() < 4 || tok[2] != "dim")
                bad_line(no, "expected `kind <k> dim <N> [sqrt <m>]`");
            if (tok[1] == "polytope-h")
                doc.kind = DocKind::polytope_h;
            else if (tok[1] == "polytope-v")
                doc.kind = DocKind::polytope_v;
            else if (tok[1] == "framed")
                doc.kind = DocKind::framed;
            else
                bad_line(no, "unknown kind `" + tok[1] + "`");
            try {
                doc.dim = std::stoi(tok[3]);
            } catch (const std::exception&) {
                bad_line(no, "bad dimension `" + tok[3] + "`");
            }
            if (doc.dim < 0) bad_line(no, "negative dimension");
            if (tok.size() == 6 && tok[4] == "sqrt") {
                try {
                    doc.radicand = std::stol(tok[5]);
                } catch (const std::exception&) {
                    bad_line(no, "bad radicand `" + tok[5] + "`");
                }
                if (doc.radicand < 2 || !is_squarefree(doc.radicand))
                    bad_line(no, "radicand must be squarefree and >= 2");
                sqrt_declared = true;
            } else if (tok.size() != 4) {
                bad_line(no, "trailing tokens after the header");
            }
            doc.hpoly.ambient_dim = doc.dim;
            doc.vpoly.ambient_dim = doc.dim;
            have_header = true;
            continue;
        }
        if (tok[0] == "name") {
            size_t pos = line.find("name");
            doc.name = line.substr(pos + 4);
            size_t b = doc.name.find_first_not_of(" \t");
            doc.name = (b == std::string::npos) ? "" : doc.name.substr(b);
            continue;
        }
        auto parse_scalars = [&](size_t count, size_t from) {
            if (tok.size() != from + count)
                bad_line(no, "expected " + std::to_string(count) + " scalar(s)");
            ScalarVec out;
            for (size_t i = from; i < tok.size(); ++i) {
                Scalar s;
                try {
                    s = Scalar::parse(tok[i]);
                } catch (const Error& e) {
                    bad_line(no, std::string("bad scalar `") + tok[i] + "`: " + e.what());
                }
                if (s.radicand() != 0) {
                    if (!sqrt_declared) bad_line(no, "radical scalar without a sqrt header");
                    if (s.radicand() != doc.radicand)
                        throw Error("radicand-mismatch: line " + std::to_string(no) +
                                    " uses sqrt(" + std::to_string(s.radicand()) + ")");
                }
                out.push_back(std::move(s));
            }
            return out;
        };
        size_t n = static_cast<size_t>(doc.dim);
        if (doc.kind == DocKind::polytope_h && (tok[0] == "ineq" || tok[0] == "eq")) {
            ScalarVec row = parse_scalars(n + 1, 1);
            Halfspace h{ScalarVec(row.begin(), row.begin() + n), row[n]};
            if (tok[0] == "ineq")
                doc.hpoly.inequalities.push_back(std::move(h));
            else
                doc.hpoly.equalities.push_back(std::move(h));
        } else if (doc.kind == DocKind::polytope_v && tok[0] == "vertex") {
            doc.vpoly.vertices.push_back(parse_scalars(n, 1));
        } else if (doc.kind == DocKind::framed && tok[0] == "base") {
            if (!doc.slice.base.empty()) bad_line(no, "duplicate base row");
            doc.slice.base = parse_scalars(n, 1);
        } else if (doc.kind == DocKind::framed && tok[0] == "dir") {
            doc.slice.directions.push_back(parse_scalars(n, 1));
        } else if (doc.kind == DocKind::framed && tok[0] == "facet") {
            ScalarVec row = parse_scalars(n + 1, 1);
            IntVec u;
            for (size_t i = 0; i < n; ++i) {
                if (!row[i].is_integer()) bad_line(no, "facet covectors must be integer");
                u.push_back(row[i].as_integer());
            }
            doc.germ.push_back({std::move(u), row[n]});
        } else {
            bad_line(no, "unexpected row `" + tok[0] + "` for kind " + kind_name(doc.kind));
        }
    }
    if (!have_header) throw Error("syntax-error: line 1: missing header");
    if (doc.kind == DocKind::framed && doc.slice.base.empty() && doc.dim > 0)
        throw Error("shape-mismatch: framed document without a base row");
    return doc;
}

std::string emit_document(const Document& doc_in) {
    Document doc = doc_in;
    std::vector<const Scalar*> xs;
    collect_scalars(doc, xs);
    long m = doc_radicand_of(xs);
    std::ostringstream out;
    out << "kind " << kind_name(doc.kind) << " dim " << doc.dim;
    if (m != 0) out << " sqrt " << m;
    out << "\n";
    if (!doc.name.empty()) out << "name " << doc.name << "\n";
    auto put_vec = [&](const ScalarVec& v) {
        for (const auto& x : v) out << " " << x.str();
    };
    switch (doc.kind) {
        case DocKind::polytope_h: {
            std::sort(doc.hpoly.equalities.begin(), doc.hpoly.equalities.end(), halfspace_less);
            std::sort(doc.hpoly.inequalities.begin(), doc.hpoly.inequalities.end(), halfspace_less);
            for (const auto& h : doc.hpoly.equalities) {
                out << "eq";
                put_vec(h.u);
                out << " " << h.c.str() << "\n";
            }
            for (const auto& h : doc.hpoly.inequalities) {
                out << "ineq";
                put_vec(h.u);
                out << " " << h.c.str() << "\n";
            }
            break;
        }
        case DocKind::polytope_v: {
            std::sort(doc.vpoly.vertices.begin(), doc.vpoly.vertices.end(), lex_less);
            for (const auto& v : doc.vpoly.vertices) {
                out << "vertex";
                put_vec(v);
                out << "\n";
            }
            break;
        }
        case DocKind::framed: {
            out << "base";
            put_vec(doc.slice.base);
            out << "\n";
            for (const auto& d : doc.slice.directions) {
                out << "dir";
                put_vec(d);
                out << "\n";
            }
            std::sort(doc.germ.begin(), doc.germ.end(), germ_row_less);
            for (const auto& g : doc.germ) {
                out << "facet";
                for (const auto& u : g.u) out << " " << u.str();
                out << " " << g.c.str() << "\n";
            }
            break;
        }
    }
    return out.str();
}

Document document_of(const FramedPolytope& f, const std::string& name) {
    Document d;
    d.kind = DocKind::framed;
    d.dim = f.ambient_dim;
    d.name = name;
    d.slice = f.slice;
    d.germ = f.germ;
    std::vector<const Scalar*> xs;
    collect_scalars(d, xs);
    d.radicand = doc_radicand_of(xs);
    return d;
}

Document document_of(const HPolyhedron& h, const std::string& name) {
    Document d;
    d.kind = DocKind::polytope_h;
    d.dim = h.ambient_dim;
    d.name = name;
    d.hpoly = h;
    std::vector<const Scalar*> xs;
    collect_scalars(d, xs);
    d.radicand = doc_radicand_of(xs);
    return d;
}

Document document_of(const VPolytope& v, const std::string& name) {
    Document d;
    d.kind = DocKind::polytope_v;
    d.dim = v.ambient_dim;
    d.name = name;
    d.vpoly = v;
    std::vector<const Scalar*> xs;
    collect_scalars(d, xs);
    d.radicand = doc_radicand_of(xs);
    return d;
}

FramedPolytope framed_of(const Document& d) {
    if (d.kind != DocKind::framed) throw Error("shape-mismatch: framed document required");
    return canonicalize_germ(make_framed(d.dim, d.slice, d.germ));
}

VPolytope vpolytope_of(const Document& d) {
    switch (d.kind) {
        case DocKind::polytope_v: return canonical_vpolytope(d.vpoly);
        case DocKind::polytope_h: {
            auto v = enumerate_vertices(d.hpoly);
            if (!v) throw Error("empty-polytope: no vertices");
            return *v;
        }
        case DocKind::framed: return framed_of(d).polytope;
    }
    throw Error("internal-inconsistency: unknown document kind");
}

HPolyhedron hpolyhedron_of(const Document& d) {
    if (d.kind == DocKind::polytope_h) return d.hpoly;
    return irredundant_hrep(vpolytope_of(d));
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct Frame2D {
    double minx = 0, miny = 0, maxx = 1, maxy = 1;
    double sx(double x) const { return (x - minx) * 100.0 + 20.0; }
    double sy(double y) const { return (maxy - y) * 100.0 + 20.0; }
    double width() const { return (maxx - minx) * 100.0 + 40.0; }
    double height() const { return (maxy - miny) * 100.0 + 40.0; }
};

}  // namespace

std::string render_svg(const Document& d, int ax, int ay) {
    std::optional<FramedPolytope> framed;
    VPolytope poly;
    if (d.kind == DocKind::framed) {
        framed = framed_of(d);
        if (framed->ambient_dim != 2)
            throw Error("undrawable-dimension: framed rendering needs ambient dimension 2");
        ax = 0;
        ay = 1;
        poly = framed->polytope;
    } else {
        poly = vpolytope_of(d);
        if (ax < 0 && ay < 0) {
            if (poly.ambient_dim > 2)
                throw Error("undrawable-dimension: pick a 2-D coordinate projection");
            ax = 0;
            ay = poly.ambient_dim > 1 ? 1 : -1;  // 1-D inputs draw on the x-axis
        }
        if (ax < 0 || ax >= poly.ambient_dim || ay >= poly.ambient_dim || ax == ay)
            throw Error("undrawable-dimension: pick two distinct coordinates to project");
    }
    auto px = [&](const ScalarVec& v) { return v[ax].to_double(); };
    auto py = [&](const ScalarVec& v) { return ay < 0 ? 0.0 : v[ay].to_double(); };

    Frame2D fr;
    bool first = true;
    for (const auto& v : poly.vertices) {
        double x = px(v), y = py(v);
        if (first || x < fr.minx) fr.minx = x;
        if (first || x > fr.maxx) fr.maxx = x;
        if (first || y < fr.miny) fr.miny = y;
        if (first || y > fr.maxy) fr.maxy = y;
        first = false;
    }
    fr.minx -= 1.0, fr.miny -= 1.0, fr.maxx += 1.0, fr.maxy += 1.0;
    double span = 2.0 * ((fr.maxx - fr.minx) + (fr.maxy - fr.miny));

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(fr.width())
        << "\" height=\"" << fmt(fr.height()) << "\">\n";

    // P: a filled polygon in boundary order, or a segment, or a point
    std::vector<std::pair<double, double>> pts;
    for (const auto& v : poly.vertices) pts.emplace_back(px(v), py(v));
    if (pts.size() >= 3) {
        // order around the centroid; ties broken by the canonical vertex order
        double cx = 0, cy = 0;
        for (auto& p : pts) cx += p.first, cy += p.second;
        cx /= pts.size(), cy /= pts.size();
        std::stable_sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
            return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
        });
        out << "<polygon points=\"";
        for (size_t i = 0; i < pts.size(); ++i)
            out << (i ? " " : "") << fmt(fr.sx(pts[i].first)) << "," << fmt(fr.sy(pts[i].second));
        out << "\" fill=\"#b3cde0\" stroke=\"#03396c\"/>\n";
    } else if (pts.size() == 2) {
        out << "<line x1=\"" << fmt(fr.sx(pts[0].first)) << "\" y1=\"" << fmt(fr.sy(pts[0].second))
            << "\" x2=\"" << fmt(fr.sx(pts[1].first)) << "\" y2=\"" << fmt(fr.sy(pts[1].second))
            << "\" stroke=\"#03396c\" stroke-width=\"4\"/>\n";
    } else if (pts.size() == 1) {
        out << "<circle cx=\"" << fmt(fr.sx(pts[0].first)) << "\" cy=\"" << fmt(fr.sy(pts[0].second))
            << "\" r=\"4\" fill=\"#03396c\"/>\n";
    }

    if (framed) {
        // slice line
        if (!framed->slice.directions.empty()) {
            const ScalarVec& b = framed->slice.base;
            const ScalarVec& dir = framed->slice.directions[0];
            double bx = px(b), by = py(b), dx = px(dir), dy = py(dir);
            double norm = std::max(1e-9, std::sqrt(dx * dx + dy * dy));
            dx /= norm, dy /= norm;
            out << "<line x1=\"" << fmt(fr.sx(bx - span * dx)) << "\" y1=\""
                << fmt(fr.sy(by - span * dy)) << "\" x2=\"" << fmt(fr.sx(bx + span * dx))
                << "\" y2=\"" << fmt(fr.sy(by + span * dy))
                << "\" stroke=\"#005b96\" stroke-width=\"1.5\"/>\n";
        }
        // germ facet hyperplanes, dashed, with weight labels when defined
        std::vector<Int> weights;
        if (slice_is_rational(*framed)) weights = facet_weights(*framed);
        for (size_t i = 0; i < framed->germ.size(); ++i) {
            const GermFacet& g = framed->germ[i];
            ScalarMat urow{to_scalar_vec(g.u)};
            auto pt = solve_linear(urow, {g.c});
            if (!pt) continue;
            double bx = pt->at(0).to_double(), by = pt->at(1).to_double();
            double dx = -static_cast<double>(g.u[1].convert_to<double>());
            double dy = static_cast<double>(g.u[0].convert_to<double>());
            double norm = std::max(1e-9, std::sqrt(dx * dx + dy * dy));
            dx /= norm, dy /= norm;
            out << "<line x1=\"" << fmt(fr.sx(bx - span * dx)) << "\" y1=\""
                << fmt(fr.sy(by - span * dy)) << "\" x2=\"" << fmt(fr.sx(bx + span * dx))
                << "\" y2=\"" << fmt(fr.sy(by + span * dy))
                << "\" stroke=\"#6497b1\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
            if (!weights.empty()) {
                // label near the facet's contact with P
                double lx = 0, ly = 0;
                int cnt = 0;
                for (const auto& v : poly.vertices) {
                    Scalar val(0);
                    for (size_t c = 0; c < 2; ++c) val += Scalar(g.u[c]) * v[c];
                    if ((val - g.c).is_zero()) {
                        lx += px(v);
                        ly += py(v);
                        ++cnt;
                    }
                }
                if (cnt > 0) {
                    lx /= cnt, ly /= cnt;
                    out << "<text x=\"" << fmt(fr.sx(lx) + 6) << "\" y=\"" << fmt(fr.sy(ly) - 6)
                        << "\" font-size=\"12\" fill=\"#011f4b\">" << weights[i].str()
                        << "</text>\n";
                }
            }
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace fpt
