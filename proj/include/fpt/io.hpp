#pragma once

#include <string>

#include "fpt/framing.hpp"

namespace fpt {

enum class DocKind { polytope_h, polytope_v, framed };

/// One file: a header line `kind <k> dim <N> [sqrt <m>]`, an optional
/// `name <text>` line, then one row per item. `#` starts a comment.
struct Document {
    DocKind kind = DocKind::polytope_v;
    int dim = 0;
    long radicand = 0;  // 0 when purely rational
    std::string name;
    HPolyhedron hpoly;               // polytope-h payload
    VPolytope vpoly;                 // polytope-v payload
    Slice slice;                     // framed payload ...
    std::vector<GermFacet> germ;
};

/// Throws "syntax-error: line N: ..." / "radicand-mismatch" / "shape-mismatch".
Document parse_document(const std::string& text);

/// Deterministic canonical emission; parse ∘ emit is the identity on
/// canonical documents.
std::string emit_document(const Document& doc);

Document document_of(const FramedPolytope& f, const std::string& name = "");
Document document_of(const HPolyhedron& h, const std::string& name = "");
Document document_of(const VPolytope& v, const std::string& name = "");

FramedPolytope framed_of(const Document& d);
VPolytope vpolytope_of(const Document& d);
HPolyhedron hpolyhedron_of(const Document& d);

/// Deterministic SVG of a 2-D document: P filled, the slice as a solid line,
/// germ facet hyperplanes dashed, facet weights as labels. Inputs with
/// ambient dimension above two need an explicit coordinate projection.
std::string render_svg(const Document& d, int ax = -1, int ay = -1);

}  // namespace fpt
