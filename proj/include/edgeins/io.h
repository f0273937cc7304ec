#pragma once

#include "edgeins/cnf.h"
#include "edgeins/drawing.h"
#include "edgeins/geom.h"
#include "edgeins/insertion.h"
#include "edgeins/pseudocircles.h"
#include "edgeins/reduction.h"

#include "json.hpp"

#include <optional>
#include <string>

namespace edgeins {

using Json = nlohmann::ordered_json;

// Coordinates are [xn, xd, yn, yd], or [x, y] for integers. Each number may
// also be a decimal string when it does not fit in 64 bits. Writers use the
// short form whenever both coordinates are integers.
Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

Json curves_to_json(const CurveSet& cs);
/// Throws ParseError.
CurveSet curves_from_json(const Json& j);

/// Combinatorial form; the outer face hint is a half-edge on the outer face.
Json planarization_to_json(const Planarization& p);
/// Rebuilds a connected map from its combinatorial form; every boundary cycle
/// is one face. Throws ParseError, DrawingError(MalformedMap) or
/// DrawingError(NotConnected).
Planarization planarization_from_json(const Json& j);

struct LoadedDrawing {
    Planarization map;
    // Present for geometric input.
    std::optional<CurveSet> curves;
};

/// Accepts either format: "curves" selects geometric input, "half_edges"
/// combinatorial input. Throws ParseError, GeomError or DrawingError.
LoadedDrawing drawing_from_json(const Json& j);

Json report_to_json(const Planarization& p, const ValidationReport& r);
Json decision_to_json(const InsertionDecision& d);

/// sigma runs from u_point through `points` (the bends) to v_point.
Json arrangement_to_json(const Arrangement& a);
Arrangement arrangement_from_json(const Json& j);

/// `c` is empty for a No answer.
Json certificate_to_json(const std::optional<ExtensionCertificate>& c);
std::optional<ExtensionCertificate> certificate_from_json(const Json& j);

/// Reduction metadata written next to the drawing.
Json sidecar_to_json(const ReductionInstance& inst);

/// Throws ParseError with the position of a syntax error.
Json parse_json(const std::string& text);
/// Two-space indentation and a trailing newline.
std::string dump_json(const Json& j);

/// Faces as nodes, one edge per dual arc labelled with its color.
std::string dual_to_dot(const Planarization& p, const ColoredDual& d);
/// Faces as nodes, one edge per planarization edge.
std::string planarization_to_dot(const Planarization& p);
/// Polylines scaled into a 800x800 viewport.
std::string curves_to_svg(const CurveSet& cs);

}  // namespace edgeins
