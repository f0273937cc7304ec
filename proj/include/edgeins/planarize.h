#pragma once

#include "edgeins/drawing.h"
#include "edgeins/geom.h"

namespace edgeins {

struct PlanarizeOptions {
    // Enforce the simple-drawing bound: two open curves share at most one
    // point (a proper crossing or a common endpoint).
    bool simple_drawing = false;
};

/// Overlay of the curves as a half-edge map. Curve endpoints become Original
/// vertices (coincident endpoints are merged), proper crossings become
/// Crossing vertices, and bend points stay in the half-edge geometry only.
/// Throws GeomError on degenerate input.
Planarization build_planarization(const CurveSet& cs, const PlanarizeOptions& options = {});

/// Name given to endpoint `end` (0 or 1) of curve `curve_id`.
std::string endpoint_name(const std::string& curve_id, int end);

}  // namespace edgeins
