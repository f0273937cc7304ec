#pragma once

#include "edgeins/geom.h"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgeins {

enum class VertexKind {
    Original,
    Crossing,
    // Degree-2 vertex placed on a closed curve that has no other vertex, so the
    // curve still forms a closed walk.
    Anchor,
};

const char* to_string(VertexKind kind);

struct Vertex {
    VertexKind kind = VertexKind::Original;
    std::string name;
    std::optional<Point> point;
};

struct HalfEdge {
    int twin = -1;
    // Counterclockwise successor among the half-edges leaving origin.
    int next_at_vertex = -1;
    int head = -1;
    int color = -1;

    // Derived by Planarization::assemble().
    int origin = -1;
    int face = -1;  // face on the right-hand side
    int edge = -1;

    // Geometry from origin to head, both included. Empty for combinatorial maps.
    std::vector<Point> path;
};

struct Color {
    std::string name;
    bool closed = false;
    std::array<int, 2> endpoints{-1, -1};
};

struct Face {
    int id = -1;
    // One representative (the smallest id) per boundary cycle, ascending.
    std::vector<int> cycles;
    std::vector<int> isolated;
    bool outer = false;
};

enum class DrawingErrorKind {
    MalformedMap,
    UnknownVertex,
    NotConnected,
    ParseError,
};

const char* to_string(DrawingErrorKind kind);

class DrawingError : public std::runtime_error {
public:
    DrawingError(DrawingErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    DrawingErrorKind kind() const { return kind_; }

private:
    DrawingErrorKind kind_;
};

/// Half-edge combinatorial map of a drawing. Faces lie to the right of their
/// half-edges, so the face successor of h is next_at_vertex(twin(h)).
///
/// Construction goes through `assemble`, which takes the raw map plus a
/// grouping of boundary cycles into faces and computes every derived field
/// with deterministic numbering (faces by smallest incident half-edge, edges
/// by smaller half-edge).
struct Planarization {
    std::vector<Vertex> vertices;
    std::vector<HalfEdge> half_edges;
    std::vector<Color> colors;
    std::vector<Face> faces;
    // Containing face of every vertex without incident half-edges, else -1.
    std::vector<int> vertex_face;
    int outer_face = -1;
    // Half-edge pair of each edge, smaller id first.
    std::vector<std::array<int, 2>> edges;

    int face_next(int h) const { return half_edges[h].next_at_vertex == -1 ? -1 : half_edges[half_edges[h].twin].next_at_vertex; }
    std::size_t edge_count() const { return edges.size(); }
    bool has_geometry() const;

    /// Vertex id by name, or -1.
    int find_vertex(const std::string& name) const;
    /// Color id by name, or -1.
    int find_color(const std::string& name) const;

    /// Half-edges leaving v in counterclockwise order starting at the smallest id.
    std::vector<int> outgoing(int v) const;
    /// Faces incident to v (its containing face if v has no half-edges), ascending.
    std::vector<int> faces_at(int v) const;
    /// Crossing vertices on the walk of color c.
    int crossing_count(int c) const;
    int total_crossings() const;
    int count_kind(VertexKind kind) const;

    // Raw input to `assemble`.
    struct FaceGroup {
        std::vector<int> cycle_members;  // any half-edge of each cycle in the face
        std::vector<int> isolated;
        bool outer = false;
    };

    /// Checks the twin/rotation laws and derives origin, edges, cycles and
    /// faces. Throws DrawingError(MalformedMap).
    static Planarization assemble(std::vector<Vertex> vertices, std::vector<HalfEdge> half_edges,
                                  std::vector<Color> colors, const std::vector<FaceGroup>& groups);

    /// Half-edges of the boundary cycle through h, in traversal order.
    std::vector<int> cycle(int h) const;
};

/// Checks the permutation laws only; throws DrawingError(MalformedMap).
void check_map_laws(const std::vector<Vertex>& vertices, const std::vector<HalfEdge>& half_edges);

struct Violation {
    enum class Kind {
        PairCrossingBound,     // two colors share more than one point
        AdjacentCrossing,      // colors with a common endpoint also cross
        SelfCrossing,          // a color passes a crossing twice
        NonAlternating,        // colors at a crossing do not alternate
        CrossingDegree,        // crossing vertex not of degree 4
        BrokenWalk,            // color does not form one walk between its endpoints
    } kind;
    int color_a = -1;
    int color_b = -1;
    int vertex = -1;
    std::string detail;
};

const char* to_string(Violation::Kind kind);

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Half-edges of open color c from endpoint 0 to endpoint 1, passing straight
/// through crossings. Requires a valid walk.
std::vector<int> color_walk(const Planarization& p, int c);

/// Colors crossed by open color c, in order from endpoint 0.
std::vector<int> crossing_sequence(const Planarization& p, int c);

/// Lists every violated simple-drawing axiom of p.
ValidationReport validate_simple(const Planarization& p);

struct DualArc {
    int id = -1;  // underlying edge id
    std::array<int, 2> faces{-1, -1};
    int color = -1;
};

struct ColoredDual {
    int node_count = 0;
    // Ascending by id; arcs of colors incident to u or v are absent.
    std::vector<DualArc> arcs;
    std::vector<int> u_faces;
    std::vector<int> v_faces;
    int color_count = 0;
    // Arc ids incident to each face, ascending by (color, arc id).
    std::vector<std::vector<int>> incident;

    const DualArc* arc(int id) const;
};

/// Dual of p with arcs of edges incident to u or v removed.
/// Throws DrawingError(UnknownVertex).
ColoredDual colored_dual(const Planarization& p, int u, int v);

/// Same, with additional colors that may not be crossed.
ColoredDual colored_dual(const Planarization& p, int u, int v, const std::vector<int>& blocked_colors);

struct WitnessStep {
    int arc = -1;
    int color = -1;

    friend bool operator==(const WitnessStep&, const WitnessStep&) = default;
};

struct Witness {
    int start_face = -1;
    std::vector<WitnessStep> steps;
    int end_face = -1;

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Faces visited by w, starting face first. Empty if some arc is not
/// incident to the current face.
std::vector<int> witness_faces(const ColoredDual& d, const Witness& w);

bool verify_witness(const ColoredDual& d, const Witness& w);

/// A point strictly inside face f. Requires geometry.
Point interior_point(const Planarization& p, int f);

/// Face containing point q (q must not lie on the drawing). Requires geometry.
int locate(const Planarization& p, const Point& q);

}  // namespace edgeins
