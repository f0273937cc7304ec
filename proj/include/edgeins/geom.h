#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace edgeins {

using Rational = mpq_class;

// Exact plane point. mpq_class keeps values canonical after every operation.
struct Point {
    Rational x;
    Rational y;

    Point() = default;
    Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {
        x.canonicalize();
        y.canonicalize();
    }
    Point(long px, long py) : x(px), y(py) {}

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    // Lexicographic (x, then y).
    friend bool operator<(const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    }
};

std::string to_string(const Point& p);

struct Segment {
    Point a;
    Point b;
};

/// Sign of the signed area of triangle pqr.
int orient(const Point& p, const Point& q, const Point& r);

struct NoIntersection {};
struct ProperCrossing {
    Point at;
};
struct SharedEndpoint {
    Point at;
};
// Collinear overlap, or an endpoint of one segment in the relative interior
// of the other.
struct Degenerate {};

using SegmentIntersection = std::variant<NoIntersection, ProperCrossing, SharedEndpoint, Degenerate>;

SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2);

// Raw contact point of two closed segments: none, a single point, or a
// collinear overlap of positive length.
struct SegmentContact {
    enum class Kind { None, Point, Overlap } kind = Kind::None;
    Point at;
};
SegmentContact segment_contact(const Segment& s1, const Segment& s2);

// Parameter of point p (known to lie on segment s) along s, in [0, 1].
Rational segment_param(const Segment& s, const Point& p);

struct Polyline {
    std::vector<Point> points;
    bool closed = false;

    std::size_t segment_count() const {
        return closed ? points.size() : points.size() - 1;
    }
    Segment segment(std::size_t i) const {
        return {points[i], points[(i + 1) % points.size()]};
    }
};

struct Curve {
    std::string id;
    Polyline line;
};

struct IsolatedPoint {
    std::string id;
    Point point;
};

struct CurveSet {
    std::vector<Curve> curves;
    std::vector<IsolatedPoint> isolated;
};

enum class GeomErrorKind {
    InvalidPolyline,
    DegenerateContact,
    TripleIncidence,
    PairCrossingBound,
    DuplicateId,
};

const char* to_string(GeomErrorKind kind);

class GeomError : public std::runtime_error {
public:
    GeomError(GeomErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    GeomErrorKind kind() const { return kind_; }

private:
    GeomErrorKind kind_;
};

/// Throws GeomError(InvalidPolyline) when the polyline is too short, has
/// repeated consecutive points, or intersects itself.
void check_polyline(const Polyline& line, const std::string& id);

/// Winding number of the closed polygon `ring` around `p`. `p` must not lie
/// on the polygon.
int winding_number(const std::vector<Point>& ring, const Point& p);

/// Twice the signed area of the closed polygon `ring`.
Rational doubled_area(const std::vector<Point>& ring);

/// True when p lies on the closed segment s.
bool on_segment(const Segment& s, const Point& p);

}  // namespace edgeins
