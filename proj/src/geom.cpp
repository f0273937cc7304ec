#include "edgeins/geom.h"

#include <algorithm>

namespace edgeins {

std::string to_string(const Point& p) {
    return "(" + p.x.get_str() + ", " + p.y.get_str() + ")";
}

const char* to_string(GeomErrorKind kind) {
    switch (kind) {
    case GeomErrorKind::InvalidPolyline: return "InvalidPolyline";
    case GeomErrorKind::DegenerateContact: return "DegenerateContact";
    case GeomErrorKind::TripleIncidence: return "TripleIncidence";
    case GeomErrorKind::PairCrossingBound: return "PairCrossingBound";
    case GeomErrorKind::DuplicateId: return "DuplicateId";
    }
    return "?";
}

int orient(const Point& p, const Point& q, const Point& r) {
    Rational det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return sgn(det);
}

bool on_segment(const Segment& s, const Point& p) {
    if (orient(s.a, s.b, p) != 0) return false;
    return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
           std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

Rational segment_param(const Segment& s, const Point& p) {
    if (s.a.x != s.b.x) return Rational((p.x - s.a.x) / (s.b.x - s.a.x));
    return Rational((p.y - s.a.y) / (s.b.y - s.a.y));
}

namespace {

bool boxes_overlap(const Segment& s1, const Segment& s2) {
    auto lo = [](const Rational& a, const Rational& b) -> const Rational& { return a < b ? a : b; };
    auto hi = [](const Rational& a, const Rational& b) -> const Rational& { return a < b ? b : a; };
    return !(hi(s1.a.x, s1.b.x) < lo(s2.a.x, s2.b.x) || hi(s2.a.x, s2.b.x) < lo(s1.a.x, s1.b.x) ||
             hi(s1.a.y, s1.b.y) < lo(s2.a.y, s2.b.y) || hi(s2.a.y, s2.b.y) < lo(s1.a.y, s1.b.y));
}

}  // namespace

SegmentContact segment_contact(const Segment& s1, const Segment& s2) {
    SegmentContact out;
    if (!boxes_overlap(s1, s2)) return out;
    int o1 = orient(s1.a, s1.b, s2.a);
    int o2 = orient(s1.a, s1.b, s2.b);
    int o3 = orient(s2.a, s2.b, s1.a);
    int o4 = orient(s2.a, s2.b, s1.b);

    if (o1 == 0 && o2 == 0) {
        // Collinear: project onto the parameter of s1.
        Rational t0 = segment_param(s1, s2.a);
        Rational t1 = segment_param(s1, s2.b);
        if (t1 < t0) std::swap(t0, t1);
        Rational lo = std::max(t0, Rational(0));
        Rational hi = std::min(t1, Rational(1));
        if (hi < lo) return out;
        if (lo == hi) {
            out.kind = SegmentContact::Kind::Point;
            out.at = Point(Rational(s1.a.x + lo * (s1.b.x - s1.a.x)), Rational(s1.a.y + lo * (s1.b.y - s1.a.y)));
            return out;
        }
        out.kind = SegmentContact::Kind::Overlap;
        return out;
    }
    if (o1 * o2 > 0 || o3 * o4 > 0) return out;

    out.kind = SegmentContact::Kind::Point;
    if (o1 == 0) {
        out.at = s2.a;
    } else if (o2 == 0) {
        out.at = s2.b;
    } else if (o3 == 0) {
        out.at = s1.a;
    } else if (o4 == 0) {
        out.at = s1.b;
    } else {
        // Proper crossing of the supporting lines inside both segments.
        Rational dx1 = s1.b.x - s1.a.x, dy1 = s1.b.y - s1.a.y;
        Rational dx2 = s2.b.x - s2.a.x, dy2 = s2.b.y - s2.a.y;
        Rational denom = dx1 * dy2 - dy1 * dx2;
        Rational t = ((s2.a.x - s1.a.x) * dy2 - (s2.a.y - s1.a.y) * dx2) / denom;
        out.at = Point(Rational(s1.a.x + t * dx1), Rational(s1.a.y + t * dy1));
    }
    return out;
}

SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2) {
    SegmentContact c = segment_contact(s1, s2);
    switch (c.kind) {
    case SegmentContact::Kind::None: return NoIntersection{};
    case SegmentContact::Kind::Overlap: return Degenerate{};
    case SegmentContact::Kind::Point: break;
    }
    bool end1 = c.at == s1.a || c.at == s1.b;
    bool end2 = c.at == s2.a || c.at == s2.b;
    if (end1 && end2) return SharedEndpoint{c.at};
    if (end1 || end2) return Degenerate{};
    return ProperCrossing{c.at};
}

void check_polyline(const Polyline& line, const std::string& id) {
    std::size_t n = line.points.size();
    if (n < (line.closed ? 3u : 2u)) {
        throw GeomError(GeomErrorKind::InvalidPolyline, "curve '" + id + "' has too few points");
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (line.points[i] == line.points[i + 1]) {
            throw GeomError(GeomErrorKind::InvalidPolyline, "curve '" + id + "' repeats a point");
        }
    }
    if (line.closed && line.points.front() == line.points.back()) {
        throw GeomError(GeomErrorKind::InvalidPolyline,
                        "closed curve '" + id + "' must not repeat its first point");
    }
    std::size_t m = line.segment_count();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            Segment a = line.segment(i), b = line.segment(j);
            SegmentContact c = segment_contact(a, b);
            if (c.kind == SegmentContact::Kind::None) continue;
            bool consecutive = j == i + 1 || (line.closed && i == 0 && j == m - 1);
            if (c.kind == SegmentContact::Kind::Point && consecutive) {
                // Consecutive segments may only share their common vertex.
                const Point& shared = (j == i + 1) ? a.b : a.a;
                if (c.at == shared) continue;
            }
            throw GeomError(GeomErrorKind::InvalidPolyline, "curve '" + id + "' intersects itself at " +
                                                                (c.kind == SegmentContact::Kind::Point
                                                                     ? to_string(c.at)
                                                                     : std::string("an overlap")));
        }
    }
}

Rational doubled_area(const std::vector<Point>& ring) {
    Rational sum = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % ring.size()];
        sum += a.x * b.y - a.y * b.x;
    }
    return sum;
}

int winding_number(const std::vector<Point>& ring, const Point& p) {
    int wn = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % ring.size()];
        if (a.y <= p.y) {
            if (b.y > p.y && orient(a, b, p) > 0) ++wn;
        } else {
            if (b.y <= p.y && orient(a, b, p) < 0) --wn;
        }
    }
    return wn;
}

}  // namespace edgeins
