#include "edgeins/planarize.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace edgeins {

std::string endpoint_name(const std::string& curve_id, int end) {
    return curve_id + ":" + std::to_string(end);
}

namespace {

// Position along a curve: segment index plus parameter inside the segment.
// Bend vertex k sits at position k.
Rational position_of(const Polyline& line, std::size_t seg, const Point& p) {
    Rational t = segment_param(line.segment(seg), p);
    return Rational(seg) + t;
}

// Half-plane ordering of direction vectors, counterclockwise from +x.
bool upper(const Rational& x, const Rational& y) { return y > 0 || (y == 0 && x > 0); }

bool angle_less(const Point& a, const Point& b) {
    bool ua = upper(a.x, a.y), ub = upper(b.x, b.y);
    if (ua != ub) return ua;
    return orient(Point(0, 0), a, b) > 0;
}

bool same_direction(const Point& a, const Point& b) {
    return orient(Point(0, 0), a, b) == 0 && sgn(a.x) == sgn(b.x) && sgn(a.y) == sgn(b.y);
}

Point sub(const Point& a, const Point& b) { return Point(Rational(a.x - b.x), Rational(a.y - b.y)); }

struct CurveLocal {
    // Neighbour points of p on the curve (before, after).
    Point before;
    Point after;
    bool endpoint = false;
};

// Local picture of curve `line` at point p lying on segment `seg`.
CurveLocal local_at(const Polyline& line, std::size_t seg, const Point& p) {
    CurveLocal out;
    std::size_t n = line.points.size();
    Segment s = line.segment(seg);
    if (p == s.a || p == s.b) {
        std::size_t k = (p == s.a) ? seg : (seg + 1) % n;
        if (!line.closed && (k == 0 || k == n - 1)) {
            out.endpoint = true;
            return out;
        }
        out.before = line.points[(k + n - 1) % n];
        out.after = line.points[(k + 1) % n];
    } else {
        out.before = s.a;
        out.after = s.b;
    }
    return out;
}

struct Contact {
    int curve_a;
    int curve_b;
    Point at;
    std::size_t seg_a;
    std::size_t seg_b;
};

struct Incidence {
    Rational pos;
    int vertex;
};

}  // namespace

Planarization build_planarization(const CurveSet& cs, const PlanarizeOptions& options) {
    const std::size_t curve_count = cs.curves.size();
    {
        std::set<std::string> ids;
        for (const Curve& c : cs.curves) {
            if (!ids.insert(c.id).second) throw GeomError(GeomErrorKind::DuplicateId, "curve id '" + c.id + "'");
            check_polyline(c.line, c.id);
        }
        for (const IsolatedPoint& ip : cs.isolated) {
            if (!ids.insert(ip.id).second) throw GeomError(GeomErrorKind::DuplicateId, "point id '" + ip.id + "'");
        }
    }

    // Pairwise contacts between different curves, deduplicated by point.
    std::map<std::tuple<int, int, Point>, Contact> contacts;
    for (std::size_t a = 0; a < curve_count; ++a) {
        const Polyline& la = cs.curves[a].line;
        for (std::size_t b = a + 1; b < curve_count; ++b) {
            const Polyline& lb = cs.curves[b].line;
            for (std::size_t i = 0; i < la.segment_count(); ++i) {
                Segment sa = la.segment(i);
                for (std::size_t j = 0; j < lb.segment_count(); ++j) {
                    SegmentContact c = segment_contact(sa, lb.segment(j));
                    if (c.kind == SegmentContact::Kind::None) continue;
                    if (c.kind == SegmentContact::Kind::Overlap) {
                        throw GeomError(GeomErrorKind::DegenerateContact,
                                        "curves '" + cs.curves[a].id + "' and '" + cs.curves[b].id + "' overlap");
                    }
                    auto key = std::make_tuple(int(a), int(b), c.at);
                    contacts.try_emplace(key, Contact{int(a), int(b), c.at, i, j});
                }
            }
        }
    }

    struct CrossingRec {
        int a, b;
        Point at;
        Rational pos_a, pos_b;
    };
    std::vector<CrossingRec> crossings;
    std::vector<std::pair<int, int>> shared_endpoints;  // curve pairs
    std::map<Point, std::set<int>> curves_through;       // interior passages per point

    for (const auto& [key, c] : contacts) {
        const Polyline& la = cs.curves[c.curve_a].line;
        const Polyline& lb = cs.curves[c.curve_b].line;
        CurveLocal pa = local_at(la, c.seg_a, c.at);
        CurveLocal pb = local_at(lb, c.seg_b, c.at);
        const std::string names = "'" + cs.curves[c.curve_a].id + "' and '" + cs.curves[c.curve_b].id + "'";
        if (pa.endpoint && pb.endpoint) {
            shared_endpoints.emplace_back(c.curve_a, c.curve_b);
            continue;
        }
        if (pa.endpoint || pb.endpoint) {
            throw GeomError(GeomErrorKind::DegenerateContact,
                            "curves " + names + " touch at an endpoint " + to_string(c.at));
        }
        // Both pass through: a proper crossing iff the directions alternate.
        std::array<Point, 4> dirs{sub(pa.before, c.at), sub(pa.after, c.at), sub(pb.before, c.at),
                                  sub(pb.after, c.at)};
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                if (same_direction(dirs[i], dirs[j])) {
                    throw GeomError(GeomErrorKind::DegenerateContact, "curves " + names + " overlap at " + to_string(c.at));
                }
            }
        }
        std::array<int, 4> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](int i, int j) { return angle_less(dirs[i], dirs[j]); });
        auto owner = [](int i) { return i < 2 ? 0 : 1; };
        bool alternating = owner(order[0]) != owner(order[1]) && owner(order[1]) != owner(order[2]) &&
                           owner(order[2]) != owner(order[3]);
        if (!alternating) {
            throw GeomError(GeomErrorKind::DegenerateContact, "curves " + names + " touch at " + to_string(c.at));
        }
        // Positions: a bend vertex may be reported from the later segment; use
        // the segment that contains the point with the smallest position.
        auto pos_on = [](const Polyline& line, std::size_t seg, const Point& p) {
            Segment s = line.segment(seg);
            if (p == s.b) return Rational((seg + 1) % line.points.size());
            return position_of(line, seg, p);
        };
        crossings.push_back({c.curve_a, c.curve_b, c.at, pos_on(la, c.seg_a, c.at), pos_on(lb, c.seg_b, c.at)});
        curves_through[c.at].insert(c.curve_a);
        curves_through[c.at].insert(c.curve_b);
    }
    for (const auto& [pt, set] : curves_through) {
        if (set.size() > 2) throw GeomError(GeomErrorKind::TripleIncidence, "three or more curves meet at " + to_string(pt));
    }
    // A point where two curves end and a third passes is caught as an
    // endpoint contact above; several curves sharing an endpoint is a vertex.

    if (options.simple_drawing) {
        std::map<std::pair<int, int>, int> shared;
        for (const CrossingRec& x : crossings) shared[{x.a, x.b}]++;
        for (auto pr : shared_endpoints) shared[pr]++;
        for (const auto& [pr, count] : shared) {
            const Curve& ca = cs.curves[pr.first];
            const Curve& cb = cs.curves[pr.second];
            if (ca.line.closed || cb.line.closed) continue;
            if (count > 1) {
                throw GeomError(GeomErrorKind::PairCrossingBound,
                                "curves '" + ca.id + "' and '" + cb.id + "' share " + std::to_string(count) + " points");
            }
        }
    }

    // Isolated points must be off every curve and pairwise distinct.
    for (std::size_t i = 0; i < cs.isolated.size(); ++i) {
        const IsolatedPoint& ip = cs.isolated[i];
        for (const Curve& c : cs.curves) {
            for (std::size_t s = 0; s < c.line.segment_count(); ++s) {
                if (on_segment(c.line.segment(s), ip.point)) {
                    throw GeomError(GeomErrorKind::DegenerateContact, "point '" + ip.id + "' lies on curve '" + c.id + "'");
                }
            }
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (cs.isolated[j].point == ip.point) {
                throw GeomError(GeomErrorKind::DegenerateContact, "points '" + ip.id + "' and '" + cs.isolated[j].id + "' coincide");
            }
        }
    }

    // Vertices.
    std::vector<Vertex> vertices;
    std::map<Point, int> endpoint_vertex;
    std::vector<std::vector<Incidence>> along(curve_count);
    std::vector<Color> colors(curve_count);
    for (std::size_t c = 0; c < curve_count; ++c) {
        const Curve& curve = cs.curves[c];
        colors[c].name = curve.id;
        colors[c].closed = curve.line.closed;
        if (curve.line.closed) continue;
        for (int end = 0; end < 2; ++end) {
            const Point& p = end == 0 ? curve.line.points.front() : curve.line.points.back();
            auto [it, fresh] = endpoint_vertex.try_emplace(p, int(vertices.size()));
            if (fresh) vertices.push_back({VertexKind::Original, endpoint_name(curve.id, end), p});
            colors[c].endpoints[end] = it->second;
            Rational pos = end == 0 ? Rational(0) : Rational(curve.line.segment_count());
            along[c].push_back({pos, it->second});
        }
    }
    for (const IsolatedPoint& ip : cs.isolated) {
        if (endpoint_vertex.count(ip.point)) {
            throw GeomError(GeomErrorKind::DegenerateContact, "point '" + ip.id + "' coincides with a curve endpoint");
        }
        vertices.push_back({VertexKind::Original, ip.id, ip.point});
    }
    std::sort(crossings.begin(), crossings.end(), [](const CrossingRec& x, const CrossingRec& y) {
        return std::tie(x.a, x.b, x.pos_a) < std::tie(y.a, y.b, y.pos_a);
    });
    for (std::size_t k = 0; k < crossings.size(); ++k) {
        const CrossingRec& x = crossings[k];
        int id = int(vertices.size());
        vertices.push_back({VertexKind::Crossing, "x" + std::to_string(k), x.at});
        along[x.a].push_back({x.pos_a, id});
        along[x.b].push_back({x.pos_b, id});
    }
    for (std::size_t c = 0; c < curve_count; ++c) {
        if (cs.curves[c].line.closed && along[c].empty()) {
            int id = int(vertices.size());
            vertices.push_back({VertexKind::Anchor, cs.curves[c].id + ":anchor", cs.curves[c].line.points.front()});
            along[c].push_back({Rational(0), id});
        }
    }

    // Edges along each curve.
    std::vector<HalfEdge> half_edges;
    for (std::size_t c = 0; c < curve_count; ++c) {
        const Polyline& line = cs.curves[c].line;
        auto& inc = along[c];
        std::sort(inc.begin(), inc.end(), [](const Incidence& x, const Incidence& y) { return x.pos < y.pos; });
        const std::size_t n = line.points.size();
        const Rational total(line.segment_count());
        auto point_at = [&](const Rational& pos) {
            // Position k + t lies on segment k.
            mpz_class whole = pos.get_num() / pos.get_den();
            std::size_t seg = whole.get_ui();
            if (seg >= line.segment_count()) return line.closed ? line.points[0] : line.points.back();
            Rational t = pos - Rational(whole);
            Segment s = line.segment(seg);
            return Point(Rational(s.a.x + t * (s.b.x - s.a.x)), Rational(s.a.y + t * (s.b.y - s.a.y)));
        };
        std::size_t edge_total = line.closed ? inc.size() : inc.size() - 1;
        for (std::size_t e = 0; e < edge_total; ++e) {
            const Incidence& from = inc[e];
            const Incidence& to = inc[(e + 1) % inc.size()];
            Rational end_pos = to.pos;
            if (line.closed && end_pos <= from.pos) end_pos += total;
            std::vector<Point> path{point_at(from.pos)};
            for (std::size_t k = 0; k < 2 * n + 1; ++k) {
                Rational kp(k);
                if (kp > from.pos && kp < end_pos) path.push_back(line.points[k % n]);
                if (kp >= end_pos) break;
            }
            path.push_back(point_at(end_pos >= total && line.closed ? Rational(end_pos - total) : end_pos));
            HalfEdge fwd, bwd;
            int hf = int(half_edges.size());
            fwd.twin = hf + 1;
            bwd.twin = hf;
            fwd.head = to.vertex;
            bwd.head = from.vertex;
            fwd.color = bwd.color = int(c);
            fwd.path = path;
            std::reverse(path.begin(), path.end());
            bwd.path = std::move(path);
            half_edges.push_back(std::move(fwd));
            half_edges.push_back(std::move(bwd));
        }
    }

    // Rotation: counterclockwise by initial direction.
    std::vector<std::vector<int>> out_at(vertices.size());
    for (std::size_t h = 0; h < half_edges.size(); ++h) {
        out_at[half_edges[half_edges[h].twin].head].push_back(int(h));
    }
    for (auto& list : out_at) {
        std::sort(list.begin(), list.end(), [&](int x, int y) {
            const auto& px = half_edges[x].path;
            const auto& py = half_edges[y].path;
            return angle_less(sub(px[1], px[0]), sub(py[1], py[0]));
        });
        for (std::size_t i = 0; i < list.size(); ++i) {
            half_edges[list[i]].next_at_vertex = list[(i + 1) % list.size()];
        }
    }

    // Boundary cycles, components and their geometric nesting.
    const std::size_t H = half_edges.size();
    std::vector<int> cycle_of(H, -1);
    std::vector<std::vector<int>> cycles;
    for (std::size_t h0 = 0; h0 < H; ++h0) {
        if (cycle_of[h0] != -1) continue;
        std::vector<int> cyc;
        int h = int(h0);
        do {
            cycle_of[h] = int(cycles.size());
            cyc.push_back(h);
            h = half_edges[half_edges[h].twin].next_at_vertex;
        } while (h != int(h0));
        cycles.push_back(std::move(cyc));
    }
    std::vector<int> comp(vertices.size());
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (const HalfEdge& he : half_edges) comp[find(he.head)] = find(half_edges[he.twin].head);

    std::vector<Rational> area(cycles.size());
    std::vector<std::vector<Point>> rings(cycles.size());
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        for (int h : cycles[i]) {
            const auto& path = half_edges[h].path;
            rings[i].insert(rings[i].end(), path.begin(), path.end() - 1);
        }
        area[i] = doubled_area(rings[i]);
    }
    // Outer cycle of each component: the one with the largest signed area.
    std::map<int, int> outer_cycle;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        int root = find(half_edges[half_edges[cycles[i][0]].twin].head);
        auto it = outer_cycle.find(root);
        if (it == outer_cycle.end() || area[i] > area[it->second]) outer_cycle[root] = int(i);
    }
    std::vector<char> is_outer(cycles.size(), 0);
    for (auto [root, cyc] : outer_cycle) is_outer[cyc] = 1;

    // Groups: one per bounded cycle, plus the unbounded face (last).
    std::vector<Planarization::FaceGroup> groups;
    std::vector<int> group_of_cycle(cycles.size(), -1);
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (is_outer[i]) continue;
        group_of_cycle[i] = int(groups.size());
        groups.push_back({{cycles[i][0]}, {}, false});
    }
    const int outer_group = int(groups.size());
    groups.push_back({{}, {}, true});

    auto containing_group = [&](const Point& q, int skip_root) {
        int best = -1;
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            if (is_outer[i]) continue;
            int root = find(half_edges[half_edges[cycles[i][0]].twin].head);
            if (root == skip_root) continue;
            if (best != -1 && -area[i] >= -area[best]) continue;
            if (winding_number(rings[i], q) != 0) best = int(i);
        }
        return best == -1 ? outer_group : group_of_cycle[best];
    };
    for (auto [root, cyc] : outer_cycle) {
        const Point& q = *vertices[root].point;
        groups[containing_group(q, root)].cycle_members.push_back(cycles[cyc][0]);
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (!out_at[v].empty()) continue;
        groups[containing_group(*vertices[v].point, -1)].isolated.push_back(int(v));
    }

    return Planarization::assemble(std::move(vertices), std::move(half_edges), std::move(colors), groups);
}

}  // namespace edgeins
