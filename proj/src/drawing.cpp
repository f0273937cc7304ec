#include "edgeins/drawing.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace edgeins {

const char* to_string(VertexKind kind) {
    switch (kind) {
    case VertexKind::Original: return "original";
    case VertexKind::Crossing: return "crossing";
    case VertexKind::Anchor: return "anchor";
    }
    return "?";
}

const char* to_string(DrawingErrorKind kind) {
    switch (kind) {
    case DrawingErrorKind::MalformedMap: return "MalformedMap";
    case DrawingErrorKind::UnknownVertex: return "UnknownVertex";
    case DrawingErrorKind::NotConnected: return "NotConnected";
    case DrawingErrorKind::ParseError: return "ParseError";
    }
    return "?";
}

const char* to_string(Violation::Kind kind) {
    switch (kind) {
    case Violation::Kind::PairCrossingBound: return "PairCrossingBound";
    case Violation::Kind::AdjacentCrossing: return "AdjacentCrossing";
    case Violation::Kind::SelfCrossing: return "SelfCrossing";
    case Violation::Kind::NonAlternating: return "NonAlternating";
    case Violation::Kind::CrossingDegree: return "CrossingDegree";
    case Violation::Kind::BrokenWalk: return "BrokenWalk";
    }
    return "?";
}

void check_map_laws(const std::vector<Vertex>& vertices, const std::vector<HalfEdge>& half_edges) {
    const int H = int(half_edges.size());
    const int V = int(vertices.size());
    auto fail = [](const std::string& msg) { throw DrawingError(DrawingErrorKind::MalformedMap, msg); };
    for (int h = 0; h < H; ++h) {
        const HalfEdge& he = half_edges[h];
        if (he.twin < 0 || he.twin >= H || he.twin == h) fail("bad twin of half-edge " + std::to_string(h));
        if (half_edges[he.twin].twin != h) fail("twin is not an involution at " + std::to_string(h));
        if (he.head < 0 || he.head >= V) fail("bad head of half-edge " + std::to_string(h));
        if (he.next_at_vertex < 0 || he.next_at_vertex >= H) fail("bad rotation successor of " + std::to_string(h));
        if (half_edges[he.twin].color != he.color) fail("twins differ in color at " + std::to_string(h));
    }
    // Rotation must permute the half-edges leaving each vertex in one cycle.
    std::vector<int> origin(H);
    for (int h = 0; h < H; ++h) origin[h] = half_edges[half_edges[h].twin].head;
    std::vector<int> indeg(H, 0);
    for (int h = 0; h < H; ++h) {
        int n = half_edges[h].next_at_vertex;
        if (origin[n] != origin[h]) fail("rotation successor of " + std::to_string(h) + " leaves another vertex");
        if (++indeg[n] > 1) fail("rotation is not a permutation");
    }
    std::vector<int> count_at(V, 0);
    for (int h = 0; h < H; ++h) count_at[origin[h]]++;
    std::vector<char> seen(V, 0);
    for (int h = 0; h < H; ++h) {
        if (seen[origin[h]]) continue;
        seen[origin[h]] = 1;
        int len = 0, x = h;
        do {
            ++len;
            x = half_edges[x].next_at_vertex;
        } while (x != h && len <= H);
        if (len != count_at[origin[h]]) fail("rotation at vertex " + std::to_string(origin[h]) + " is not one cycle");
    }
}

Planarization Planarization::assemble(std::vector<Vertex> vertices, std::vector<HalfEdge> half_edges,
                                      std::vector<Color> colors, const std::vector<FaceGroup>& groups) {
    check_map_laws(vertices, half_edges);
    Planarization p;
    p.vertices = std::move(vertices);
    p.half_edges = std::move(half_edges);
    p.colors = std::move(colors);
    const int H = int(p.half_edges.size());
    for (int h = 0; h < H; ++h) {
        HalfEdge& he = p.half_edges[h];
        he.origin = p.half_edges[he.twin].head;
        if (he.color < 0 || he.color >= int(p.colors.size())) {
            throw DrawingError(DrawingErrorKind::MalformedMap, "bad color on half-edge " + std::to_string(h));
        }
    }
    for (int h = 0; h < H; ++h) {
        if (h < p.half_edges[h].twin) {
            p.half_edges[h].edge = p.half_edges[p.half_edges[h].twin].edge = int(p.edges.size());
            p.edges.push_back({h, p.half_edges[h].twin});
        }
    }

    // Cycle membership.
    std::vector<int> cycle_rep(H, -1);
    for (int h0 = 0; h0 < H; ++h0) {
        if (cycle_rep[h0] != -1) continue;
        int h = h0;
        do {
            cycle_rep[h] = h0;  // h0 is the smallest id in its cycle
            h = p.face_next(h);
        } while (h != h0);
    }

    // Face order: smallest incident half-edge.
    struct Pending {
        int min_he;
        std::size_t group;
    };
    std::vector<Pending> order;
    std::vector<char> claimed(H, 0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        int mn = H;
        for (int m : groups[g].cycle_members) {
            if (m < 0 || m >= H) throw DrawingError(DrawingErrorKind::MalformedMap, "face group names unknown half-edge");
            int rep = cycle_rep[m];
            if (claimed[rep]) throw DrawingError(DrawingErrorKind::MalformedMap, "cycle assigned to two faces");
            claimed[rep] = 1;
            mn = std::min(mn, rep);
        }
        order.push_back({mn, g});
    }
    for (int h = 0; h < H; ++h) {
        if (cycle_rep[h] == h && !claimed[h]) {
            throw DrawingError(DrawingErrorKind::MalformedMap, "cycle of half-edge " + std::to_string(h) + " has no face");
        }
    }
    std::sort(order.begin(), order.end(), [](const Pending& a, const Pending& b) { return a.min_he < b.min_he; });
    int empty_groups = 0;
    for (const Pending& o : order) empty_groups += (o.min_he == H);
    if (empty_groups > 1) throw DrawingError(DrawingErrorKind::MalformedMap, "several faces without boundary");

    p.vertex_face.assign(p.vertices.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const FaceGroup& g = groups[order[i].group];
        Face f;
        f.id = int(i);
        f.outer = g.outer;
        for (int m : g.cycle_members) f.cycles.push_back(cycle_rep[m]);
        std::sort(f.cycles.begin(), f.cycles.end());
        f.isolated = g.isolated;
        std::sort(f.isolated.begin(), f.isolated.end());
        for (int v : f.isolated) p.vertex_face[v] = f.id;
        if (f.outer) {
            if (p.outer_face != -1) throw DrawingError(DrawingErrorKind::MalformedMap, "two outer faces");
            p.outer_face = f.id;
        }
        for (int rep : f.cycles) {
            int h = rep;
            do {
                p.half_edges[h].face = f.id;
                h = p.face_next(h);
            } while (h != rep);
        }
        p.faces.push_back(std::move(f));
    }
    if (p.outer_face == -1) throw DrawingError(DrawingErrorKind::MalformedMap, "no outer face");
    std::vector<int> degree(p.vertices.size(), 0);
    for (const HalfEdge& he : p.half_edges) degree[he.origin]++;
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
        if (degree[v] == 0 && p.vertex_face[v] == -1) {
            throw DrawingError(DrawingErrorKind::MalformedMap, "isolated vertex " + p.vertices[v].name + " has no face");
        }
    }
    return p;
}

bool Planarization::has_geometry() const {
    if (half_edges.empty()) {
        return std::all_of(vertices.begin(), vertices.end(), [](const Vertex& v) { return v.point.has_value(); });
    }
    return !half_edges.front().path.empty();
}

int Planarization::find_vertex(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].name == name) return int(i);
    }
    return -1;
}

int Planarization::find_color(const std::string& name) const {
    for (std::size_t i = 0; i < colors.size(); ++i) {
        if (colors[i].name == name) return int(i);
    }
    return -1;
}

std::vector<int> Planarization::outgoing(int v) const {
    int start = -1;
    for (std::size_t h = 0; h < half_edges.size(); ++h) {
        if (half_edges[h].origin == v) {
            start = int(h);
            break;
        }
    }
    std::vector<int> out;
    if (start == -1) return out;
    int h = start;
    do {
        out.push_back(h);
        h = half_edges[h].next_at_vertex;
    } while (h != start);
    return out;
}

std::vector<int> Planarization::faces_at(int v) const {
    std::vector<int> out;
    if (vertex_face[v] != -1) return {vertex_face[v]};
    for (int h : outgoing(v)) out.push_back(half_edges[h].face);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> Planarization::cycle(int h) const {
    std::vector<int> out;
    int x = h;
    do {
        out.push_back(x);
        x = face_next(x);
    } while (x != h);
    return out;
}

int Planarization::crossing_count(int c) const {
    std::set<int> seen;
    for (const HalfEdge& he : half_edges) {
        if (he.color == c && vertices[he.head].kind == VertexKind::Crossing) seen.insert(he.head);
    }
    return int(seen.size());
}

int Planarization::total_crossings() const { return count_kind(VertexKind::Crossing); }

int Planarization::count_kind(VertexKind kind) const {
    return int(std::count_if(vertices.begin(), vertices.end(), [&](const Vertex& v) { return v.kind == kind; }));
}

std::vector<int> color_walk(const Planarization& p, int c) {
    std::vector<int> walk;
    int start = p.colors[c].endpoints[0];
    int h = -1;
    for (int o : p.outgoing(start)) {
        if (p.half_edges[o].color == c) h = o;
    }
    while (h != -1) {
        walk.push_back(h);
        int w = p.half_edges[h].head;
        if (p.vertices[w].kind != VertexKind::Crossing) break;
        const HalfEdge& back = p.half_edges[p.half_edges[h].twin];
        h = p.half_edges[back.next_at_vertex].next_at_vertex;
    }
    return walk;
}

std::vector<int> crossing_sequence(const Planarization& p, int c) {
    std::vector<int> seq;
    auto walk = color_walk(p, c);
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        int w = p.half_edges[walk[i]].head;
        for (int o : p.outgoing(w)) {
            if (p.half_edges[o].color != c) {
                seq.push_back(p.half_edges[o].color);
                break;
            }
        }
    }
    return seq;
}

ValidationReport validate_simple(const Planarization& p) {
    check_map_laws(p.vertices, p.half_edges);
    ValidationReport report;
    const int V = int(p.vertices.size());
    std::vector<std::vector<int>> rot(V);
    for (int v = 0; v < V; ++v) rot[v] = p.outgoing(v);

    // Local structure of crossings.
    std::map<std::pair<int, int>, int> crossing_pairs;
    for (int v = 0; v < V; ++v) {
        const Vertex& vx = p.vertices[v];
        if (vx.kind != VertexKind::Crossing) continue;
        const auto& r = rot[v];
        if (r.size() != 4) {
            report.violations.push_back({Violation::Kind::CrossingDegree, -1, -1, v,
                                         "degree " + std::to_string(r.size())});
            continue;
        }
        std::array<int, 4> c{};
        for (int i = 0; i < 4; ++i) c[i] = p.half_edges[r[i]].color;
        if (c[0] == c[1] && c[1] == c[2] && c[2] == c[3]) {
            report.violations.push_back({Violation::Kind::SelfCrossing, c[0], -1, v, ""});
            continue;
        }
        if (!(c[0] == c[2] && c[1] == c[3] && c[0] != c[1])) {
            report.violations.push_back({Violation::Kind::NonAlternating, std::min(c[0], c[1]),
                                         std::max(c[0], c[1]), v, ""});
            continue;
        }
        crossing_pairs[{std::min(c[0], c[1]), std::max(c[0], c[1])}]++;
    }

    // Each color forms one walk.
    const int C = int(p.colors.size());
    std::vector<std::vector<int>> of_color(C);
    for (std::size_t h = 0; h < p.half_edges.size(); ++h) of_color[p.half_edges[h].color].push_back(int(h));
    for (int c = 0; c < C; ++c) {
        const Color& col = p.colors[c];
        auto broken = [&](const std::string& why) {
            report.violations.push_back({Violation::Kind::BrokenWalk, c, -1, -1, why});
        };
        if (of_color[c].empty()) {
            broken("color has no edges");
            continue;
        }
        int start = -1;
        if (col.closed) {
            start = of_color[c].front();
        } else {
            for (int h : of_color[c]) {
                if (p.half_edges[h].origin == col.endpoints[0]) {
                    if (start != -1) {
                        broken("endpoint has several edges of the color");
                        start = -2;
                        break;
                    }
                    start = h;
                }
            }
            if (start == -1) broken("walk does not start at its endpoint");
            if (start < 0) continue;
        }
        std::set<int> used;
        int h = start;
        bool ok = true;
        while (true) {
            used.insert(h);
            used.insert(p.half_edges[h].twin);
            int w = p.half_edges[h].head;
            const Vertex& wx = p.vertices[w];
            if (wx.kind == VertexKind::Original) {
                if (col.closed || w != col.endpoints[1]) {
                    broken("walk ends at an unexpected vertex");
                    ok = false;
                }
                break;
            }
            int next = -1;
            for (int o : rot[w]) {
                if (o != p.half_edges[h].twin && p.half_edges[o].color == c && !used.count(o)) {
                    next = o;
                    break;
                }
            }
            if (next == -1) {
                if (!col.closed || p.half_edges[start].origin != w) {
                    broken("walk stops inside the drawing");
                    ok = false;
                }
                break;
            }
            h = next;
        }
        if (ok && used.size() != of_color[c].size()) broken("color has edges off its walk");
    }

    // Shared points between open colors.
    std::map<std::pair<int, int>, int> shared_ends;
    std::vector<std::vector<int>> colors_at(V);
    for (int c = 0; c < C; ++c) {
        if (p.colors[c].closed) continue;
        for (int e : p.colors[c].endpoints) {
            if (e >= 0) colors_at[e].push_back(c);
        }
    }
    for (int v = 0; v < V; ++v) {
        auto& list = colors_at[v];
        std::sort(list.begin(), list.end());
        for (std::size_t i = 0; i < list.size(); ++i) {
            for (std::size_t j = i + 1; j < list.size(); ++j) {
                if (list[i] != list[j]) shared_ends[{list[i], list[j]}]++;
            }
        }
    }
    std::set<std::pair<int, int>> pairs;
    for (auto& [k, n] : crossing_pairs) pairs.insert(k);
    for (auto& [k, n] : shared_ends) pairs.insert(k);
    for (const auto& pr : pairs) {
        if (p.colors[pr.first].closed || p.colors[pr.second].closed) continue;
        int crossings = crossing_pairs.count(pr) ? crossing_pairs[pr] : 0;
        int ends = shared_ends.count(pr) ? shared_ends[pr] : 0;
        if (crossings > 0 && ends > 0) {
            report.violations.push_back({Violation::Kind::AdjacentCrossing, pr.first, pr.second, -1, ""});
        } else if (crossings + ends > 1) {
            report.violations.push_back({Violation::Kind::PairCrossingBound, pr.first, pr.second, -1,
                                         std::to_string(crossings + ends) + " common points"});
        }
    }
    return report;
}

const DualArc* ColoredDual::arc(int id) const {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), id, [](const DualArc& a, int x) { return a.id < x; });
    if (it == arcs.end() || it->id != id) return nullptr;
    return &*it;
}

ColoredDual colored_dual(const Planarization& p, int u, int v) { return colored_dual(p, u, v, {}); }

ColoredDual colored_dual(const Planarization& p, int u, int v, const std::vector<int>& blocked_colors) {
    const int V = int(p.vertices.size());
    for (int x : {u, v}) {
        if (x < 0 || x >= V || p.vertices[x].kind != VertexKind::Original) {
            throw DrawingError(DrawingErrorKind::UnknownVertex, "vertex " + std::to_string(x) + " is not an original vertex");
        }
    }
    std::vector<char> removed(p.colors.size(), 0);
    for (std::size_t c = 0; c < p.colors.size(); ++c) {
        for (int e : p.colors[c].endpoints) {
            if (e == u || e == v) removed[c] = 1;
        }
    }
    for (int c : blocked_colors) {
        if (c >= 0 && c < int(removed.size())) removed[c] = 1;
    }
    ColoredDual d;
    d.node_count = int(p.faces.size());
    d.color_count = int(p.colors.size());
    d.incident.resize(d.node_count);
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
        const HalfEdge& h = p.half_edges[p.edges[e][0]];
        if (removed[h.color]) continue;
        DualArc a;
        a.id = int(e);
        a.color = h.color;
        a.faces = {h.face, p.half_edges[h.twin].face};
        d.arcs.push_back(a);
        d.incident[a.faces[0]].push_back(a.id);
        if (a.faces[1] != a.faces[0]) d.incident[a.faces[1]].push_back(a.id);
    }
    for (auto& list : d.incident) {
        std::sort(list.begin(), list.end(), [&](int x, int y) {
            int cx = p.half_edges[p.edges[x][0]].color, cy = p.half_edges[p.edges[y][0]].color;
            return std::tie(cx, x) < std::tie(cy, y);
        });
    }
    d.u_faces = p.faces_at(u);
    d.v_faces = p.faces_at(v);
    return d;
}

std::vector<int> witness_faces(const ColoredDual& d, const Witness& w) {
    std::vector<int> faces{w.start_face};
    int cur = w.start_face;
    for (const WitnessStep& s : w.steps) {
        const DualArc* a = d.arc(s.arc);
        if (!a) return {};
        int next;
        if (a->faces[0] == cur) {
            next = a->faces[1];
        } else if (a->faces[1] == cur) {
            next = a->faces[0];
        } else {
            return {};
        }
        faces.push_back(next);
        cur = next;
    }
    return faces;
}

bool verify_witness(const ColoredDual& d, const Witness& w) {
    if (w.start_face < 0 || w.start_face >= d.node_count) return false;
    if (!std::binary_search(d.u_faces.begin(), d.u_faces.end(), w.start_face)) return false;
    if (!std::binary_search(d.v_faces.begin(), d.v_faces.end(), w.end_face)) return false;
    std::set<int> colors;
    for (const WitnessStep& s : w.steps) {
        const DualArc* a = d.arc(s.arc);
        if (!a || a->color != s.color) return false;
        if (!colors.insert(s.color).second) return false;
    }
    std::vector<int> faces = witness_faces(d, w);
    if (faces.empty() || faces.back() != w.end_face) return false;
    std::set<int> distinct(faces.begin(), faces.end());
    return distinct.size() == faces.size();
}

namespace {

Rational cross(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
    return ax * by - ay * bx;
}

// Signed area (doubled) of every boundary cycle, keyed by representative.
Rational cycle_area(const Planarization& p, int rep, std::vector<Point>* ring_out) {
    std::vector<Point> ring;
    for (int h : p.cycle(rep)) {
        const auto& path = p.half_edges[h].path;
        ring.insert(ring.end(), path.begin(), path.end() - 1);
    }
    Rational a = doubled_area(ring);
    if (ring_out) *ring_out = std::move(ring);
    return a;
}

}  // namespace

Point interior_point(const Planarization& p, int f) {
    const Face& face = p.faces.at(f);
    if (face.cycles.empty()) {
        Rational x = 0;
        for (const Vertex& v : p.vertices) {
            if (v.point && v.point->x > x) x = v.point->x;
        }
        return Point(Rational(x + 1), Rational(0));
    }
    const HalfEdge& he = p.half_edges[face.cycles.front()];
    const Point& a = he.path[0];
    const Point& b = he.path[1];
    Point m(Rational((a.x + b.x) / 2), Rational((a.y + b.y) / 2));
    Rational nx = b.y - a.y, ny = -(b.x - a.x);  // right-hand normal
    std::optional<Rational> best;
    auto consider = [&](const Rational& t) {
        if (t > 0 && (!best || t < *best)) best = t;
    };
    for (const auto& pair : p.edges) {
        const auto& path = p.half_edges[pair[0]].path;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const Point& c = path[i];
            const Point& d = path[i + 1];
            Rational ex = d.x - c.x, ey = d.y - c.y;
            Rational denom = cross(nx, ny, ex, ey);
            Rational wx = c.x - m.x, wy = c.y - m.y;
            if (denom == 0) {
                if (cross(wx, wy, nx, ny) != 0) continue;
                // Collinear with the ray: hits at the segment ends.
                Rational nn = nx * nx + ny * ny;
                consider(Rational((wx * nx + wy * ny) / nn));
                consider(Rational(((d.x - m.x) * nx + (d.y - m.y) * ny) / nn));
                continue;
            }
            Rational t = cross(wx, wy, ex, ey) / denom;
            Rational s = cross(wx, wy, nx, ny) / denom;
            if (s >= 0 && s <= 1) consider(t);
        }
    }
    Rational t = best ? Rational(*best / 2) : Rational(1);
    return Point(Rational(m.x + t * nx), Rational(m.y + t * ny));
}

int locate(const Planarization& p, const Point& q) {
    int best_face = p.outer_face;
    std::optional<Rational> best_area;
    for (const Face& f : p.faces) {
        for (int rep : f.cycles) {
            std::vector<Point> ring;
            Rational a = cycle_area(p, rep, &ring);
            if (a >= 0) continue;  // outer boundary of a component
            if (best_area && -a >= *best_area) continue;
            if (winding_number(ring, q) != 0) {
                best_area = -a;
                best_face = f.id;
            }
        }
    }
    return best_face;
}

}  // namespace edgeins
