#include "edgeins/pseudocircles.h"

#include "edgeins/planarize.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

namespace edgeins {

const char* to_string(GrowResult::Status s) {
    switch (s) {
    case GrowResult::Status::Grown: return "grown";
    case GrowResult::Status::Fixpoint: return "fixpoint";
    case GrowResult::Status::Infeasible: return "infeasible";
    }
    return "?";
}

const char* to_string(ExtensionCertificate::Side s) {
    switch (s) {
    case ExtensionCertificate::Side::Left: return "left";
    case ExtensionCertificate::Side::Right: return "right";
    case ExtensionCertificate::Side::None: return "none";
    }
    return "?";
}

const char* to_string(ExtensionResult::Stage s) {
    switch (s) {
    case ExtensionResult::Stage::Initial: return "initial";
    case ExtensionResult::Stage::Growth: return "growth";
    case ExtensionResult::Stage::Fixpoint: return "fixpoint";
    }
    return "?";
}

int Region::size() const { return int(std::count(faces.begin(), faces.end(), 1)); }

namespace {

int pair_crossings(const Planarization& p, int a, int b) {
    int n = 0;
    for (std::size_t x = 0; x < p.vertices.size(); ++x) {
        if (p.vertices[x].kind != VertexKind::Crossing) continue;
        auto out = p.outgoing(int(x));
        int c0 = p.half_edges[out[0]].color, c1 = p.half_edges[out[1]].color;
        n += (c0 == a && c1 == b) || (c0 == b && c1 == a);
    }
    return n;
}

// Component label per face (-1 for faces outside `open`). Faces are joined
// across edges accepted by `passable`.
std::vector<int> components(const PreparedArrangement& pa, const std::vector<char>& open,
                            const std::function<bool(int color)>& passable) {
    const Planarization& p = pa.map;
    std::vector<std::vector<int>> adj(p.faces.size());
    for (const auto& e : p.edges) {
        const HalfEdge& h = p.half_edges[e[0]];
        int f = h.face, g = p.half_edges[e[1]].face;
        if (f == g || !open[f] || !open[g] || !passable(h.color)) continue;
        adj[f].push_back(g);
        adj[g].push_back(f);
    }
    std::vector<int> label(p.faces.size(), -1);
    int next = 0;
    for (std::size_t s = 0; s < p.faces.size(); ++s) {
        if (!open[s] || label[s] != -1) continue;
        std::deque<int> queue{int(s)};
        label[s] = next;
        while (!queue.empty()) {
            int f = queue.front();
            queue.pop_front();
            for (int g : adj[f]) {
                if (label[g] == -1) {
                    label[g] = next;
                    queue.push_back(g);
                }
            }
        }
        ++next;
    }
    return label;
}

std::vector<char> complement(const Region& r) {
    std::vector<char> out(r.faces.size());
    for (std::size_t f = 0; f < out.size(); ++f) out[f] = !r.faces[f];
    return out;
}

// Everything outside u's complement component joins the region. Returns false
// when v's face is not in that component.
bool seal(const PreparedArrangement& pa, Region& r) {
    auto label = components(pa, complement(r), [&](int c) { return c != pa.sigma_color; });
    int keep = label[pa.u_face];
    if (keep == -1 || label[pa.v_face] != keep) return false;
    for (std::size_t f = 0; f < r.faces.size(); ++f) r.faces[f] = label[f] != keep;
    return true;
}

}  // namespace

PreparedArrangement prepare(const Arrangement& a) {
    CurveSet cs = a.circles;
    for (const Curve& c : cs.curves) {
        if (!c.line.closed) throw InvalidArrangement("circle " + c.id + " is not closed");
        if (c.id == kSigmaId) throw InvalidArrangement("circle id '" + std::string(kSigmaId) + "' is reserved");
    }
    if (a.sigma.closed) throw InvalidArrangement("sigma must be an open arc");
    if (!cs.isolated.empty()) throw InvalidArrangement("isolated points are not allowed");
    cs.curves.push_back({kSigmaId, a.sigma});

    PreparedArrangement pa;
    pa.map = build_planarization(cs);
    const Planarization& p = pa.map;
    for (const Curve& c : a.circles.curves) {
        pa.circle_ids.push_back(c.id);
        pa.circle_color.push_back(p.find_color(c.id));
    }
    pa.sigma_color = p.find_color(kSigmaId);
    pa.circle_of_color.assign(p.colors.size(), -1);
    for (std::size_t i = 0; i < pa.circle_color.size(); ++i) pa.circle_of_color[pa.circle_color[i]] = int(i);

    const int n = int(pa.circle_ids.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int k = pair_crossings(p, pa.circle_color[i], pa.circle_color[j]);
            if (k != 0 && k != 2) {
                throw InvalidArrangement("circles " + pa.circle_ids[i] + " and " + pa.circle_ids[j] + " cross " +
                                         std::to_string(k) + " times");
            }
        }
        int k = pair_crossings(p, pa.circle_color[i], pa.sigma_color);
        if (k > 2) throw TooManyCrossings("sigma crosses " + pa.circle_ids[i] + " " + std::to_string(k) + " times");
    }

    pa.u = p.colors[pa.sigma_color].endpoints[0];
    pa.v = p.colors[pa.sigma_color].endpoints[1];
    pa.u_face = p.faces_at(pa.u).front();
    pa.v_face = p.faces_at(pa.v).front();
    if (pa.u_face != p.outer_face) throw InvalidArrangement("u must lie in the unbounded face");

    // Inside flags by search from the outer face: crossing an edge of circle
    // i flips flag i.
    pa.inside.assign(p.faces.size(), {});
    std::vector<char> seen(p.faces.size(), 0);
    pa.inside[p.outer_face].assign(n, 0);
    seen[p.outer_face] = 1;
    std::deque<int> queue{p.outer_face};
    std::vector<std::vector<int>> around(p.faces.size());
    for (std::size_t h = 0; h < p.half_edges.size(); ++h) around[p.half_edges[h].face].push_back(int(h));
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        for (int h : around[f]) {
            const HalfEdge& he = p.half_edges[h];
            int g = p.half_edges[he.twin].face;
            auto flags = pa.inside[f];
            int i = pa.circle_of_color[he.color];
            if (i >= 0) flags[i] ^= 1;
            if (!seen[g]) {
                seen[g] = 1;
                pa.inside[g] = flags;
                queue.push_back(g);
            } else if (pa.inside[g] != flags) {
                throw InvalidArrangement("inconsistent inside flags");
            }
        }
    }
    return pa;
}

CircleClassification classify(const PreparedArrangement& pa) {
    CircleClassification cls;
    const int n = int(pa.circle_ids.size());
    cls.count.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        cls.count[i] = pair_crossings(pa.map, pa.circle_color[i], pa.sigma_color);
        if (cls.count[i] > 2) throw TooManyCrossings("sigma crosses " + pa.circle_ids[i] + " more than twice");
        (cls.count[i] == 0 ? cls.c0 : cls.count[i] == 1 ? cls.c1 : cls.c2).push_back(i);
        // v lies inside exactly the circles crossed once.
        if (bool(pa.inside[pa.v_face][i]) != (cls.count[i] == 1)) {
            throw InternalInvariantViolation("v's side of " + pa.circle_ids[i] + " disagrees with its crossing count");
        }
    }
    return cls;
}

std::optional<Region> initial_region(const PreparedArrangement& pa, const CircleClassification& cls) {
    Region r;
    r.faces.assign(pa.face_count(), 0);
    for (std::size_t f = 0; f < r.faces.size(); ++f) {
        for (int i : cls.c2) r.faces[f] |= pa.inside[f][i];
    }
    if (!seal(pa, r)) return std::nullopt;
    return r;
}

GrowResult grow(const PreparedArrangement& pa, const CircleClassification& cls, const Region& r, bool reverse) {
    std::vector<int> order = cls.c0;
    order.insert(order.end(), cls.c1.begin(), cls.c1.end());
    std::sort(order.begin(), order.end());
    if (reverse) std::reverse(order.begin(), order.end());
    const auto open = complement(r);
    for (int phi : order) {
        const int color = pa.circle_color[phi];
        auto label = components(pa, open, [&](int c) { return c != pa.sigma_color && c != color; });
        std::vector<char> reachable(pa.face_count() + 1, 0);
        reachable[label[pa.u_face]] = 1;
        reachable[label[pa.v_face]] = 1;
        if (cls.count[phi] == 0) {
            for (std::size_t f = 0; f < open.size(); ++f) {
                if (open[f] && pa.inside[f][phi]) reachable[label[f]] = 1;
            }
        }
        Region next = r;
        bool added = false;
        for (std::size_t f = 0; f < open.size(); ++f) {
            if (open[f] && !reachable[label[f]]) {
                next.faces[f] = 1;
                added = true;
            }
        }
        if (!added) continue;
        GrowResult out;
        out.circle = phi;
        if (!seal(pa, next)) {
            out.status = GrowResult::Status::Infeasible;
            return out;
        }
        next.iteration = r.iteration + 1;
        out.status = GrowResult::Status::Grown;
        out.region = std::move(next);
        return out;
    }
    return {};
}

bool c0_complement_connected(const PreparedArrangement& pa, const CircleClassification& cls, const Region& r) {
    auto open = complement(r);
    for (int phi : cls.c0) {
        std::vector<char> in(open.size());
        for (std::size_t f = 0; f < open.size(); ++f) in[f] = open[f] && pa.inside[f][phi];
        auto label = components(pa, in, [&](int c) { return c != pa.sigma_color; });
        if (*std::max_element(label.begin(), label.end()) > 0) return false;
    }
    return true;
}

bool region_well_formed(const PreparedArrangement& pa, const Region& r) {
    auto open = complement(r);
    if (!open[pa.u_face] || !open[pa.v_face]) return false;
    auto label = components(pa, open, [&](int c) { return c != pa.sigma_color; });
    return *std::max_element(label.begin(), label.end()) == 0;
}

namespace {

struct Walk {
    std::vector<CertificateCrossing> crossings;
    std::vector<int> faces;
};

// Walks the boundary of the region from u's tip around to v's tip and on back
// to u, staying in the complement and crossing every complement edge met at a
// boundary vertex.
std::pair<Walk, Walk> boundary_walks(const PreparedArrangement& pa, const Region& r) {
    const Planarization& p = pa.map;
    auto wall = [&](int h) {
        const HalfEdge& he = p.half_edges[h];
        return he.color == pa.sigma_color || r.contains(p.half_edges[he.twin].face);
    };
    auto out_u = p.outgoing(pa.u);
    if (out_u.size() != 1) throw InternalInvariantViolation("u is not an endpoint of degree one");
    const int h0 = out_u.front();

    Walk first, second;
    Walk* cur = &first;
    cur->faces.push_back(p.half_edges[h0].face);
    bool reached_v = false;
    int h = h0;
    const std::size_t limit = 4 * p.half_edges.size() + 4;
    for (std::size_t step = 0;; ++step) {
        if (step > limit) throw InternalInvariantViolation("boundary walk does not close");
        const HalfEdge& he = p.half_edges[h];
        if (he.head == pa.v && he.color == pa.sigma_color) {
            if (reached_v) throw InternalInvariantViolation("boundary walk passes v twice");
            reached_v = true;
            cur = &second;
            cur->faces.push_back(he.face);
        }
        int g = p.half_edges[he.twin].next_at_vertex;
        while (!wall(g)) {
            const HalfEdge& ge = p.half_edges[g];
            cur->crossings.push_back({p.colors[ge.color].name, ge.edge});
            cur->faces.push_back(p.half_edges[ge.twin].face);
            g = ge.next_at_vertex;
        }
        h = g;
        if (h == h0) break;
    }
    if (!reached_v) throw InternalInvariantViolation("boundary walk misses v");
    std::reverse(second.crossings.begin(), second.crossings.end());
    std::reverse(second.faces.begin(), second.faces.end());
    return {std::move(first), std::move(second)};
}

}  // namespace

ExtensionResult extend(const PreparedArrangement& pa, const ExtendOptions& options) {
    ExtensionResult res;
    CircleClassification cls = classify(pa);
    auto r0 = initial_region(pa, cls);
    if (!r0) {
        res.stage = ExtensionResult::Stage::Initial;
        return res;
    }
    Region r = std::move(*r0);
    res.trace.push_back(r);
    while (true) {
        if (options.check_invariants) {
            if (!region_well_formed(pa, r)) throw InternalInvariantViolation("region complement is not one cell");
            if (!c0_complement_connected(pa, cls, r)) throw InternalInvariantViolation("a C0 circle's free interior is split");
        }
        GrowResult g = grow(pa, cls, r, options.reverse_scan);
        if (g.status == GrowResult::Status::Infeasible) {
            res.stage = ExtensionResult::Stage::Growth;
            return res;
        }
        if (g.status == GrowResult::Status::Fixpoint) break;
        if (g.region.size() <= r.size()) throw InternalInvariantViolation("growth step added no face");
        r = std::move(g.region);
        res.trace.push_back(r);
        if (++res.grow_steps > int(pa.face_count())) throw InternalInvariantViolation("too many growth steps");
    }

    auto [right, left] = boundary_walks(pa, r);
    ExtensionCertificate a{ExtensionCertificate::Side::Right, std::move(right.crossings), std::move(right.faces)};
    ExtensionCertificate b{ExtensionCertificate::Side::Left, std::move(left.crossings), std::move(left.faces)};
    if (!verify_certificate(pa, a) || !verify_certificate(pa, b)) {
        throw InternalInvariantViolation("boundary walk fails verification");
    }
    res.yes = true;
    res.stage = ExtensionResult::Stage::Fixpoint;
    res.certificate = b.crossings < a.crossings ? std::move(b) : std::move(a);
    return res;
}

bool verify_certificate(const PreparedArrangement& pa, const ExtensionCertificate& c) {
    const Planarization& p = pa.map;
    if (c.faces.size() != c.crossings.size() + 1) return false;
    for (int f : c.faces) {
        if (f < 0 || f >= int(p.faces.size())) return false;
    }
    if (c.faces.front() != pa.u_face || c.faces.back() != pa.v_face) return false;
    CircleClassification cls = classify(pa);
    std::vector<int> count(pa.circle_ids.size(), 0);
    for (std::size_t k = 0; k < c.crossings.size(); ++k) {
        int e = c.crossings[k].edge;
        if (e < 0 || e >= int(p.edges.size())) return false;
        const HalfEdge& h = p.half_edges[p.edges[e][0]];
        if (p.colors[h.color].name != c.crossings[k].circle) return false;
        int i = pa.circle_of_color[h.color];
        if (i < 0) return false;  // sigma
        std::array<int, 2> sides{h.face, p.half_edges[h.twin].face};
        std::array<int, 2> step{c.faces[k], c.faces[k + 1]};
        if (!(sides == step || (sides[0] == step[1] && sides[1] == step[0]))) return false;
        ++count[i];
    }
    for (std::size_t i = 0; i < count.size(); ++i) {
        int need = cls.count[i];
        if (need == 2 && count[i] != 0) return false;
        if (need == 1 && count[i] != 1) return false;
        if (need == 0 && count[i] != 0 && count[i] != 2) return false;
    }
    return true;
}

std::optional<ExtensionCertificate> oracle_extend(const PreparedArrangement& pa, std::uint64_t node_budget) {
    const Planarization& p = pa.map;
    CircleClassification cls = classify(pa);
    std::vector<int> budget(pa.circle_ids.size());
    for (std::size_t i = 0; i < budget.size(); ++i) budget[i] = cls.count[i] == 2 ? 0 : cls.count[i] == 1 ? 1 : 2;

    // Crossable edges around each face, by (color, edge id).
    std::vector<std::vector<std::pair<int, int>>> arcs(p.faces.size());
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
        const HalfEdge& h = p.half_edges[p.edges[e][0]];
        int f = h.face, g = p.half_edges[h.twin].face;
        if (h.color == pa.sigma_color || f == g) continue;
        arcs[f].push_back({h.color, int(e)});
        arcs[g].push_back({h.color, int(e)});
    }
    for (auto& list : arcs) std::sort(list.begin(), list.end());

    std::vector<int> used(pa.circle_ids.size(), 0);
    std::vector<char> visited(p.faces.size(), 0);
    ExtensionCertificate path;
    path.faces.push_back(pa.u_face);
    visited[pa.u_face] = 1;
    std::uint64_t nodes = 0;

    auto done = [&] {
        for (std::size_t i = 0; i < used.size(); ++i) {
            if (cls.count[i] == 1 && used[i] != 1) return false;
            if (cls.count[i] == 0 && used[i] % 2 != 0) return false;
        }
        return true;
    };
    std::function<bool(int)> dfs = [&](int f) {
        if (++nodes > node_budget) throw SearchTimeout(node_budget);
        if (f == pa.v_face && done()) return true;
        for (auto [color, e] : arcs[f]) {
            int i = pa.circle_of_color[color];
            if (used[i] >= budget[i]) continue;
            const HalfEdge& h = p.half_edges[p.edges[e][0]];
            int g = h.face == f ? p.half_edges[h.twin].face : h.face;
            if (visited[g]) continue;
            visited[g] = 1;
            ++used[i];
            path.crossings.push_back({p.colors[color].name, e});
            path.faces.push_back(g);
            if (dfs(g)) return true;
            path.crossings.pop_back();
            path.faces.pop_back();
            --used[i];
            visited[g] = 0;
        }
        return false;
    };
    if (!dfs(pa.u_face)) return std::nullopt;
    return path;
}

namespace {

using Ring = std::vector<std::pair<long, long>>;

// Proper crossings of two orthogonal polygons that share no coordinate.
int ring_crossings(const Ring& a, const Ring& b) {
    int n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [ax0, ay0] = a[i];
        auto [ax1, ay1] = a[(i + 1) % a.size()];
        for (std::size_t j = 0; j < b.size(); ++j) {
            auto [bx0, by0] = b[j];
            auto [bx1, by1] = b[(j + 1) % b.size()];
            if (ay0 == ay1 && bx0 == bx1) {  // a horizontal, b vertical
                n += std::min(ax0, ax1) < bx0 && bx0 < std::max(ax0, ax1) && std::min(by0, by1) < ay0 &&
                     ay0 < std::max(by0, by1);
            } else if (ax0 == ax1 && by0 == by1) {
                n += std::min(bx0, bx1) < ax0 && ax0 < std::max(bx0, bx1) && std::min(ay0, ay1) < by0 &&
                     by0 < std::max(ay0, ay1);
            }
        }
    }
    return n;
}

// Rectangle, L or U shape on the grid values 10k + off (k < 8), in one of
// eight orientations.
Ring random_shape(std::mt19937& rng, long off) {
    std::vector<long> ks = {0, 1, 2, 3, 4, 5, 6, 7};
    std::shuffle(ks.begin(), ks.end(), rng);
    auto g = [&](long k) { return 10 * k + off; };
    int kind = int(rng() % 3);
    std::vector<long> xs(ks.begin(), ks.begin() + (kind == 2 ? 4 : kind == 1 ? 3 : 2));
    std::shuffle(ks.begin(), ks.end(), rng);
    std::vector<long> ys(ks.begin(), ks.begin() + (kind == 0 ? 2 : 3));
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    Ring r;
    if (kind == 0) {
        r = {{xs[0], ys[0]}, {xs[1], ys[0]}, {xs[1], ys[1]}, {xs[0], ys[1]}};
    } else if (kind == 1) {
        r = {{xs[0], ys[0]}, {xs[2], ys[0]}, {xs[2], ys[1]}, {xs[1], ys[1]}, {xs[1], ys[2]}, {xs[0], ys[2]}};
    } else {
        r = {{xs[0], ys[0]}, {xs[3], ys[0]}, {xs[3], ys[2]}, {xs[2], ys[2]},
             {xs[2], ys[1]}, {xs[1], ys[1]}, {xs[1], ys[2]}, {xs[0], ys[2]}};
    }
    bool swap = rng() % 2, fx = rng() % 2, fy = rng() % 2;
    for (auto& [x, y] : r) {
        x = g(x);
        y = g(y);
        if (swap) std::swap(x, y);
        // Mirroring keeps the offset: 70 + 2off - (10k + off) = 10(7 - k) + off.
        if (fx) x = 70 + 2 * off - x;
        if (fy) y = 70 + 2 * off - y;
    }
    return r;
}

}  // namespace

Arrangement random_arrangement(std::mt19937& rng, int max_circles, int max_faces) {
    // Circle i uses grid values 10k + 2i, so no two circles share a
    // coordinate; sigma uses odd values and never runs along a side or
    // through a corner.
    std::uniform_int_distribution<int> count(1, std::max(1, max_circles));
    std::uniform_int_distribution<int> coord(0, 40);
    std::uniform_int_distribution<int> bends(1, 6);
    for (;;) {
        Arrangement a;
        std::vector<Ring> rings;
        int n = max_circles == 0 ? 0 : count(rng);
        for (int i = 0; i < n; ++i) {
            for (int attempt = 0; attempt < 50; ++attempt) {
                Ring r = random_shape(rng, 2 * i);
                bool ok = true;
                for (const Ring& q : rings) {
                    int k = ring_crossings(r, q);
                    ok = ok && (k == 0 || k == 2);
                }
                if (!ok) continue;
                rings.push_back(r);
                break;
            }
        }
        for (std::size_t i = 0; i < rings.size(); ++i) {
            Curve c;
            c.id = "c" + std::to_string(i + 1);
            c.line.closed = true;
            for (auto [x, y] : rings[i]) c.line.points.push_back(Point(x, y));
            a.circles.curves.push_back(std::move(c));
        }
        // Staircase entering from the left of the bounding box.
        long x = -1, y = 2 * coord(rng) + 1;
        a.sigma.points.push_back(Point(x, y));
        int k = bends(rng);
        for (int s = 0; s < k; ++s) {
            long nx = 2 * coord(rng) + 1;
            if (nx == x) break;
            x = nx;
            a.sigma.points.push_back(Point(x, y));
            long ny = 2 * coord(rng) + 1;
            if (ny == y) break;
            y = ny;
            a.sigma.points.push_back(Point(x, y));
        }
        try {
            check_polyline(a.sigma, kSigmaId);
            PreparedArrangement pa = prepare(a);
            if (int(pa.face_count()) > max_faces) continue;
            return a;
        } catch (const std::runtime_error&) {
            continue;
        }
    }
}

namespace {

Curve polygon(const std::string& id, std::vector<std::pair<long, long>> pts) {
    Curve c;
    c.id = id;
    c.line.closed = true;
    for (auto [x, y] : pts) c.line.points.push_back(Point(x, y));
    return c;
}

Polyline path(std::vector<std::pair<long, long>> pts) {
    Polyline l;
    for (auto [x, y] : pts) l.points.push_back(Point(x, y));
    return l;
}

}  // namespace

Arrangement obstruction_two_crossings() {
    // A vertical and a horizontal bar overlap at one corner. Sigma passes
    // through the vertical bar, runs around the free end of the horizontal
    // one, dives through it and stops in the pocket the three enclose.
    Arrangement a;
    a.circles.curves.push_back(polygon("red", {{20, -20}, {30, -20}, {30, 50}, {20, 50}}));
    a.circles.curves.push_back(polygon("blue", {{25, 30}, {80, 30}, {80, 45}, {25, 45}}));
    a.sigma = path({{0, 0}, {90, 0}, {90, 38}, {75, 38}, {75, 20}});
    return a;
}

Arrangement obstruction_one_crossing() {
    // Sigma runs left to right through two small boxes. The red curve crosses
    // sigma once between them and winds around v three times, dipping into
    // the left box above sigma and into the right box below it; its free arcs
    // are nested three deep around v.
    Arrangement a;
    a.circles.curves.push_back(polygon("red", {{50, 10}, {50, -30}, {130, -30}, {130, 30}, {17, 30}, {17, 3},
                                               {23, 3}, {23, 20}, {120, 20}, {120, -20}, {72, -20}, {72, -3},
                                               {78, -3}, {78, -10}, {110, -10}, {110, 10}}));
    a.circles.curves.push_back(polygon("blue", {{15, -5}, {25, -5}, {25, 5}, {15, 5}}));
    a.circles.curves.push_back(polygon("green", {{70, -5}, {80, -5}, {80, 5}, {70, 5}}));
    a.sigma = path({{0, 0}, {100, 0}});
    return a;
}

}  // namespace edgeins
