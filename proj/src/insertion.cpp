#include "edgeins/insertion.h"
#include "edgeins/planarize.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

namespace edgeins {

const char* to_string(Strategy s) {
    switch (s) {
    case Strategy::Oracle: return "oracle";
    case Strategy::Fpt: return "fpt";
    }
    return "?";
}

Planarization remove_elements(const Planarization& p, const std::vector<int>& colors, const std::vector<int>& vertices) {
    const int H = int(p.half_edges.size());
    const int V = int(p.vertices.size());
    const int F = int(p.faces.size());
    std::vector<char> drop_color(p.colors.size(), 0);
    for (int c : colors) drop_color[c] = 1;
    std::vector<char> drop_he(H, 0);
    for (int h = 0; h < H; ++h) drop_he[h] = drop_color[p.half_edges[h].color];

    // Faces separated by a removed edge merge.
    std::vector<int> parent(F);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int h = 0; h < H; ++h) {
        if (drop_he[h]) parent[find(p.half_edges[h].face)] = find(p.half_edges[p.half_edges[h].twin].face);
    }

    std::vector<int> degree(V, 0);
    std::vector<int> last_face(V, -1);
    for (int h = 0; h < H; ++h) {
        int o = p.half_edges[h].origin;
        if (!drop_he[h]) degree[o]++;
        last_face[o] = p.half_edges[h].face;
    }
    std::vector<char> drop_vertex(V, 0);
    for (int v : vertices) drop_vertex[v] = 1;
    // A crossing left with one color becomes an interior point of that color.
    std::vector<char> spliced(V, 0);
    std::vector<Vertex> kinds = p.vertices;
    for (int v = 0; v < V; ++v) {
        // Anchors exist only for their closed curve.
        if (p.vertices[v].kind != VertexKind::Original && degree[v] == 0) drop_vertex[v] = 1;
        if (drop_vertex[v] && degree[v] != 0) {
            throw DrawingError(DrawingErrorKind::MalformedMap, "cannot remove vertex " + p.vertices[v].name + " with edges");
        }
        if (p.vertices[v].kind == VertexKind::Crossing && degree[v] == 2) spliced[v] = 1;
    }

    // Surviving rotation, and the continuation of h through a spliced head.
    std::vector<int> rot(H, -1);
    for (int h = 0; h < H; ++h) {
        if (drop_he[h]) continue;
        int n = p.half_edges[h].next_at_vertex;
        while (drop_he[n]) n = p.half_edges[n].next_at_vertex;
        rot[h] = n;
    }
    auto through = [&](int h) { return rot[p.half_edges[h].twin]; };

    // Closed colors that lost every crossing keep their smallest vertex as anchor.
    std::vector<char> covered(H, 0);
    auto cover_from = [&](int h) {
        for (int x = h;; x = through(x)) {
            covered[x] = 1;
            if (!spliced[p.half_edges[x].head]) break;
        }
    };
    for (int h = 0; h < H; ++h) {
        if (!drop_he[h] && !spliced[p.half_edges[h].origin]) cover_from(h);
    }
    for (int h = 0; h < H; ++h) {
        if (drop_he[h] || covered[h]) continue;
        int best = p.half_edges[h].origin;
        for (int x = through(h); x != h; x = through(x)) best = std::min(best, p.half_edges[x].origin);
        spliced[best] = 0;
        kinds[best] = Vertex{VertexKind::Anchor, p.colors[p.half_edges[h].color].name + ":anchor", p.vertices[best].point};
        for (int x : {h, int(p.half_edges[h].twin)}) {
            int y = x;
            while (p.half_edges[y].origin != best) y = through(y);
            cover_from(y);
        }
        for (int y = 0; y < H; ++y) {
            if (!drop_he[y] && p.half_edges[y].origin == best) cover_from(y);
        }
    }

    // Compact vertex and color ids.
    std::vector<int> new_vertex(V, -1), new_color(p.colors.size(), -1);
    std::vector<Vertex> nv;
    for (int v = 0; v < V; ++v) {
        if (drop_vertex[v] || spliced[v]) continue;
        new_vertex[v] = int(nv.size());
        nv.push_back(kinds[v]);
    }
    std::vector<Color> nc;
    for (std::size_t c = 0; c < p.colors.size(); ++c) {
        if (drop_color[c]) continue;
        new_color[c] = int(nc.size());
        Color col = p.colors[c];
        for (int& e : col.endpoints) {
            if (e >= 0) e = new_vertex[e];
        }
        nc.push_back(col);
    }

    // One new half-edge per chain of old half-edges between kept vertices.
    std::vector<int> chain_of(H, -1);
    std::vector<int> chain_last;
    std::vector<HalfEdge> nh;
    std::vector<int> nh_face;
    auto make_chain = [&](int h) {
        int id = int(nh.size());
        HalfEdge he;
        he.color = new_color[p.half_edges[h].color];
        int x = h;
        while (true) {
            chain_of[x] = id;
            const auto& path = p.half_edges[x].path;
            auto from = path.begin();
            if (!he.path.empty() && from != path.end()) ++from;
            he.path.insert(he.path.end(), from, path.end());
            if (!spliced[p.half_edges[x].head]) break;
            x = through(x);
        }
        he.head = new_vertex[p.half_edges[x].head];
        nh.push_back(std::move(he));
        nh_face.push_back(find(p.half_edges[h].face));
        chain_last.push_back(x);
    };
    for (int h = 0; h < H; ++h) {
        if (drop_he[h] || spliced[p.half_edges[h].origin] || chain_of[h] != -1) continue;
        make_chain(h);
        make_chain(p.half_edges[chain_last.back()].twin);
    }
    for (std::size_t i = 0; i < nh.size(); ++i) {
        // Chains are created in twin pairs.
        nh[i].twin = int(i ^ 1);
    }
    for (int h = 0; h < H; ++h) {
        if (drop_he[h] || spliced[p.half_edges[h].origin]) continue;
        nh[chain_of[h]].next_at_vertex = chain_of[rot[h]];
    }

    // Group cycles and isolated vertices by merged face.
    std::vector<int> group_of_root(F, -1);
    std::vector<Planarization::FaceGroup> groups;
    auto group_for = [&](int root) {
        if (group_of_root[root] == -1) {
            group_of_root[root] = int(groups.size());
            groups.push_back({});
        }
        return group_of_root[root];
    };
    std::vector<int> cyc(nh.size(), -1);
    for (std::size_t h0 = 0; h0 < nh.size(); ++h0) {
        if (cyc[h0] != -1) continue;
        int h = int(h0);
        do {
            cyc[h] = int(h0);
            h = nh[nh[h].twin].next_at_vertex;
        } while (h != int(h0));
        groups[group_for(nh_face[h0])].cycle_members.push_back(int(h0));
    }
    for (int v = 0; v < V; ++v) {
        if (new_vertex[v] == -1) continue;
        int f = p.vertex_face[v];
        if (f == -1 && degree[v] == 0) f = last_face[v];
        if (f == -1) continue;
        groups[group_for(find(f))].isolated.push_back(new_vertex[v]);
    }
    groups[group_for(find(p.outer_face))].outer = true;
    return Planarization::assemble(std::move(nv), std::move(nh), std::move(nc), groups);
}

Planarization kernelize(const Planarization& p, int u, int v, const std::vector<int>& keep) {
    Planarization cur = p;
    std::string u_name = p.vertices.at(u).name, v_name = p.vertices.at(v).name;
    std::set<std::string> kept;
    for (int c : keep) kept.insert(p.colors.at(c).name);
    while (true) {
        std::vector<int> colors;
        for (std::size_t c = 0; c < cur.colors.size(); ++c) {
            const Color& col = cur.colors[c];
            if (col.closed || kept.count(col.name)) continue;
            if (cur.crossing_count(int(c)) == 0) colors.push_back(int(c));
        }
        std::vector<int> degree(cur.vertices.size(), 0);
        std::vector<char> dropped(cur.colors.size(), 0);
        for (int c : colors) dropped[c] = 1;
        for (const HalfEdge& he : cur.half_edges) {
            if (!dropped[he.color]) degree[he.origin]++;
        }
        std::vector<int> vertices;
        for (std::size_t x = 0; x < cur.vertices.size(); ++x) {
            const Vertex& vx = cur.vertices[x];
            if (vx.kind == VertexKind::Original && degree[x] == 0 && vx.name != u_name && vx.name != v_name) {
                vertices.push_back(int(x));
            }
        }
        if (colors.empty() && vertices.empty()) return cur;
        cur = remove_elements(cur, colors, vertices);
    }
}

Witness shortcut_walk(const ColoredDual& d, const Witness& walk) {
    std::vector<int> faces = witness_faces(d, walk);
    Witness out;
    out.start_face = walk.start_face;
    out.end_face = walk.end_face;
    // Keep, for every face, only the part after its last visit.
    std::vector<int> pos(d.node_count, -1);
    std::vector<WitnessStep> steps;
    std::vector<int> path_faces{faces[0]};
    pos[faces[0]] = 0;
    for (std::size_t i = 0; i < walk.steps.size(); ++i) {
        int next = faces[i + 1];
        if (pos[next] != -1) {
            int keep = pos[next];
            for (std::size_t k = keep + 1; k < path_faces.size(); ++k) pos[path_faces[k]] = -1;
            path_faces.resize(keep + 1);
            steps.resize(keep);
            continue;
        }
        steps.push_back(walk.steps[i]);
        pos[next] = int(path_faces.size());
        path_faces.push_back(next);
    }
    out.steps = std::move(steps);
    return out;
}

namespace {

struct Search {
    const ColoredDual& d;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<char> used_color;
    std::vector<char> visited;
    std::vector<char> is_v;
    std::vector<WitnessStep> stack;

    Search(const ColoredDual& dual, std::uint64_t node_budget)
        : d(dual), budget(node_budget), used_color(dual.color_count, 0), visited(dual.node_count, 0),
          is_v(dual.node_count, 0) {
        for (int f : d.v_faces) is_v[f] = 1;
    }

    void tick() {
        if (++nodes > budget) throw SearchTimeout(budget);
    }

    // Face-simple DFS. `emit` returns false to stop the whole search.
    bool dfs(int face, const std::function<bool(int)>& emit) {
        if (is_v[face]) return emit(face);
        for (int id : d.incident[face]) {
            const DualArc& a = *d.arc(id);
            if (used_color[a.color]) continue;
            int next = a.faces[0] == face ? a.faces[1] : a.faces[0];
            if (visited[next]) continue;
            tick();
            used_color[a.color] = 1;
            visited[next] = 1;
            stack.push_back({a.id, a.color});
            bool go_on = dfs(next, emit);
            stack.pop_back();
            visited[next] = 0;
            used_color[a.color] = 0;
            if (!go_on) return false;
        }
        return true;
    }

    // Runs DFS from every u-face; emit receives the start and end face.
    void run(const std::function<bool(int, int)>& emit) {
        for (int s : d.u_faces) {
            visited[s] = 1;
            bool go_on = dfs(s, [&](int end) { return emit(s, end); });
            visited[s] = 0;
            if (!go_on) return;
        }
    }
};

// Walk search with exact failure memo on (face, used colors); colors are
// packed into a 32-bit mask.
struct MemoSearch {
    const ColoredDual& d;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> dense;  // color -> bit
    std::vector<char> is_v;
    std::unordered_set<std::uint64_t> failed;
    std::vector<WitnessStep> stack;

    MemoSearch(const ColoredDual& dual, std::uint64_t node_budget, std::vector<int> bits)
        : d(dual), budget(node_budget), dense(std::move(bits)), is_v(dual.node_count, 0) {
        for (int f : d.v_faces) is_v[f] = 1;
    }

    bool dfs(int face, std::uint32_t mask) {
        if (is_v[face]) return true;
        std::uint64_t key = (std::uint64_t(mask) << 32) | std::uint32_t(face);
        if (failed.count(key)) return false;
        for (int id : d.incident[face]) {
            const DualArc& a = *d.arc(id);
            std::uint32_t bit = 1u << dense[a.color];
            if (mask & bit) continue;
            int next = a.faces[0] == face ? a.faces[1] : a.faces[0];
            if (++nodes > budget) throw SearchTimeout(budget);
            stack.push_back({a.id, a.color});
            if (dfs(next, mask | bit)) return true;
            stack.pop_back();
        }
        failed.insert(key);
        return false;
    }
};

InsertionStats size_stats(const Planarization& p) {
    InsertionStats s;
    s.vertices = p.count_kind(VertexKind::Original);
    s.edges = int(p.colors.size());
    s.crossings = p.total_crossings();
    return s;
}

std::optional<Witness> oracle_search(const ColoredDual& d, std::uint64_t budget, std::uint64_t& nodes) {
    Search s(d, budget);
    std::optional<Witness> found;
    try {
        s.run([&](int start, int end) {
            found = Witness{start, s.stack, end};
            return false;
        });
    } catch (...) {
        nodes = s.nodes;
        throw;
    }
    nodes = s.nodes;
    return found;
}

}  // namespace

InsertionDecision insertable(const Planarization& p, int u, int v, Strategy strategy, const SearchOptions& options) {
    InsertionDecision out;
    if (strategy == Strategy::Oracle) {
        auto searched = std::make_shared<const Planarization>(p);
        ColoredDual d = colored_dual(*searched, u, v, options.blocked_colors);
        std::uint64_t nodes = 0;
        out.witness = oracle_search(d, options.node_budget, nodes);
        out.stats = size_stats(*searched);
        out.stats.nodes_expanded = nodes;
        out.searched = searched;
        out.u = u;
        out.v = v;
        out.yes = out.witness.has_value();
        return out;
    }

    auto kernel = std::make_shared<const Planarization>(kernelize(p, u, v, options.blocked_colors));
    int ku = kernel->find_vertex(p.vertices[u].name);
    int kv = kernel->find_vertex(p.vertices[v].name);
    std::vector<int> blocked;
    for (int c : options.blocked_colors) {
        int kc = kernel->find_color(p.colors[c].name);
        if (kc >= 0) blocked.push_back(kc);
    }
    ColoredDual d = colored_dual(*kernel, ku, kv, blocked);
    out.stats = size_stats(*kernel);
    out.searched = kernel;
    out.u = ku;
    out.v = kv;

    std::vector<int> bits(d.color_count, -1);
    int next_bit = 0;
    for (const DualArc& a : d.arcs) {
        if (bits[a.color] == -1) bits[a.color] = next_bit++;
    }
    if (next_bit > 32) {
        std::uint64_t nodes = 0;
        out.witness = oracle_search(d, options.node_budget, nodes);
        out.stats.nodes_expanded = nodes;
    } else {
        MemoSearch s(d, options.node_budget, bits);
        for (int start : d.u_faces) {
            if (s.dfs(start, 0)) {
                out.witness = shortcut_walk(d, Witness{start, s.stack, 0});
                out.witness->end_face = witness_faces(d, *out.witness).back();
                break;
            }
            s.stack.clear();
        }
        out.stats.nodes_expanded = s.nodes;
    }
    out.yes = out.witness.has_value();
    return out;
}

std::vector<Witness> enumerate_witnesses(const Planarization& p, int u, int v, std::size_t limit,
                                         const SearchOptions& options) {
    ColoredDual d = colored_dual(p, u, v, options.blocked_colors);
    std::vector<Witness> out;
    if (limit == 0) return out;
    Search s(d, options.node_budget);
    s.run([&](int start, int end) {
        out.push_back(Witness{start, s.stack, end});
        return out.size() < limit;
    });
    return out;
}

CurveSet random_drawing(std::mt19937& rng, const RandomDrawingOptions& options) {
    // Plain modulo keeps the stream identical across standard libraries.
    auto pick = [&](int n) { return int(rng() % std::uint32_t(n)); };
    auto half = [&] { return Rational(2 * pick(options.grid) + 1, 2); };
    for (;;) {
        CurveSet cs;
        int n = 1 + pick(options.max_curves);
        for (int i = 0; i < n; ++i) {
            Curve c;
            c.id = "e" + std::to_string(i);
            c.line.closed = options.closed && pick(4) == 0;
            int pts = (c.line.closed ? 3 : 2) + pick(3);
            for (int k = 0; k < pts; ++k) c.line.points.push_back(Point(pick(options.grid + 1), pick(options.grid + 1)));
            cs.curves.push_back(std::move(c));
        }
        cs.isolated.push_back({"u", Point(half(), half())});
        cs.isolated.push_back({"v", Point(half(), half())});
        try {
            for (const Curve& c : cs.curves) check_polyline(c.line, c.id);
            Planarization p = build_planarization(cs);
            if (p.total_crossings() <= options.max_crossings && validate_simple(p).ok()) return cs;
        } catch (const GeomError&) {
        }
    }
}

}  // namespace edgeins
