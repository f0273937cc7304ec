#include "edgeins/io.h"
#include "edgeins/planarize.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace edgeins {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

std::string string_field(const Json& j, const char* key) {
    const Json& s = field(j, key);
    if (!s.is_string()) bad(std::string("field '") + key + "' must be a string");
    return s.get<std::string>();
}

int int_field(const Json& j, const char* key) {
    const Json& s = field(j, key);
    if (!s.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
    return s.get<int>();
}

const Json& array_field(const Json& j, const char* key) {
    const Json& a = field(j, key);
    if (!a.is_array()) bad(std::string("field '") + key + "' must be an array");
    return a;
}

mpz_class integer(const Json& j) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        mpz_class z;
        const std::string s = j.get<std::string>();
        if (s.empty() || z.set_str(s, 10) != 0) bad("bad integer '" + s + "'");
        return z;
    }
    bad("coordinate entries must be integers");
}

Json integer_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());
}

Rational ratio(const mpz_class& n, const mpz_class& d) {
    if (d == 0) bad("zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace

Json point_to_json(const Point& p) {
    if (p.x.get_den() == 1 && p.y.get_den() == 1) {
        return Json::array({integer_to_json(p.x.get_num()), integer_to_json(p.y.get_num())});
    }
    return Json::array({integer_to_json(p.x.get_num()), integer_to_json(p.x.get_den()),
                        integer_to_json(p.y.get_num()), integer_to_json(p.y.get_den())});
}

Point point_from_json(const Json& j) {
    if (!j.is_array()) bad("a point must be an array");
    if (j.size() == 2) return Point(ratio(integer(j[0]), 1), ratio(integer(j[1]), 1));
    if (j.size() == 4) return Point(ratio(integer(j[0]), integer(j[1])), ratio(integer(j[2]), integer(j[3])));
    bad("a point has 2 or 4 entries");
}

namespace {

Json points_to_json(const std::vector<Point>& pts) {
    Json a = Json::array();
    for (const Point& p : pts) a.push_back(point_to_json(p));
    return a;
}

std::vector<Point> points_from_json(const Json& j) {
    if (!j.is_array()) bad("'points' must be an array");
    std::vector<Point> pts;
    for (const Json& p : j) pts.push_back(point_from_json(p));
    return pts;
}

}  // namespace

Json curves_to_json(const CurveSet& cs) {
    Json curves = Json::array();
    for (const Curve& c : cs.curves) {
        curves.push_back({{"id", c.id}, {"closed", c.line.closed}, {"points", points_to_json(c.line.points)}});
    }
    Json isolated = Json::array();
    for (const IsolatedPoint& ip : cs.isolated) isolated.push_back({{"id", ip.id}, {"point", point_to_json(ip.point)}});
    return {{"curves", curves}, {"isolated", isolated}};
}

CurveSet curves_from_json(const Json& j) {
    CurveSet cs;
    for (const Json& c : array_field(j, "curves")) {
        Curve curve;
        curve.id = string_field(c, "id");
        if (auto it = c.find("closed"); it != c.end()) {
            if (!it->is_boolean()) bad("'closed' must be a boolean");
            curve.line.closed = it->get<bool>();
        }
        curve.line.points = points_from_json(field(c, "points"));
        cs.curves.push_back(std::move(curve));
    }
    if (j.contains("isolated")) {
        for (const Json& ip : array_field(j, "isolated")) {
            cs.isolated.push_back({string_field(ip, "id"), point_from_json(field(ip, "point"))});
        }
    }
    return cs;
}

Json planarization_to_json(const Planarization& p) {
    Json vertices = Json::array();
    for (const Vertex& v : p.vertices) vertices.push_back({{"id", v.name}, {"kind", to_string(v.kind)}});
    Json half_edges = Json::array();
    for (std::size_t h = 0; h < p.half_edges.size(); ++h) {
        const HalfEdge& he = p.half_edges[h];
        half_edges.push_back({{"id", int(h)},
                              {"twin", he.twin},
                              {"next_at_vertex", he.next_at_vertex},
                              {"head", p.vertices[he.head].name},
                              {"color", p.colors[he.color].name}});
    }
    Json colors = Json::array();
    for (const Color& c : p.colors) {
        if (c.closed) {
            colors.push_back({{"id", c.name}, {"closed", true}});
        } else {
            colors.push_back({{"id", c.name},
                              {"endpoints", {p.vertices[c.endpoints[0]].name, p.vertices[c.endpoints[1]].name}}});
        }
    }
    const Face& outer = p.faces[p.outer_face];
    Json hint = outer.cycles.empty() ? Json(nullptr) : Json(outer.cycles.front());
    return {{"vertices", vertices}, {"half_edges", half_edges}, {"colors", colors}, {"outer_face_hint", hint}};
}

Planarization planarization_from_json(const Json& j) {
    std::vector<Vertex> vertices;
    std::map<std::string, int> vertex_id;
    for (const Json& v : array_field(j, "vertices")) {
        Vertex vx;
        vx.name = string_field(v, "id");
        std::string kind = string_field(v, "kind");
        if (kind == "original") vx.kind = VertexKind::Original;
        else if (kind == "crossing") vx.kind = VertexKind::Crossing;
        else if (kind == "anchor") vx.kind = VertexKind::Anchor;
        else bad("unknown vertex kind '" + kind + "'");
        if (!vertex_id.emplace(vx.name, int(vertices.size())).second) bad("duplicate vertex id '" + vx.name + "'");
        vertices.push_back(std::move(vx));
    }
    auto vertex = [&](const std::string& name) {
        auto it = vertex_id.find(name);
        if (it == vertex_id.end()) bad("unknown vertex '" + name + "'");
        return it->second;
    };

    std::vector<Color> colors;
    std::map<std::string, int> color_id;
    for (const Json& c : array_field(j, "colors")) {
        Color col;
        col.name = string_field(c, "id");
        if (c.contains("closed") && field(c, "closed") == Json(true)) {
            col.closed = true;
        } else {
            const Json& ends = array_field(c, "endpoints");
            if (ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string()) bad("'endpoints' must name two vertices");
            col.endpoints = {vertex(ends[0].get<std::string>()), vertex(ends[1].get<std::string>())};
        }
        if (!color_id.emplace(col.name, int(colors.size())).second) bad("duplicate color id '" + col.name + "'");
        colors.push_back(std::move(col));
    }

    const Json& hes = array_field(j, "half_edges");
    const int H = int(hes.size());
    std::vector<HalfEdge> half_edges(H);
    std::vector<char> seen(H, 0);
    auto index = [&](int h) {
        if (h < 0 || h >= H) bad("half-edge id " + std::to_string(h) + " out of range");
        return h;
    };
    for (const Json& h : hes) {
        int id = index(int_field(h, "id"));
        if (seen[id]) bad("duplicate half-edge id " + std::to_string(id));
        seen[id] = 1;
        HalfEdge& he = half_edges[id];
        he.twin = index(int_field(h, "twin"));
        he.next_at_vertex = index(int_field(h, "next_at_vertex"));
        he.head = vertex(string_field(h, "head"));
        auto it = color_id.find(string_field(h, "color"));
        if (it == color_id.end()) bad("unknown color '" + string_field(h, "color") + "'");
        he.color = it->second;
    }
    check_map_laws(vertices, half_edges);

    // Connectivity, counting vertices without half-edges as components.
    const int V = int(vertices.size());
    std::vector<int> comp(V);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (const HalfEdge& he : half_edges) comp[find(he.head)] = find(half_edges[he.twin].head);
    int components = 0;
    for (int v = 0; v < V; ++v) components += find(v) == v;
    if (components > 1) throw DrawingError(DrawingErrorKind::NotConnected, "combinatorial input must be connected");

    std::vector<Planarization::FaceGroup> groups;
    if (H == 0) {
        Planarization::FaceGroup g;
        g.outer = true;
        for (int v = 0; v < V; ++v) g.isolated.push_back(v);
        groups.push_back(g);
    } else {
        const Json& hint = field(j, "outer_face_hint");
        if (!hint.is_number_integer()) bad("'outer_face_hint' must be a half-edge id");
        int outer = index(hint.get<int>());
        std::vector<int> rep(H, -1);
        for (int h0 = 0; h0 < H; ++h0) {
            if (rep[h0] != -1) continue;
            Planarization::FaceGroup g;
            g.cycle_members = {h0};
            int h = h0;
            do {
                rep[h] = h0;
                g.outer = g.outer || h == outer;
                h = half_edges[half_edges[h].twin].next_at_vertex;
            } while (h != h0);
            groups.push_back(g);
        }
        int E = H / 2;
        if (V - E + int(groups.size()) != 2) {
            throw DrawingError(DrawingErrorKind::MalformedMap, "rotation system is not planar");
        }
    }
    return Planarization::assemble(std::move(vertices), std::move(half_edges), std::move(colors), groups);
}

LoadedDrawing drawing_from_json(const Json& j) {
    if (j.is_object() && j.contains("curves")) {
        LoadedDrawing d;
        d.curves = curves_from_json(j);
        for (const Curve& c : d.curves->curves) check_polyline(c.line, c.id);
        d.map = build_planarization(*d.curves);
        return d;
    }
    if (j.is_object() && j.contains("half_edges")) return {planarization_from_json(j), std::nullopt};
    bad("drawing needs 'curves' or 'half_edges'");
}

Json report_to_json(const Planarization& p, const ValidationReport& r) {
    auto color = [&](int c) { return c < 0 ? Json(nullptr) : Json(p.colors[c].name); };
    Json violations = Json::array();
    for (const Violation& v : r.violations) {
        violations.push_back({{"kind", to_string(v.kind)},
                              {"color_a", color(v.color_a)},
                              {"color_b", color(v.color_b)},
                              {"vertex", v.vertex < 0 ? Json(nullptr) : Json(p.vertices[v.vertex].name)},
                              {"detail", v.detail}});
    }
    return {{"simple", r.ok()},
            {"vertices", p.count_kind(VertexKind::Original)},
            {"edges", p.colors.size()},
            {"crossings", p.total_crossings()},
            {"faces", p.faces.size()},
            {"violations", violations}};
}

Json decision_to_json(const InsertionDecision& d) {
    Json j = {{"answer", d.yes ? "yes" : "no"}};
    if (d.witness) {
        const Planarization& q = *d.searched;
        Json steps = Json::array();
        for (const WitnessStep& s : d.witness->steps) steps.push_back({{"arc", s.arc}, {"color", q.colors[s.color].name}});
        j["witness"] = {{"start_face", d.witness->start_face}, {"steps", steps}, {"end_face", d.witness->end_face}};
    } else {
        j["witness"] = nullptr;
    }
    j["stats"] = {{"nodes_expanded", d.stats.nodes_expanded},
                  {"vertices", d.stats.vertices},
                  {"edges", d.stats.edges},
                  {"crossings", d.stats.crossings}};
    return j;
}

Json arrangement_to_json(const Arrangement& a) {
    Json circles = Json::array();
    for (const Curve& c : a.circles.curves) circles.push_back({{"id", c.id}, {"points", points_to_json(c.line.points)}});
    const auto& pts = a.sigma.points;
    std::vector<Point> bends(pts.begin() + 1, pts.end() - 1);
    return {{"circles", circles},
            {"sigma", {{"u_point", point_to_json(pts.front())},
                       {"v_point", point_to_json(pts.back())},
                       {"points", points_to_json(bends)}}}};
}

Arrangement arrangement_from_json(const Json& j) {
    Arrangement a;
    for (const Json& c : array_field(j, "circles")) {
        Curve curve;
        curve.id = string_field(c, "id");
        curve.line.closed = true;
        curve.line.points = points_from_json(field(c, "points"));
        a.circles.curves.push_back(std::move(curve));
    }
    const Json& sigma = field(j, "sigma");
    a.sigma.points.push_back(point_from_json(field(sigma, "u_point")));
    if (sigma.contains("points")) {
        for (Point& q : points_from_json(field(sigma, "points"))) a.sigma.points.push_back(std::move(q));
    }
    a.sigma.points.push_back(point_from_json(field(sigma, "v_point")));
    return a;
}

Json certificate_to_json(const std::optional<ExtensionCertificate>& c) {
    Json crossings = Json::array();
    Json faces = Json::array();
    if (c) {
        for (const CertificateCrossing& x : c->crossings) crossings.push_back({{"circle", x.circle}, {"edge", x.edge}});
        for (int f : c->faces) faces.push_back(f);
    }
    return {{"answer", c ? "yes" : "no"},
            {"side", to_string(c ? c->side : ExtensionCertificate::Side::None)},
            {"crossings", crossings},
            {"faces", faces}};
}

std::optional<ExtensionCertificate> certificate_from_json(const Json& j) {
    std::string answer = string_field(j, "answer");
    if (answer == "no") return std::nullopt;
    if (answer != "yes") bad("'answer' must be \"yes\" or \"no\"");
    ExtensionCertificate c;
    std::string side = string_field(j, "side");
    if (side == "left") c.side = ExtensionCertificate::Side::Left;
    else if (side == "right") c.side = ExtensionCertificate::Side::Right;
    else if (side == "none") c.side = ExtensionCertificate::Side::None;
    else bad("unknown side '" + side + "'");
    for (const Json& x : array_field(j, "crossings")) c.crossings.push_back({string_field(x, "circle"), int_field(x, "edge")});
    for (const Json& f : array_field(j, "faces")) {
        if (!f.is_number_integer()) bad("face ids must be integers");
        c.faces.push_back(f.get<int>());
    }
    return c;
}

Json sidecar_to_json(const ReductionInstance& inst) {
    auto slot_name = [](const Slot& s) {
        switch (s.kind) {
        case Slot::Kind::Pos: return "x" + std::to_string(s.var);
        case Slot::Kind::Neg: return "-x" + std::to_string(s.var);
        case Slot::Kind::False: break;
        }
        return std::string("false");
    };
    Json clauses = Json::array();
    for (const TransformedClause& c : inst.formula.clauses) {
        Json slots = Json::array();
        for (const Slot& s : c.slots) slots.push_back(slot_name(s));
        clauses.push_back({{"type", to_string(c.type)}, {"slots", slots}});
    }
    Json literal_map = Json::array();
    for (const LiteralArc& l : inst.literal_map) {
        literal_map.push_back({{"clause", l.clause}, {"slot", l.slot}, {"color", l.color}});
    }
    Json gadgets = Json::array();
    for (const VariableGadget& g : inst.variables) {
        gadgets.push_back({{"kind", "variable"}, {"variable", g.variable}, {"p_arcs", g.p_arcs}, {"n_arcs", g.n_arcs}});
    }
    for (const ClauseGadget& g : inst.clauses) {
        gadgets.push_back({{"kind", "clause"},
                           {"clause", g.clause},
                           {"type", to_string(g.type)},
                           {"gamma", {g.gamma_a, g.gamma_b, g.gamma_c}},
                           {"dg", g.dg},
                           {"layer", g.layer}});
    }
    return {{"u", inst.u},
            {"v", inst.v},
            {"num_vars", inst.formula.num_vars},
            {"clauses", clauses},
            {"literal_map", literal_map},
            {"frame", {{"arcs", inst.frame}, {"r1", inst.r1}, {"r2", inst.r2}, {"l1", inst.l1}, {"l2", inst.l2}}},
            {"gadgets", gadgets}};
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

namespace {

std::string dot_face(const Planarization& p, int f) {
    std::string attrs = p.faces[f].outer ? " [shape=doublecircle]" : "";
    return "  " + std::to_string(f) + attrs + ";\n";
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string dual_to_dot(const Planarization& p, const ColoredDual& d) {
    std::string out = "graph dual {\n";
    for (int f = 0; f < d.node_count; ++f) out += dot_face(p, f);
    for (const DualArc& a : d.arcs) {
        out += "  " + std::to_string(a.faces[0]) + " -- " + std::to_string(a.faces[1]) +
               " [label=" + quoted(p.colors[a.color].name) + "];\n";
    }
    return out + "}\n";
}

std::string planarization_to_dot(const Planarization& p) {
    std::string out = "graph planarization {\n";
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
        std::string shape = p.vertices[v].kind == VertexKind::Crossing ? "point" : "circle";
        out += "  " + quoted(p.vertices[v].name) + " [shape=" + shape + "];\n";
    }
    for (const auto& e : p.edges) {
        const HalfEdge& h = p.half_edges[e[0]];
        out += "  " + quoted(p.vertices[h.origin].name) + " -- " + quoted(p.vertices[h.head].name) +
               " [label=" + quoted(p.colors[h.color].name) + "];\n";
    }
    return out + "}\n";
}

std::string curves_to_svg(const CurveSet& cs) {
    constexpr double size = 800, margin = 20;
    std::vector<const Point*> all;
    for (const Curve& c : cs.curves)
        for (const Point& q : c.line.points) all.push_back(&q);
    for (const IsolatedPoint& ip : cs.isolated) all.push_back(&ip.point);
    Rational x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!all.empty()) {
        x0 = x1 = all.front()->x;
        y0 = y1 = all.front()->y;
        for (const Point* q : all) {
            x0 = std::min(x0, q->x), x1 = std::max(x1, q->x);
            y0 = std::min(y0, q->y), y1 = std::max(y1, q->y);
        }
    }
    Rational span = std::max(x1 - x0, y1 - y0);
    if (span == 0) span = 1;
    const double scale = (size - 2 * margin) / span.get_d();
    char buf[64];
    auto coord = [&](const Point& q) {
        double x = margin + Rational(q.x - x0).get_d() * scale;
        double y = size - margin - Rational(q.y - y0).get_d() * scale;
        std::snprintf(buf, sizeof buf, "%.2f,%.2f", x, y);
        return std::string(buf);
    };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    for (std::size_t i = 0; i < cs.curves.size(); ++i) {
        const Curve& c = cs.curves[i];
        out += std::string("  <") + (c.line.closed ? "polygon" : "polyline") + " id=" + quoted(c.id) + " points=\"";
        for (std::size_t k = 0; k < c.line.points.size(); ++k) out += (k ? " " : "") + coord(c.line.points[k]);
        out += std::string("\" fill=\"none\" stroke=\"") + palette[i % 8] + "\" stroke-width=\"2\"/>\n";
    }
    for (const IsolatedPoint& ip : cs.isolated) {
        std::string at = coord(ip.point);
        std::string x = at.substr(0, at.find(',')), y = at.substr(at.find(',') + 1);
        out += "  <circle cx=\"" + x + "\" cy=\"" + y + "\" r=\"4\" fill=\"black\"/>\n";
        out += "  <text x=\"" + x + "\" y=\"" + y + "\" dx=\"6\" font-size=\"14\">" + ip.id + "</text>\n";
    }
    return out + "</svg>\n";
}

}  // namespace edgeins
