#include "edgeins/reduction.h"

#include "edgeins/planarize.h"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace edgeins {

namespace {

using Pts = std::vector<std::pair<long, long>>;

struct SnailArc {
    const char* id;
    Pts points;
};

// Each arc runs between two stubs through its four crossings. The B2 cell is
// unbounded; the stubs of a1 and b3 at the b2 side poke into it.
const SnailArc kSnail[] = {
    {"a1", {{-99, 32}, {-95, 31}, {-35, 24}, {-9, 43}, {0, 62}, {4, 63}}},
    {"a2", {{8, 39}, {9, 43}, {0, 62}, {0, 100}, {95, 31}, {92, 28}}},
    {"a3", {{-12, 46}, {-9, 43}, {9, 43}, {35, 24}, {0, -2}, {-4, -4}}},
    {"b1", {{31, 24}, {35, 24}, {95, 31}, {59, -81}, {0, -55}, {-3, -53}}},
    {"b2", {{2, 96}, {0, 100}, {-95, 31}, {-59, -81}, {59, -81}, {57, -77}}},
    {"b3", {{-61, -84}, {-59, -81}, {0, -55}, {0, -2}, {-35, 24}, {-36, 28}}},
};

const std::pair<const char*, std::pair<long, long>> kCells[] = {
    {"X", {0, 50}},   {"Y", {0, -70}},  {"A1", {-30, 50}}, {"A2", {20, 70}},
    {"A3", {0, 20}},  {"B1", {40, -20}}, {"B2", {0, 120}}, {"B3", {-40, 0}},
};

void check_bound(long x, long y) {
    if (std::labs(x) > kMaxCoordinate || std::labs(y) > kMaxCoordinate) {
        throw LayoutOverflow("coordinate (" + std::to_string(x) + ", " + std::to_string(y) + ") exceeds " +
                             std::to_string(kMaxCoordinate));
    }
}

Polyline make_line(const Pts& pts, bool closed = false) {
    Polyline line;
    line.closed = closed;
    for (auto [x, y] : pts) {
        check_bound(x, y);
        line.points.push_back(Point(x, y));
    }
    return line;
}

void add_curve(CurveSet& cs, const std::string& id, const Pts& pts, bool closed = false) {
    cs.curves.push_back({id, make_line(pts, closed)});
}

void add_point(CurveSet& cs, const std::string& id, long x, long y) {
    check_bound(x, y);
    cs.isolated.push_back({id, Point(x, y)});
}

// Which gamma a slot feeds, and on which side of the ring its wall lies.
struct GammaSlot {
    char gamma;     // 'a', 'b' or 'c'
    bool right;     // attached on the l-side (right) rather than the r-side
};

GammaSlot gamma_of(ClauseType type, int slot) {
    switch (type) {
    case ClauseType::I: return {"abc"[slot], slot != 2};
    case ClauseType::II: return {"cab"[slot], slot != 0};
    case ClauseType::III: return {"cab"[slot], slot == 0};
    case ClauseType::IV: return {"abc"[slot], slot == 2};
    }
    return {'a', true};
}

long gamma_offset(char gamma) { return gamma == 'a' ? 2 : gamma == 'c' ? 4 : 6; }

struct Connector {
    long ring;       // ring rank of the clause arc
    long inner;      // height on the inner wall (l1 or r1)
    long outer = 0;  // height on the outer wall (l2 or r2), filled in later
};

// Straight connectors inside a lens from x0 (inner wall side) to x1. Picks
// outer heights base(ring) + delta, delta < q, so that no three connectors
// meet in one point.
void place_connectors(std::vector<Connector*>& cons, long x0, long x1, long yatt0, long q) {
    struct Seg {
        Point a, b;
    };
    std::vector<Seg> placed;
    for (Connector* c : cons) {
        long base = yatt0 + q * c->ring;
        for (long delta = 0;; ++delta) {
            if (delta == q) throw LayoutOverflow("no generic connector height");
            Seg s{Point(x0, c->inner), Point(x1, base + delta)};
            bool bad = false;
            for (std::size_t i = 0; i < placed.size() && !bad; ++i) {
                for (std::size_t j = i + 1; j < placed.size() && !bad; ++j) {
                    auto hit = segment_intersection({placed[i].a, placed[i].b}, {placed[j].a, placed[j].b});
                    if (auto* pc = std::get_if<ProperCrossing>(&hit)) bad = on_segment({s.a, s.b}, pc->at);
                }
            }
            if (!bad) {
                c->outer = base + delta;
                placed.push_back(s);
                break;
            }
        }
    }
}

// Geometry shared by build_instance and build_frame. With gadgets == false the
// formula only determines the frame size.
ReductionInstance layout(const TransformedFormula& tf, int m1, int m4, bool gadgets) {
    ReductionInstance inst;
    inst.formula = tf;
    const int K = m1 + m4 + 4;
    const long S = K + 1;
    inst.snail_scale = S;

    SnailTemplate snail = build_snail(S);
    inst.drawing = snail.curves;
    for (const auto& [name, pt] : snail.cells) inst.regions[name] = pt;

    // Rings around v: 0 is innermost. Type I rings first, then II, III, IV.
    int count[4] = {0, 0, 0, 0};
    std::vector<int> jprime(gadgets ? tf.clauses.size() : 0);
    for (std::size_t j = 0; j < jprime.size(); ++j) jprime[j] = ++count[int(tf.clauses[j].type)];
    if (!gadgets) {
        count[0] = m1;
        count[3] = m4;
    }
    auto ring_of = [&](ClauseType t, int jp) -> long {
        switch (t) {
        case ClauseType::I: return count[0] - jp;
        case ClauseType::II: return count[0] + jp - 1;
        case ClauseType::III: return count[0] + count[1] + jp - 1;
        case ClauseType::IV: return count[0] + count[1] + count[2] + jp - 1;
        }
        return 0;
    };
    const long rings = count[0] + count[1] + count[2] + count[3];

    // Literal occurrences per variable.
    std::vector<std::vector<std::pair<int, int>>> pos(tf.num_vars + 1), neg(tf.num_vars + 1);
    if (gadgets) {
        for (std::size_t j = 0; j < tf.clauses.size(); ++j) {
            for (int s = 0; s < 3; ++s) {
                const Slot& sl = tf.clauses[j].slots[s];
                if (sl.kind == Slot::Kind::Pos) pos[sl.var].push_back({int(j), s});
                if (sl.kind == Slot::Kind::Neg) neg[sl.var].push_back({int(j), s});
            }
        }
    }
    long widest = 0;
    for (int i = 1; i <= tf.num_vars; ++i) widest = std::max<long>(widest, std::max(pos[i].size(), neg[i].size()));

    // Lower frame: the channel between r1 and l1 is centered at x = 0, lenses
    // of width 4 on both sides, rings below y = -2.
    const long W = widest + 2;
    const long xr1 = -W, xl1 = W, xr2 = -W - 4, xl2 = W + 4;
    const long XL0 = xr2 - 2, XR0 = xl2 + 2;
    const long ybot0 = -11, yatt0 = 4;

    // Variable bands, gadget 1 on top.
    std::vector<long> band(tf.num_vars + 1, 0);
    long y = 4;
    for (int i = tf.num_vars; i >= 1; --i) {
        if (pos[i].empty() && neg[i].empty()) continue;
        band[i] = y;
        y += long(std::max(pos[i].size(), neg[i].size())) + 2;
    }
    const long band_top = y;

    // Connectors through the lenses.
    std::map<std::pair<int, int>, Connector> conn;
    std::vector<Connector*> left_lens, right_lens;
    for (int i = 1; i <= tf.num_vars; ++i) {
        for (std::size_t k = 0; k < pos[i].size(); ++k) {
            auto [j, s] = pos[i][k];
            Connector& c = conn[{j, s}];
            c.ring = 8 * ring_of(tf.clauses[j].type, jprime[j]) + gamma_offset(gamma_of(tf.clauses[j].type, s).gamma);
            c.inner = band[i] + long(k) + 1;
            right_lens.push_back(&c);
        }
        for (std::size_t k = 0; k < neg[i].size(); ++k) {
            auto [j, s] = neg[i][k];
            Connector& c = conn[{j, s}];
            c.ring = 8 * ring_of(tf.clauses[j].type, jprime[j]) + gamma_offset(gamma_of(tf.clauses[j].type, s).gamma);
            c.inner = band[i] + long(k) + 1;
            left_lens.push_back(&c);
        }
    }
    auto by_ring = [](const Connector* a, const Connector* b) { return a->ring < b->ring; };
    std::sort(left_lens.begin(), left_lens.end(), by_ring);
    std::sort(right_lens.begin(), right_lens.end(), by_ring);
    long n = long(std::max(left_lens.size(), right_lens.size()));
    const long Q = n * (n - 1) / 2 + 1;
    place_connectors(right_lens, xl1 + 1, xl2 - 1, yatt0, Q);
    place_connectors(left_lens, xr1 - 1, xr2 + 1, yatt0, Q);

    const long att_top = yatt0 + Q * (8 * rings + 8);
    const long ytop = std::max(att_top, band_top) + 4;
    // Shift the lower frame below the snail.
    const long oy = -90 * S - 10 - ytop;
    auto P = [&](long px, long py) { return std::pair<long, long>{px, py + oy}; };

    // Frame arcs.
    auto ribbon = [&](int s) {
        long t = s + 1;
        return Pts{{4 * S, 87 * S - 20 * t}, {-10 * S, 87 * S - 20 * t}, {-85 * S + 30 * t, 10 * S},
                   {-40 * S + 40 * t, -75 * S}, {-40 * S + 40 * t, -90 * S}};
    };
    auto arm_bottom = [&](long ring) { return ybot0 + 8 - ring; };
    for (int s = 0; s < K; ++s) {
        std::string id = "f" + std::to_string(s + 1);
        inst.frame.push_back(id);
        Pts pts = ribbon(s);
        if (s < m1) {
            long ring = 8 * ring_of(ClauseType::I, s + 1) + 4;
            long x = XL0 - ring;
            for (auto q : {P(x, ytop), P(x, arm_bottom(ring)), P(2, arm_bottom(ring))}) pts.push_back(q);
        } else if (s >= m1 + 4) {
            long ring = 8 * ring_of(ClauseType::IV, s - m1 - 3) + 4;
            long x = XR0 + ring;
            for (auto q : {P(x, ytop), P(x, arm_bottom(ring)), P(-2, arm_bottom(ring))}) pts.push_back(q);
        } else {
            long x[4] = {xr2, xr1, xl1, xl2};
            long other[4] = {xr1, xr2, xl2, xl1};
            int w = s - m1;
            for (auto q : {P(x[w], ytop), P(x[w], 2), P(other[w], -2)}) pts.push_back(q);
        }
        add_curve(inst.drawing, id, pts);
    }
    inst.r2 = inst.frame[m1];
    inst.r1 = inst.frame[m1 + 1];
    inst.l1 = inst.frame[m1 + 2];
    inst.l2 = inst.frame[m1 + 3];
    inst.kappa_f = make_line({{4 * S, 66 * S}, {4 * S, 88 * S}});
    inst.lines["r1"] = make_line({P(xr1, ytop), P(xr1, 2)});
    inst.lines["r2"] = make_line({P(xr2, ytop), P(xr2, 2)});
    inst.lines["l1"] = make_line({P(xl1, ytop), P(xl1, 2)});
    inst.lines["l2"] = make_line({P(xl2, ytop), P(xl2, 2)});

    // Variable gadgets: N arcs start left of center and cross l1, P arcs start
    // right of center and cross r1, so every P arc crosses every N arc.
    auto lit_name = [](int j, int s) { return "lit" + std::to_string(j + 1) + "." + std::to_string(s); };
    std::map<std::pair<int, int>, Pts> lit;
    for (int i = 1; i <= tf.num_vars; ++i) {
        if (pos[i].empty() && neg[i].empty()) continue;
        VariableGadget g;
        g.variable = i;
        long yk = band[i];
        for (std::size_t k = 0; k < pos[i].size(); ++k) {
            auto key = pos[i][k];
            long kk = long(k) + 1;
            lit[key] = {P(-kk, yk), P(xl1 + 1, yk + kk)};
            g.n_arcs.push_back(lit_name(key.first, key.second));
        }
        for (std::size_t k = 0; k < neg[i].size(); ++k) {
            auto key = neg[i][k];
            long kk = long(k) + 1;
            lit[key] = {P(kk, yk), P(xr1 - 1, yk + kk)};
            g.p_arcs.push_back(lit_name(key.first, key.second));
        }
        g.kappa = make_line({P(-long(pos[i].size()) - 1, yk), P(long(neg[i].size()) + 1, yk)});
        inst.variables.push_back(std::move(g));
    }

    // Clause rings. An arc from the right wall runs out to x = XR0 + ring, down
    // to its ring height and left to x = -2; arcs from the left mirror this.
    for (std::size_t j = 0; j < jprime.size(); ++j) {
        const TransformedClause& c = tf.clauses[j];
        ClauseGadget g;
        g.clause = int(j);
        g.type = c.type;
        g.layer = int(ring_of(c.type, jprime[j]));
        g.dg = "dg" + std::to_string(j + 1);
        for (int s = 0; s < 3; ++s) {
            GammaSlot gs = gamma_of(c.type, s);
            std::string color;
            if (c.slots[s].kind == Slot::Kind::False) {
                color = c.type == ClauseType::I ? inst.frame[jprime[j] - 1] : inst.frame[m1 + 3 + jprime[j]];
            } else {
                color = lit_name(int(j), s);
                const Connector& cn = conn.at({int(j), s});
                Pts& pts = lit.at({int(j), s});
                long h = cn.outer, yb = arm_bottom(cn.ring);
                if (gs.right) {
                    for (auto q : {P(xl2 - 1, h), P(XR0 + cn.ring, h), P(XR0 + cn.ring, yb), P(-2, yb)}) pts.push_back(q);
                } else {
                    for (auto q : {P(xr2 + 1, h), P(XL0 - cn.ring, h), P(XL0 - cn.ring, yb), P(2, yb)}) pts.push_back(q);
                }
                add_curve(inst.drawing, color, pts);
            }
            inst.literal_map.push_back({int(j), s, color});
            (gs.gamma == 'a' ? g.gamma_a : gs.gamma == 'b' ? g.gamma_b : g.gamma_c) = color;
        }
        long base = ybot0 - 8 * g.layer;
        add_curve(inst.drawing, g.dg, {P(0, base + 7), P(0, base + 1)});
        inst.clauses.push_back(std::move(g));
    }

    add_point(inst.drawing, inst.u, 0, 50 * S);
    add_point(inst.drawing, inst.v, 0, ytop - 2 + oy);
    auto pt = [&](std::pair<long, long> q) { return Point(q.first, q.second); };
    inst.regions["R"] = pt(P(0, ytop - 2));
    inst.regions["R_l"] = pt(P(W + 2, 3));
    inst.regions["R_r"] = pt(P(-W - 2, 3));
    return inst;
}

}  // namespace

SnailTemplate build_snail(long scale) {
    SnailTemplate t;
    t.scale = scale;
    for (const SnailArc& arc : kSnail) {
        Pts pts = arc.points;
        for (auto& [x, y] : pts) x *= scale, y *= scale;
        add_curve(t.curves, arc.id, pts);
    }
    for (const auto& [name, q] : kCells) t.cells[name] = Point(q.first * scale, q.second * scale);
    t.b2_star = make_line({{0, 100 * scale}, {-95 * scale, 31 * scale}, {-59 * scale, -81 * scale}});
    return t;
}

ReductionInstance build_instance(const CnfFormula& f) {
    TransformedFormula tf = transform_formula(f);
    int m1 = 0, m4 = 0;
    for (const auto& c : tf.clauses) {
        m1 += c.type == ClauseType::I;
        m4 += c.type == ClauseType::IV;
    }
    return layout(tf, m1, m4, true);
}

ReductionInstance build_frame(int m_type1, int m_type4) {
    if (m_type1 < 0 || m_type4 < 0) throw std::invalid_argument("negative clause count");
    return layout({}, m_type1, m_type4, false);
}

std::vector<std::string> check_instance(const ReductionInstance& inst) {
    std::vector<std::string> problems;
    Planarization p;
    try {
        PlanarizeOptions opt;
        opt.simple_drawing = true;
        p = build_planarization(inst.drawing, opt);
    } catch (const std::exception& e) {
        problems.push_back(std::string("planarization failed: ") + e.what());
        return problems;
    }
    for (const Violation& v : validate_simple(p).violations) {
        problems.push_back(std::string("not simple: ") + to_string(v.kind) + " " + v.detail);
    }

    int m1 = 0, m4 = 0;
    for (const auto& c : inst.formula.clauses) {
        m1 += c.type == ClauseType::I;
        m4 += c.type == ClauseType::IV;
    }
    if (!inst.formula.clauses.empty() && int(inst.frame.size()) != m1 + m4 + 4) {
        problems.push_back("frame has " + std::to_string(inst.frame.size()) + " arcs, expected " +
                           std::to_string(m1 + m4 + 4));
    }

    // Matching: u and v isolated, every other vertex an endpoint of one arc.
    for (std::size_t x = 0; x < p.vertices.size(); ++x) {
        if (p.vertices[x].kind != VertexKind::Original) continue;
        std::size_t deg = p.outgoing(int(x)).size();
        bool terminal = p.vertices[x].name == inst.u || p.vertices[x].name == inst.v;
        if (terminal ? deg != 0 : deg > 1) problems.push_back("vertex " + p.vertices[x].name + " breaks the matching");
    }

    auto names = [&](const std::vector<int>& seq) {
        std::vector<std::string> out;
        for (int c : seq) out.push_back(p.colors[c].name);
        return out;
    };
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
        return s;
    };
    std::vector<std::string> want = {"a2", "a1", "b3"};
    want.insert(want.end(), inst.frame.begin(), inst.frame.end());
    want.push_back("b1");
    auto got = names(crossing_sequence(p, p.find_color("b2")));
    if (got != want) problems.push_back("b2 crosses " + join(got) + ", expected " + join(want));

    const std::set<std::string> snail = {"a1", "a2", "a3", "b1", "b2", "b3"};
    const std::set<std::string> frame(inst.frame.begin(), inst.frame.end());
    for (const std::string& f : inst.frame) {
        int c = p.find_color(f);
        std::vector<std::string> hit;
        for (const auto& n : names(crossing_sequence(p, c))) {
            if (snail.count(n)) hit.push_back(n);
        }
        if (hit != std::vector<std::string>{"a2", "a1", "b3", "b2"}) {
            problems.push_back(f + " crosses snail arcs " + join(hit));
        }
        auto curve = std::find_if(inst.drawing.curves.begin(), inst.drawing.curves.end(),
                                  [&](const Curve& cv) { return cv.id == f; });
        if (curve->line.points.front().x != inst.kappa_f.points.front().x) {
            problems.push_back(f + " does not start on kappa_F");
        }
    }

    // Frame-internal crossings: exactly r1 x r2 and l1 x l2, both in B2.
    SnailTemplate st = build_snail(inst.snail_scale);
    Planarization sp = build_planarization(st.curves);
    int b2_face = locate(sp, st.cells.at("B2"));
    std::set<std::pair<std::string, std::string>> internal;
    for (std::size_t x = 0; x < p.vertices.size(); ++x) {
        if (p.vertices[x].kind != VertexKind::Crossing) continue;
        auto out = p.outgoing(int(x));
        std::string a = p.colors[p.half_edges[out[0]].color].name, b = p.colors[p.half_edges[out[1]].color].name;
        if (!frame.count(a) || !frame.count(b)) continue;
        internal.insert(std::minmax(a, b));
        if (locate(sp, *p.vertices[x].point) != b2_face) problems.push_back(a + " x " + b + " lies outside B2");
    }
    std::set<std::pair<std::string, std::string>> expect = {std::minmax(inst.r1, inst.r2), std::minmax(inst.l1, inst.l2)};
    if (internal != expect) problems.push_back("unexpected crossings inside the frame");
    return problems;
}

CurveSet standalone_variable_gadget(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("negative arc count");
    CurveSet cs;
    long W = std::max(p, q) + 2, H = std::max(p, q) + 3;
    add_curve(cs, "frame", {{-W, -3}, {W, -3}, {W, H}, {-W, H}}, true);
    for (long k = 1; k <= q; ++k) add_curve(cs, "N" + std::to_string(k), {{-k, 0}, {W + 1, k}});
    for (long m = 1; m <= p; ++m) add_curve(cs, "P" + std::to_string(m), {{m, 0}, {-W - 1, m}});
    add_point(cs, "u", 0, -2);
    add_point(cs, "v", 0, H - 1);
    return cs;
}

CurveSet standalone_clause_gadget() {
    CurveSet cs;
    add_curve(cs, "frame", {{-6, -1}, {6, -1}, {6, 9}, {-6, 9}}, true);
    add_curve(cs, "gb", {{-7, 2}, {2, 2}});
    add_curve(cs, "gc", {{7, 4}, {-2, 4}});
    add_curve(cs, "ga", {{-7, 6}, {2, 6}});
    add_curve(cs, "dg", {{0, 7}, {0, 1}});
    add_point(cs, "u", 3, 0);
    add_point(cs, "v", 3, 8);
    return cs;
}

}  // namespace edgeins
