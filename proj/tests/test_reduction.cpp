#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "edgeins/insertion.h"
#include "edgeins/planarize.h"
#include "edgeins/reduction.h"
#include "test_support.h"

#include <set>

using namespace edgeins;

namespace {

std::vector<std::string> names(const Planarization& p, const std::vector<int>& colors) {
    std::vector<std::string> out;
    for (int c : colors) out.push_back(p.colors[c].name);
    return out;
}

Point midpoint(const HalfEdge& he) {
    return Point((he.path[0].x + he.path[1].x) / 2, (he.path[0].y + he.path[1].y) / 2);
}

bool on_polyline(const Polyline& line, const Point& q) {
    for (std::size_t i = 0; i + 1 < line.points.size(); ++i) {
        if (on_segment(Segment{line.points[i], line.points[i + 1]}, q)) return true;
    }
    return false;
}

// Snail with u, v (and w) as isolated points.
Planarization snail_with(const SnailTemplate& st, const std::vector<std::pair<std::string, std::string>>& points) {
    CurveSet cs = st.curves;
    for (const auto& [name, cell] : points) cs.isolated.push_back({name, st.cells.at(cell)});
    return build_planarization(cs);
}

std::set<std::string> crossed(const Planarization& p, const Witness& w) {
    std::set<std::string> out;
    for (const auto& s : w.steps) out.insert(p.colors[s.color].name);
    return out;
}

bool insertable_instance(const ReductionInstance& inst) {
    Planarization p = build_planarization(inst.drawing);
    SearchOptions opt;
    opt.node_budget = 200'000'000;
    return insertable(p, p.find_vertex(inst.u), p.find_vertex(inst.v), Strategy::Oracle, opt).yes;
}

}  // namespace

TEST_CASE("snail has eight cells and twelve crossings") {
    SnailTemplate st = build_snail();
    Planarization p = build_planarization(st.curves);
    check_structure(p);
    CHECK(validate_simple(p).ok());
    CHECK(p.faces.size() == 8);
    CHECK(p.total_crossings() == 12);
    std::set<int> faces;
    for (const auto& [name, q] : st.cells) faces.insert(locate(p, q));
    CHECK(faces.size() == 8);
    CHECK(locate(p, st.cells.at("B2")) == p.outer_face);
}

TEST_CASE("snail crossing sequences") {
    Planarization p = build_planarization(build_snail().curves);
    using V = std::vector<std::string>;
    auto seq = [&](const char* c) { return names(p, crossing_sequence(p, p.find_color(c))); };
    CHECK(seq("a1") == V{"b2", "b3", "a3", "a2"});
    CHECK(seq("a2") == V{"a3", "a1", "b2", "b1"});
    CHECK(seq("a3") == V{"a1", "a2", "b1", "b3"});
    CHECK(seq("b1") == V{"a3", "a2", "b2", "b3"});
    CHECK(seq("b2") == V{"a2", "a1", "b3", "b1"});
    CHECK(seq("b3") == V{"b2", "b1", "a3", "a1"});
}

TEST_CASE("every A and B cell holds the two stubs of its arcs") {
    SnailTemplate st = build_snail();
    Planarization p = build_planarization(st.curves);
    std::map<std::string, std::set<std::string>> want = {
        {"A1", {"a3", "b3"}}, {"A2", {"b2", "a1"}}, {"A3", {"a2", "b1"}},
        {"B1", {"b2", "a2"}}, {"B3", {"b1", "a3"}}, {"B2", {"a1", "b3"}},
    };
    for (const auto& [cell, arcs] : want) {
        int f = locate(p, st.cells.at(cell));
        std::set<std::string> got;
        for (std::size_t v = 0; v < p.vertices.size(); ++v) {
            if (p.vertices[v].kind != VertexKind::Original) continue;
            auto fs = p.faces_at(int(v));
            REQUIRE(fs.size() == 1);
            if (fs[0] == f) got.insert(p.colors[p.half_edges[p.outgoing(int(v))[0]].color].name);
        }
        CHECK_MESSAGE(got == arcs, cell);
    }
}

TEST_CASE("snail separates X from Y") {
    for (long scale : {1L, 3L}) {
        SnailTemplate st = build_snail(scale);
        Planarization p = snail_with(st, {{"u", "X"}, {"v", "Y"}});
        int u = p.find_vertex("u"), v = p.find_vertex("v");
        CHECK(enumerate_witnesses(p, u, v, 1000).empty());
        CHECK_FALSE(insertable(p, u, v, Strategy::Oracle).yes);
        CHECK_FALSE(insertable(p, u, v, Strategy::Fpt).yes);
    }
}

TEST_CASE("every way from X to B2 crosses b2 between a2 and b3") {
    SnailTemplate st = build_snail();
    Planarization p = snail_with(st, {{"u", "X"}, {"v", "B2"}});
    auto ws = enumerate_witnesses(p, p.find_vertex("u"), p.find_vertex("v"), 100000);
    REQUIRE_FALSE(ws.empty());
    for (const Witness& w : ws) {
        bool hit = false;
        for (const auto& s : w.steps) {
            const HalfEdge& he = p.half_edges[p.edges[s.arc][0]];
            hit = hit || (p.colors[s.color].name == "b2" && on_polyline(st.b2_star, midpoint(he)));
        }
        CHECK(hit);
    }
}

TEST_CASE("frames of every size pass the structural checks") {
    for (int m1 = 0; m1 <= 8; ++m1) {
        for (int m4 : {0, 1, m1 + 3}) {
            ReductionInstance inst = build_frame(m1, m4);
            CHECK(inst.frame.size() == std::size_t(m1 + m4 + 4));
            auto problems = check_instance(inst);
            INFO(m1, " ", m4, ": ", (problems.empty() ? "" : problems[0]));
            CHECK(problems.empty());
        }
    }
}

TEST_CASE("every way from u to v crosses all frame arcs inside A1 or B3") {
    ReductionInstance inst = build_frame(1, 0);
    REQUIRE(inst.frame.size() == 5);
    Planarization p = build_planarization(inst.drawing);
    SnailTemplate st = build_snail(inst.snail_scale);
    Planarization sp = build_planarization(st.curves);
    std::set<int> allowed = {locate(sp, st.cells.at("A1")), locate(sp, st.cells.at("B3"))};
    auto ws = enumerate_witnesses(p, p.find_vertex(inst.u), p.find_vertex(inst.v), 20000);
    REQUIRE_FALSE(ws.empty());
    const std::set<std::string> frame(inst.frame.begin(), inst.frame.end());
    for (const Witness& w : ws) {
        std::set<std::string> hit;
        for (const auto& s : w.steps) {
            const std::string& c = p.colors[s.color].name;
            if (!frame.count(c)) continue;
            hit.insert(c);
            CHECK(allowed.count(locate(sp, midpoint(p.half_edges[p.edges[s.arc][0]]))));
        }
        CHECK(hit == frame);
    }
}

TEST_CASE("variable gadget forces all of P or all of N") {
    for (auto [pc, qc] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{1, 3}}) {
        CurveSet cs = standalone_variable_gadget(pc, qc);
        Planarization p = build_planarization(cs);
        check_structure(p);
        CHECK(validate_simple(p).ok());
        SearchOptions opt;
        opt.blocked_colors = {p.find_color("frame")};
        auto ws = enumerate_witnesses(p, p.find_vertex("u"), p.find_vertex("v"), 100000, opt);
        REQUIRE_FALSE(ws.empty());
        std::set<std::string> P, N;
        for (int k = 1; k <= pc; ++k) P.insert("P" + std::to_string(k));
        for (int k = 1; k <= qc; ++k) N.insert("N" + std::to_string(k));
        bool saw_p = false, saw_n = false;
        for (const Witness& w : ws) {
            auto hit = crossed(p, w);
            bool all_p = std::includes(hit.begin(), hit.end(), P.begin(), P.end());
            bool all_n = std::includes(hit.begin(), hit.end(), N.begin(), N.end());
            CHECK((all_p || all_n));
            saw_p = saw_p || (all_p && !all_n);
            saw_n = saw_n || (all_n && !all_p);
        }
        CHECK(saw_p);
        CHECK(saw_n);
    }
}

TEST_CASE("clause gadget forces one of its literal arcs") {
    CurveSet cs = standalone_clause_gadget();
    Planarization p = build_planarization(cs);
    check_structure(p);
    CHECK(validate_simple(p).ok());
    using V = std::vector<std::string>;
    CHECK(names(p, crossing_sequence(p, p.find_color("dg"))) == V{"ga", "gc", "gb"});
    SearchOptions opt;
    opt.blocked_colors = {p.find_color("frame")};
    int u = p.find_vertex("u"), v = p.find_vertex("v");
    auto ws = enumerate_witnesses(p, u, v, 100000, opt);
    REQUIRE_FALSE(ws.empty());
    std::set<std::string> single;
    for (const Witness& w : ws) {
        auto hit = crossed(p, w);
        CHECK((hit.count("ga") || hit.count("gb") || hit.count("gc")));
        hit.erase("dg");
        if (hit.size() == 1) single.insert(*hit.begin());
    }
    CHECK(single == std::set<std::string>{"ga", "gb", "gc"});
    // Blocking all three literal arcs separates u from v.
    opt.blocked_colors.push_back(p.find_color("ga"));
    opt.blocked_colors.push_back(p.find_color("gb"));
    opt.blocked_colors.push_back(p.find_color("gc"));
    CHECK_FALSE(insertable(p, u, v, Strategy::Oracle, opt).yes);
}

TEST_CASE("frame size counts type I and type IV clauses") {
    // (x1 x1 x1) splits into I and II; (-1 -2 -2) is type III only.
    ReductionInstance a = build_instance(CnfFormula{2, {{1, 1, 1}, {-1, 2, -2}}});
    CHECK(a.frame.size() == 5);
    ReductionInstance b = build_instance(CnfFormula{2, {{-1, 2, 2}}});
    CHECK(b.frame.size() == 4);
    ReductionInstance c = build_instance(CnfFormula{3, {{1, 2, 3}, {-1, -2, -3}}});
    CHECK(c.frame.size() == 6);
    CHECK(c.clauses.size() == 4);
    // Constant false slots map onto frame arcs.
    REQUIRE(c.literal_map.size() == 12);
    int on_frame = 0;
    for (const LiteralArc& l : c.literal_map) {
        on_frame += std::find(c.frame.begin(), c.frame.end(), l.color) != c.frame.end();
    }
    CHECK(on_frame == 2);
}

TEST_CASE("instances pass the structural checks") {
    std::vector<CnfFormula> fs = {
        {1, {{1, 1, 1}}},
        {2, {{-1, 2, 2}}},
        {3, {{1, 2, 3}, {-1, -2, -3}, {1, -2, 3}}},
        {3, {{1, -2, -3}, {-1, 2, 3}, {2, 2, 2}, {-3, -3, -3}}},
    };
    for (const auto& f : fs) {
        ReductionInstance inst = build_instance(f);
        auto problems = check_instance(inst);
        INFO((problems.empty() ? "" : problems[0]));
        CHECK(problems.empty());
        for (const auto& g : inst.variables) CHECK(g.p_arcs.size() + g.n_arcs.size() > 0);
    }
}

TEST_CASE("insertability matches satisfiability on small formulas") {
    std::vector<CnfFormula> fs = {
        {2, {{-1, 2, 2}}},
        {1, {{1, 1, 1}}},
        {1, {{1, 1, 1}, {-1, -1, -1}}},
        {2, {{1, 2, 2}, {-1, -1, -1}, {-2, -2, -2}}},
        {2, {{1, -2, -2}, {-1, 2, 2}, {1, 1, 2}}},
    };
    for (const auto& f : fs) {
        ReductionInstance inst = build_instance(f);
        CHECK(insertable_instance(inst) == brute_force_sat(f));
    }
}

TEST_CASE("build_instance is deterministic") {
    CnfFormula f{3, {{1, -2, 3}, {-1, -1, -3}, {2, 3, 1}}};
    ReductionInstance a = build_instance(f), b = build_instance(f);
    REQUIRE(a.drawing.curves.size() == b.drawing.curves.size());
    for (std::size_t i = 0; i < a.drawing.curves.size(); ++i) {
        CHECK(a.drawing.curves[i].id == b.drawing.curves[i].id);
        CHECK(a.drawing.curves[i].line.points == b.drawing.curves[i].line.points);
    }
}
