#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "edgeins/pseudocircles.h"
#include "test_support.h"

using namespace edgeins;

namespace {

Curve box(const std::string& id, long x0, long y0, long x1, long y1) {
    Curve c;
    c.id = id;
    c.line.closed = true;
    c.line.points = {Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)};
    return c;
}

Polyline line(std::vector<std::pair<long, long>> pts) {
    Polyline l;
    for (auto [x, y] : pts) l.points.push_back(Point(x, y));
    return l;
}

Arrangement make(std::vector<Curve> circles, Polyline sigma) {
    Arrangement a;
    a.circles.curves = std::move(circles);
    a.sigma = std::move(sigma);
    return a;
}

// sigma from the far left into a box around v.
Arrangement one_c1() { return make({box("c", 10, -10, 30, 10)}, line({{0, 1}, {20, 1}})); }

}  // namespace

TEST_CASE("classification") {
    auto empty = classify(prepare(make({}, line({{0, 0}, {5, 0}}))));
    CHECK(empty.c0.empty());
    CHECK(empty.c1.empty());
    CHECK(empty.c2.empty());

    auto two = classify(prepare(make({box("c", 10, -10, 30, 10), box("d", 50, 50, 60, 60)}, line({{0, 1}, {40, 1}}))));
    CHECK(two.c2 == std::vector<int>{0});
    CHECK(two.c0 == std::vector<int>{1});
    CHECK(classify(prepare(one_c1())).c1 == std::vector<int>{0});

    auto obs = classify(prepare(obstruction_two_crossings()));
    CHECK(obs.c2.size() == 2);
    CHECK(obs.c0.empty());
    CHECK(obs.c1.empty());
}

TEST_CASE("invalid arrangements are rejected") {
    // Sigma zigzags through one box three times.
    CHECK_THROWS_AS(prepare(make({box("c", 10, -10, 30, 10)}, line({{0, 1}, {40, 1}, {40, 20}, {20, 20}, {20, 5}}))),
                    TooManyCrossings);
    // A plus sign: the two boxes cross four times.
    CHECK_THROWS_AS(prepare(make({box("c", 0, 10, 30, 20), box("d", 10, 0, 20, 30)}, line({{-5, -5}, {-1, -1}}))),
                    InvalidArrangement);
    // u inside a box.
    CHECK_THROWS_AS(prepare(make({box("c", 0, 0, 30, 30)}, line({{5, 5}, {40, 5}}))), InvalidArrangement);
    CHECK_THROWS_AS(prepare(make({box("sigma", 10, 10, 20, 20)}, line({{0, 0}, {5, 0}}))), InvalidArrangement);
}

TEST_CASE("inside flags agree with winding numbers") {
    std::mt19937 rng(3);
    for (int t = 0; t < 40; ++t) {
        Arrangement a = random_arrangement(rng, 5);
        PreparedArrangement pa = prepare(a);
        check_structure(pa.map);
        for (std::size_t f = 0; f < pa.face_count(); ++f) {
            Point q = interior_point(pa.map, int(f));
            for (std::size_t i = 0; i < pa.circle_ids.size(); ++i) {
                bool inside = winding_number(a.circles.curves[i].line.points, q) != 0;
                CHECK(bool(pa.inside[f][i]) == inside);
            }
        }
    }
}

TEST_CASE("initial region") {
    auto pa = prepare(make({}, line({{0, 0}, {5, 0}})));
    auto r = initial_region(pa, classify(pa));
    REQUIRE(r);
    CHECK(r->size() == 0);

    pa = prepare(make({box("c", 10, -10, 30, 10)}, line({{0, 1}, {40, 1}})));
    auto cls = classify(pa);
    r = initial_region(pa, cls);
    REQUIRE(r);
    for (std::size_t f = 0; f < pa.face_count(); ++f) CHECK(r->contains(int(f)) == bool(pa.inside[f][0]));
    CHECK(r->size() == 2);  // sigma splits the box

    pa = prepare(obstruction_two_crossings());
    CHECK_FALSE(initial_region(pa, classify(pa)));
}

TEST_CASE("growth steps") {
    auto pa = prepare(make({box("c", 10, -10, 30, 10)}, line({{0, 1}, {40, 1}})));
    auto cls = classify(pa);
    CHECK(grow(pa, cls, *initial_region(pa, cls)).status == GrowResult::Status::Fixpoint);

    pa = prepare(one_c1());
    cls = classify(pa);
    auto r0 = initial_region(pa, cls);
    REQUIRE(r0);
    CHECK(r0->size() == 0);
    CHECK(grow(pa, cls, *r0).status == GrowResult::Status::Fixpoint);

    pa = prepare(obstruction_one_crossing());
    cls = classify(pa);
    CHECK(cls.c1.size() == 1);
    r0 = initial_region(pa, cls);
    REQUIRE(r0);
    auto g = grow(pa, cls, *r0);
    CHECK(g.status == GrowResult::Status::Infeasible);
    CHECK(pa.circle_ids[g.circle] == "red");
}

TEST_CASE("extension examples") {
    auto pa = prepare(make({}, line({{0, 0}, {5, 0}})));
    auto r = extend(pa);
    REQUIRE(r.yes);
    CHECK(r.certificate->crossings.empty());
    CHECK(verify_certificate(pa, *r.certificate));

    pa = prepare(one_c1());
    r = extend(pa);
    REQUIRE(r.yes);
    REQUIRE(r.certificate->crossings.size() == 1);
    CHECK(r.certificate->crossings[0].circle == "c");

    for (const Arrangement& a : {obstruction_two_crossings(), obstruction_one_crossing()}) {
        pa = prepare(a);
        r = extend(pa);
        CHECK_FALSE(r.yes);
        CHECK_FALSE(r.certificate);
        CHECK_FALSE(oracle_extend(pa));
    }
    CHECK(extend(prepare(obstruction_two_crossings())).stage == ExtensionResult::Stage::Initial);
    CHECK(extend(prepare(obstruction_one_crossing())).stage == ExtensionResult::Stage::Growth);
}

TEST_CASE("each circle of an obstruction is needed") {
    for (const Arrangement& a : {obstruction_two_crossings(), obstruction_one_crossing()}) {
        for (std::size_t drop = 0; drop < a.circles.curves.size(); ++drop) {
            Arrangement b = a;
            b.circles.curves.erase(b.circles.curves.begin() + long(drop));
            auto pa = prepare(b);
            auto r = extend(pa);
            CHECK(r.yes);
            CHECK(oracle_extend(pa));
        }
    }
}

TEST_CASE("certificate verification") {
    auto pa = prepare(make({}, line({{0, 0}, {5, 0}})));
    ExtensionCertificate empty;
    empty.faces = {pa.u_face};
    CHECK(verify_certificate(pa, empty));

    // Crossing a box that sigma already crosses twice.
    pa = prepare(make({box("c", 10, -10, 30, 10)}, line({{0, 1}, {40, 1}})));
    int e = -1;
    for (std::size_t k = 0; k < pa.map.edges.size(); ++k) {
        const HalfEdge& h = pa.map.half_edges[pa.map.edges[k][0]];
        if (h.color == pa.circle_color[0] && (h.face == pa.u_face || pa.map.half_edges[h.twin].face == pa.u_face)) {
            e = int(k);
        }
    }
    REQUIRE(e >= 0);
    const HalfEdge& h = pa.map.half_edges[pa.map.edges[e][0]];
    int other = h.face == pa.u_face ? pa.map.half_edges[h.twin].face : h.face;
    ExtensionCertificate bad;
    bad.crossings = {{"c", e}};
    bad.faces = {pa.u_face, other};
    CHECK_FALSE(verify_certificate(pa, bad));

    // Tampering with a valid certificate.
    pa = prepare(one_c1());
    auto good = *extend(pa).certificate;
    CHECK(verify_certificate(pa, good));
    auto t = good;
    t.crossings[0].circle = "sigma";
    CHECK_FALSE(verify_certificate(pa, t));
    t = good;
    t.faces.pop_back();
    CHECK_FALSE(verify_certificate(pa, t));
    t = good;
    t.crossings.push_back(t.crossings[0]);
    t.faces.push_back(t.faces[0]);
    CHECK_FALSE(verify_certificate(pa, t));
}

TEST_CASE("oracle examples") {
    auto pa = prepare(make({}, line({{0, 0}, {5, 0}})));
    auto o = oracle_extend(pa);
    REQUIRE(o);
    CHECK(o->crossings.empty());
    pa = prepare(one_c1());
    o = oracle_extend(pa);
    REQUIRE(o);
    CHECK(o->crossings.size() == 1);
    CHECK(verify_certificate(pa, *o));
    CHECK_THROWS_AS(oracle_extend(prepare(obstruction_two_crossings()), 0), SearchTimeout);
}

TEST_CASE("random arrangements") {
    std::mt19937 rng(17);
    int yes = 0, grown = 0;
    for (int t = 0; t < 200; ++t) {
        Arrangement a = random_arrangement(rng, 5, 40);
        CHECK(a.circles.curves.size() <= 5);
        PreparedArrangement pa = prepare(a);
        CHECK(pa.face_count() <= 40);
        auto cls = classify(pa);
        ExtensionResult r = extend(pa);  // checks both region invariants every step
        CHECK(r.grow_steps <= int(pa.face_count()));
        for (std::size_t i = 1; i < r.trace.size(); ++i) {
            for (std::size_t f = 0; f < pa.face_count(); ++f) {
                if (r.trace[i - 1].contains(int(f))) CHECK(r.trace[i].contains(int(f)));
            }
            CHECK(r.trace[i].size() > r.trace[i - 1].size());
            CHECK(c0_complement_connected(pa, cls, r.trace[i]));
        }
        if (r.yes) {
            ++yes;
            CHECK(verify_certificate(pa, *r.certificate));
        }
        grown += r.grow_steps > 0;
        auto o = oracle_extend(pa, 50'000'000);
        if (o) {
            CHECK(verify_certificate(pa, *o));
            CHECK(r.yes);
        }
        ExtendOptions reversed;
        reversed.reverse_scan = true;
        CHECK(extend(pa, reversed).yes == r.yes);
    }
    CHECK(yes > 0);
    CHECK(grown > 0);
}
