// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails. Every check is exact; the time limits are wall-clock.

#include "cli.h"
#include "edgeins/cnf.h"
#include "edgeins/insertion.h"
#include "edgeins/io.h"
#include "edgeins/planarize.h"
#include "edgeins/pseudocircles.h"
#include "edgeins/reduction.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

using namespace edgeins;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (o.ok && s > limit_s) {
        o.ok = false;
        o.detail = "over the time limit";
    }
    failures += !o.ok;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s / %.0f s", s, limit_s);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << id << ". " << name << " [" << buf << "] " << o.detail << std::endl;
}

int pick(std::mt19937& rng, int n) { return int(rng() % std::uint32_t(n)); }

Literal random_literal(std::mt19937& rng, int n) { return (1 + pick(rng, n)) * (pick(rng, 2) ? -1 : 1); }

CnfFormula random_formula(std::mt19937& rng, int max_vars, int max_clauses) {
    CnfFormula f;
    f.num_vars = 1 + pick(rng, max_vars);
    int m = 1 + pick(rng, max_clauses);
    for (int i = 0; i < m; ++i) {
        f.clauses.push_back({random_literal(rng, f.num_vars), random_literal(rng, f.num_vars), random_literal(rng, f.num_vars)});
    }
    return f;
}

// Formulas with n <= 3 variables (all occurring) and 1 or 2 clauses, one per
// class under renaming of variables. Literal order inside a clause and clause
// order are ignored.
std::vector<CnfFormula> formula_family() {
    using Clause = std::array<Literal, 3>;
    std::set<std::pair<int, std::vector<Clause>>> seen;
    std::vector<CnfFormula> out;
    for (int n = 1; n <= 3; ++n) {
        std::vector<Literal> lits;
        for (int v = 1; v <= n; ++v) lits.insert(lits.end(), {v, -v});
        std::vector<Clause> clauses;
        for (std::size_t a = 0; a < lits.size(); ++a)
            for (std::size_t b = a; b < lits.size(); ++b)
                for (std::size_t c = b; c < lits.size(); ++c) clauses.push_back({lits[a], lits[b], lits[c]});
        std::vector<std::vector<Clause>> candidates;
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            candidates.push_back({clauses[i]});
            for (std::size_t j = i; j < clauses.size(); ++j) candidates.push_back({clauses[i], clauses[j]});
        }
        for (const auto& f : candidates) {
            std::set<int> used;
            for (const Clause& c : f)
                for (Literal x : c) used.insert(std::abs(x));
            if (int(used.size()) != n) continue;
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 1);
            std::vector<Clause> best;
            do {
                std::vector<Clause> g;
                for (Clause c : f) {
                    for (Literal& x : c) x = (x > 0 ? 1 : -1) * perm[std::abs(x) - 1];
                    std::sort(c.begin(), c.end());
                    g.push_back(c);
                }
                std::sort(g.begin(), g.end());
                if (best.empty() || g < best) best = g;
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (seen.insert({n, best}).second) out.push_back({n, best});
        }
    }
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

std::set<std::string> crossed(const Planarization& p, const Witness& w) {
    std::set<std::string> out;
    for (const auto& s : w.steps) out.insert(p.colors[s.color].name);
    return out;
}

struct Instance {
    Planarization p;
    int u, v;
};

// A random simple drawing where u and v are sometimes replaced by curve
// endpoints, and with closed curves v is moved into a random bounded face.
Instance random_instance(std::mt19937& rng, bool closed) {
    RandomDrawingOptions ro;
    ro.closed = closed;
    CurveSet cs = random_drawing(rng, ro);
    Planarization p = build_planarization(cs);
    if (closed && p.faces.size() > 1) {
        int f = pick(rng, int(p.faces.size()));
        if (f == p.outer_face) f = (f + 1) % int(p.faces.size());
        cs.isolated[1].point = interior_point(p, f);
        p = build_planarization(cs);
    }
    int u = p.find_vertex("u"), v = p.find_vertex("v");
    auto endpoint = [&](int fallback) {
        const Color& c = p.colors[pick(rng, int(p.colors.size()))];
        return c.closed ? fallback : c.endpoints[pick(rng, 2)];
    };
    if (pick(rng, 2) == 0) u = endpoint(u);
    if (pick(rng, 2) == 0) v = endpoint(v);
    if (u == v) v = p.find_vertex("v");
    return {std::move(p), u, v};
}

// Enumeration has to be complete, so the limit must never be reached.
constexpr std::size_t kEnumerationLimit = 10'000'000;

Outcome transform_equisatisfiable() {
    Outcome o;
    std::mt19937 rng(101);
    int checked = 0;
    for (int pattern = 0; pattern < 64; ++pattern) {
        // Two bits per slot: sign, and whether slot i uses x_{i+1} or the next variable.
        std::array<Literal, 3> c;
        for (int i = 0; i < 3; ++i) {
            int bits = (pattern >> (2 * i)) & 3;
            int var = bits & 2 ? 1 + (i + 1) % 3 : i + 1;
            c[i] = bits & 1 ? -var : var;
        }
        for (int k = 0; k < 50; ++k) {
            CnfFormula f = random_formula(rng, 4, 3);
            f.num_vars = std::max(f.num_vars, 3);
            f.clauses.insert(f.clauses.begin() + pick(rng, int(f.clauses.size()) + 1), c);
            o.require(brute_force_sat(transform_formula(f)) == brute_force_sat(f),
                      "pattern " + std::to_string(pattern) + " formula " + std::to_string(k));
            ++checked;
        }
    }
    o.detail = std::to_string(checked) + " formulas";
    return o;
}

Outcome snail_property() {
    Outcome o;
    SnailTemplate st = build_snail();
    auto with = [&](const std::string& cell) {
        CurveSet cs = st.curves;
        cs.isolated = {{"u", st.cells.at("X")}, {"v", st.cells.at(cell)}};
        return build_planarization(cs);
    };
    Planarization py = with("Y");
    o.require(enumerate_witnesses(py, py.find_vertex("u"), py.find_vertex("v"), kEnumerationLimit).empty(), "X-Y witness");
    Planarization pb = with("B2");
    auto ws = enumerate_witnesses(pb, pb.find_vertex("u"), pb.find_vertex("v"), kEnumerationLimit);
    o.require(!ws.empty() && ws.size() < kEnumerationLimit, "X-B2 enumeration");
    for (const Witness& w : ws) {
        bool hit = false;
        for (const auto& s : w.steps) {
            const HalfEdge& he = pb.half_edges[pb.edges[s.arc][0]];
            hit = hit || (pb.colors[s.color].name == "b2" && on_polyline(st.b2_star, midpoint(he)));
        }
        o.require(hit, "witness avoiding b2*");
    }
    if (o.ok) o.detail = "X-Y: 0 witnesses, X-B2: " + std::to_string(ws.size()) + " witnesses all crossing b2*";
    return o;
}

Outcome frame_crossings() {
    Outcome o;
    ReductionInstance inst = build_frame(1, 0);
    o.require(inst.frame.size() == 5, "|F| != 5");
    Planarization p = build_planarization(inst.drawing);
    SnailTemplate st = build_snail(inst.snail_scale);
    Planarization sp = build_planarization(st.curves);
    std::set<int> allowed = {locate(sp, st.cells.at("A1")), locate(sp, st.cells.at("B3"))};
    auto ws = enumerate_witnesses(p, p.find_vertex(inst.u), p.find_vertex(inst.v), kEnumerationLimit);
    o.require(!ws.empty() && ws.size() < kEnumerationLimit, "enumeration");
    const std::set<std::string> frame(inst.frame.begin(), inst.frame.end());
    for (const Witness& w : ws) {
        std::set<std::string> hit;
        for (const auto& s : w.steps) {
            const std::string& c = p.colors[s.color].name;
            if (!frame.count(c)) continue;
            hit.insert(c);
            o.require(allowed.count(locate(sp, midpoint(p.half_edges[p.edges[s.arc][0]]))) > 0, "frame crossed outside A1, B3");
        }
        o.require(hit == frame, "witness missing a frame arc");
    }
    if (o.ok) o.detail = std::to_string(ws.size()) + " witnesses";
    return o;
}

Outcome gadget_witnesses() {
    Outcome o;
    {
        Planarization p = build_planarization(standalone_variable_gadget(3, 3));
        SearchOptions opt;
        opt.blocked_colors = {p.find_color("frame")};
        auto ws = enumerate_witnesses(p, p.find_vertex("u"), p.find_vertex("v"), kEnumerationLimit, opt);
        o.require(!ws.empty() && ws.size() < kEnumerationLimit, "variable gadget enumeration");
        const std::set<std::string> P = {"P1", "P2", "P3"}, N = {"N1", "N2", "N3"};
        for (const Witness& w : ws) {
            auto hit = crossed(p, w);
            bool all_p = std::includes(hit.begin(), hit.end(), P.begin(), P.end());
            bool all_n = std::includes(hit.begin(), hit.end(), N.begin(), N.end());
            o.require(all_p || all_n, "variable witness misses some P and some N arc");
        }
        o.detail = "variable: " + std::to_string(ws.size()) + " witnesses";
    }
    {
        Planarization p = build_planarization(standalone_clause_gadget());
        SearchOptions opt;
        opt.blocked_colors = {p.find_color("frame")};
        auto ws = enumerate_witnesses(p, p.find_vertex("u"), p.find_vertex("v"), kEnumerationLimit, opt);
        o.require(!ws.empty() && ws.size() < kEnumerationLimit, "clause gadget enumeration");
        for (const Witness& w : ws) {
            auto hit = crossed(p, w);
            o.require(hit.count("ga") || hit.count("gb") || hit.count("gc"), "clause witness misses all literal arcs");
        }
        o.detail += ", clause: " + std::to_string(ws.size()) + " witnesses";
    }
    return o;
}

Outcome reduction_round_trip() {
    Outcome o;
    constexpr double per_instance_limit = 120;
    SearchOptions opt;
    opt.node_budget = 4'000'000'000ULL;
    int timeouts_family = 0, timeouts_random = 0, no = 0;
    double worst = 0;
    auto check = [&](const CnfFormula& f, int& timeouts, const std::string& label) {
        auto t0 = Clock::now();
        ReductionInstance inst = build_instance(f);
        Planarization p = build_planarization(inst.drawing);
        try {
            bool yes = insertable(p, p.find_vertex(inst.u), p.find_vertex(inst.v), Strategy::Oracle, opt).yes;
            o.require(yes == brute_force_sat(f), "mismatch on " + label);
            no += !yes;
        } catch (const SearchTimeout&) {
            ++timeouts;
        }
        double s = std::chrono::duration<double>(Clock::now() - t0).count();
        worst = std::max(worst, s);
        if (s > per_instance_limit) ++timeouts;
    };
    auto family = formula_family();
    for (std::size_t i = 0; i < family.size(); ++i) check(family[i], timeouts_family, "family " + std::to_string(i));
    std::mt19937 rng(202);
    for (int i = 0; i < 20; ++i) check(random_formula(rng, 4, 3), timeouts_random, "random " + std::to_string(i));
    o.require(timeouts_family == 0, "timeouts on the exhaustive family");
    char buf[160];
    std::snprintf(buf, sizeof buf, "family %zu + random 20, %d no-instances, timeouts %d/%d, slowest %.2f s", family.size(),
                  no, timeouts_family, timeouts_random, worst);
    o.detail = o.ok ? buf : o.detail + "; " + buf;
    return o;
}

Outcome kernel_bounds() {
    Outcome o;
    std::mt19937 rng(303);
    int max_k = 0, yes = 0;
    for (int i = 0; i < 100; ++i) {
        auto [p, u, v] = random_instance(rng, false);
        int k = p.total_crossings();
        max_k = std::max(max_k, k);
        o.require(k <= 8, "k > 8");
        Planarization ker = kernelize(p, u, v);
        o.require(ker.count_kind(VertexKind::Original) <= 4 * k + 2, "vertex bound, drawing " + std::to_string(i));
        o.require(int(ker.colors.size()) <= 2 * k, "edge bound, drawing " + std::to_string(i));
        bool before = insertable(p, u, v, Strategy::Oracle).yes;
        int ku = ker.find_vertex(p.vertices[u].name), kv = ker.find_vertex(p.vertices[v].name);
        bool after = insertable(ker, ku, kv, Strategy::Oracle).yes;
        o.require(before == after, "decision changed, drawing " + std::to_string(i));
        yes += before;
    }
    if (o.ok) o.detail = "100 drawings, max k = " + std::to_string(max_k) + ", " + std::to_string(yes) + " yes";
    return o;
}

Outcome strategy_agreement() {
    Outcome o;
    std::mt19937 rng(404);
    int yes = 0, blocked_yes = 0;
    auto agree = [&](const Planarization& p, int u, int v, const SearchOptions& opt, const std::string& label) {
        InsertionDecision a = insertable(p, u, v, Strategy::Oracle, opt);
        InsertionDecision b = insertable(p, u, v, Strategy::Fpt, opt);
        o.require(a.yes == b.yes, "disagreement on " + label);
        for (const InsertionDecision* d : {&a, &b}) {
            if (!d->yes) continue;
            ColoredDual dual = colored_dual(*d->searched, d->u, d->v);
            o.require(verify_witness(dual, *d->witness), "witness rejected on " + label);
        }
        return a.yes;
    };
    for (int i = 0; i < 100; ++i) {
        auto [p, u, v] = random_instance(rng, i % 2 == 1);
        yes += agree(p, u, v, {}, "instance " + std::to_string(i));
    }
    // Plain random drawings with k <= 8 are nearly always yes, so a second set
    // also forbids crossing some closed curves to exercise no answers.
    for (int i = 0; i < 100; ++i) {
        auto [p, u, v] = random_instance(rng, true);
        SearchOptions opt;
        for (std::size_t c = 0; c < p.colors.size(); ++c) {
            if (p.colors[c].closed && pick(rng, 2) == 0) opt.blocked_colors.push_back(int(c));
        }
        InsertionDecision a = insertable(p, u, v, Strategy::Oracle, opt);
        InsertionDecision b = insertable(p, u, v, Strategy::Fpt, opt);
        o.require(a.yes == b.yes, "disagreement on blocked instance " + std::to_string(i));
        blocked_yes += a.yes;
    }
    if (o.ok) {
        o.detail = "100 instances, " + std::to_string(yes) + " yes; 100 with blocked closed curves, " +
                   std::to_string(blocked_yes) + " yes";
    }
    return o;
}

Outcome extension_positive() {
    Outcome o;
    std::mt19937 rng(505);
    int yes = 0, oracle_some = 0, grown = 0;
    for (int i = 0; i < 200; ++i) {
        Arrangement a = random_arrangement(rng, 5, 40);
        PreparedArrangement pa = prepare(a);
        o.require(a.circles.curves.size() <= 5 && pa.face_count() <= 40, "instance too large");
        auto cls = classify(pa);
        ExtendOptions eo;
        eo.check_invariants = true;  // region invariants after every step
        ExtensionResult r = extend(pa, eo);
        o.require(r.grow_steps <= int(pa.face_count()), "too many growth steps");
        for (const Region& reg : r.trace) o.require(c0_complement_connected(pa, cls, reg), "complement inside a C0 circle is disconnected");
        if (r.yes) {
            ++yes;
            o.require(verify_certificate(pa, *r.certificate), "certificate rejected, instance " + std::to_string(i));
        }
        grown += r.grow_steps > 0;
        auto orc = oracle_extend(pa, 50'000'000);
        if (orc) {
            ++oracle_some;
            o.require(r.yes, "oracle found an extension the region method missed, instance " + std::to_string(i));
        }
    }
    if (o.ok) {
        o.detail = "200 arrangements, " + std::to_string(yes) + " yes, oracle some " + std::to_string(oracle_some) +
                   ", grown " + std::to_string(grown);
    }
    return o;
}

Outcome extension_negative() {
    Outcome o;
    for (const auto& [name, a] : {std::pair{"two-crossing", obstruction_two_crossings()},
                                  std::pair{"one-crossing", obstruction_one_crossing()}}) {
        PreparedArrangement pa = prepare(a);
        o.require(!extend(pa).yes, std::string(name) + ": extend says yes");
        o.require(!oracle_extend(pa), std::string(name) + ": oracle finds an extension");
    }
    if (o.ok) o.detail = "both obstructions: No, oracle None";
    return o;
}

struct Captured {
    int code;
    std::string out;
    std::vector<std::string> files;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    Outcome o;
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("edgeins_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto at = [&](const std::string& n) { return (dir / n).string(); };
    std::ofstream(at("f.cnf")) << "p cnf 3 2\n1 2 3 0\n-1 2 -3 0\n";
    std::ofstream(at("one.cnf")) << "p cnf 1 1\n1 1 1 0\n";

    using Args = std::vector<std::string>;
    // Inputs first; every command is then run twice in-process and once as a
    // separate process.
    std::vector<std::pair<Args, std::vector<std::string>>> commands = {
        {{"gen", "--kind", "drawing", "--seed", "7", "-o", at("d.json")}, {"d.json"}},
        {{"gen", "--kind", "drawing", "--closed", "-o", at("dc.json")}, {"dc.json"}},
        {{"gen", "--kind", "arrangement", "--seed", "7", "-o", at("a.json")}, {"a.json"}},
        {{"gen", "--kind", "snail", "--v-cell", "Y", "-o", at("s.json")}, {"s.json"}},
        {{"validate", at("d.json")}, {}},
        {{"insert", at("d.json"), "--u", "u", "--v", "v"}, {}},
        {{"insert", at("dc.json"), "--u", "u", "--v", "v", "--strategy", "fpt"}, {}},
        {{"insert", at("s.json"), "--u", "u", "--v", "v"}, {}},
        {{"reduce", at("f.cnf"), "-o", at("inst")}, {"inst.drawing.json", "inst.sidecar.json"}},
        {{"roundtrip", at("one.cnf")}, {}},
        {{"roundtrip", at("f.cnf"), "--strategy", "fpt"}, {}},
        {{"extend", at("a.json")}, {}},
        {{"extend", at("a.json"), "--oracle"}, {}},
        {{"render", at("s.json")}, {}},
        {{"render", at("s.json"), "--what", "dual", "--u", "u", "--v", "v"}, {}},
        {{"render", at("a.json"), "--format", "svg"}, {}},
        {{"render", at("d.json"), "--format", "json"}, {}},
    };
    auto in_process = [&](const Args& args, const std::vector<std::string>& files) {
        std::ostringstream out, err;
        Captured c{run_cli(args, out, err), out.str(), {}};
        for (const auto& f : files) c.files.push_back(slurp(dir / f));
        return c;
    };
    auto as_process = [&](const Args& args, const std::vector<std::string>& files) {
        std::string cmd = EDGEINS_TOOL;
        for (const auto& a : args) cmd += " '" + a + "'";
        cmd += " 2>/dev/null";
        Captured c{-1, "", {}};
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) return c;
        char buf[4096];
        std::size_t n;
        while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) c.out.append(buf, n);
        int status = pclose(pipe);
        c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        for (const auto& f : files) c.files.push_back(slurp(dir / f));
        return c;
    };
    for (const auto& [args, files] : commands) {
        Captured a = in_process(args, files);
        Captured b = in_process(args, files);
        Captured c = as_process(args, files);
        std::string label = args[0] + (args.size() > 1 ? " " + fs::path(args[1]).filename().string() : "");
        o.require(a.code == b.code && a.out == b.out && a.files == b.files, "in-process runs differ: " + label);
        o.require(a.code == c.code && a.out == c.out && a.files == c.files, "separate process differs: " + label);
        o.require(a.code == kExitOk || a.code == kExitNo, "unexpected exit code " + std::to_string(a.code) + ": " + label);
    }
    fs::remove_all(dir);
    if (o.ok) o.detail = std::to_string(commands.size()) + " command lines, 3 runs each";
    return o;
}

}  // namespace

int main() {
    criterion(1, "transform is equisatisfiable on all 64 sign patterns", 5, transform_equisatisfiable);
    criterion(2, "snail: no X-Y witness, every X-B2 witness crosses b2*", 10, snail_property);
    criterion(3, "frame |F|=5: witnesses cross all of F inside A1 or B3", 60, frame_crossings);
    criterion(4, "variable gadget (3,3) and clause gadget witnesses", 10, gadget_witnesses);
    // 120 s per instance; the total limit only follows from that.
    criterion(5, "insertable(build_instance(f)) == sat(f)", double(formula_family().size() + 20) * 120, reduction_round_trip);
    criterion(6, "kernel bounds and decision invariance", 30, kernel_bounds);
    criterion(7, "oracle and fpt agree", 60, strategy_agreement);
    criterion(8, "extension positive suite", 120, extension_positive);
    criterion(9, "extension obstructions", 5, extension_negative);
    criterion(10, "CLI outputs are byte-identical across runs", 60, determinism);
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
