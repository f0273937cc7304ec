#include "cli.h"

#include "edgeins/io.h"
#include "edgeins/planarize.h"

#include "CLI11.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace edgeins {

namespace {

// Raised for inputs that parse but break a model invariant.
struct Invalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json read_json(const std::string& path) { return parse_json(read_file(path)); }

CnfFormula read_cnf(const std::string& path) {
    std::istringstream in(read_file(path));
    return parse_dimacs(in);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

int vertex_or_throw(const Planarization& p, const std::string& name) {
    int x = p.find_vertex(name);
    if (x < 0 || p.vertices[x].kind != VertexKind::Original) throw Invalid("no original vertex named '" + name + "'");
    return x;
}

Strategy strategy_of(const std::string& s) { return s == "fpt" ? Strategy::Fpt : Strategy::Oracle; }

// The circles plus sigma as plain curves; u and v are sigma's endpoints.
CurveSet arrangement_curves(const Arrangement& a) {
    CurveSet cs = a.circles;
    cs.curves.push_back({kSigmaId, a.sigma});
    return cs;
}

struct Config {
    std::string input;
    std::string output;
    std::string u, v;
    std::string strategy = "oracle";
    std::string kind = "drawing";
    std::string what = "planarization";
    std::string format;
    std::string v_cell = "B2";
    std::uint64_t budget = kDefaultNodeBudget;
    std::uint32_t seed = kDefaultSeed;
    int max_crossings = 8;
    int max_curves = 8;
    int max_circles = 5;
    int max_faces = 40;
    bool closed = false;
    bool oracle = false;
};

class Runner {
public:
    Runner(const Config& c, std::ostream& out) : c_(c), out_(out) {}

    int validate() {
        LoadedDrawing d = drawing_from_json(read_json(c_.input));
        ValidationReport r = validate_simple(d.map);
        emit(dump_json(report_to_json(d.map, r)));
        return r.ok() ? kExitOk : kExitInvalid;
    }

    int insert() {
        Planarization p = simple_drawing(c_.input);
        int u = vertex_or_throw(p, c_.u), v = vertex_or_throw(p, c_.v);
        SearchOptions opt;
        opt.node_budget = c_.budget;
        InsertionDecision d = insertable(p, u, v, strategy_of(c_.strategy), opt);
        Json j = {{"strategy", to_string(strategy_of(c_.strategy))}, {"u", c_.u}, {"v", c_.v}};
        j.update(decision_to_json(d));
        emit(dump_json(j));
        return d.yes ? kExitOk : kExitNo;
    }

    int reduce() {
        CnfFormula f = read_cnf(c_.input);
        ReductionInstance inst = build_instance(f);
        Json drawing = curves_to_json(inst.drawing);
        Json sidecar = sidecar_to_json(inst);
        if (c_.output.empty()) {
            out_ << dump_json({{"drawing", drawing}, {"sidecar", sidecar}});
        } else {
            write_file(c_.output + ".drawing.json", dump_json(drawing));
            write_file(c_.output + ".sidecar.json", dump_json(sidecar));
        }
        return kExitOk;
    }

    int roundtrip() {
        CnfFormula f = read_cnf(c_.input);
        bool sat = brute_force_sat(f);
        ReductionInstance inst = build_instance(f);
        Planarization p = build_planarization(inst.drawing);
        SearchOptions opt;
        opt.node_budget = c_.budget;
        InsertionDecision d = insertable(p, p.find_vertex(inst.u), p.find_vertex(inst.v), strategy_of(c_.strategy), opt);
        std::ostringstream s;
        s << "sat=" << (sat ? "true" : "false") << " insertable=" << (d.yes ? "true" : "false")
          << " agree=" << (sat == d.yes ? "true" : "false") << "\n";
        emit(s.str());
        return sat == d.yes ? kExitOk : kExitNo;
    }

    int extend_cmd() {
        Arrangement a = arrangement_from_json(read_json(c_.input));
        PreparedArrangement pa = prepare(a);
        Json j;
        if (c_.oracle) {
            auto o = oracle_extend(pa, c_.budget);
            j = certificate_to_json(o);
            j["method"] = "oracle";
        } else {
            ExtensionResult r = extend(pa);
            if (r.certificate && !verify_certificate(pa, *r.certificate)) {
                throw InternalInvariantViolation("certificate failed verification");
            }
            j = certificate_to_json(r.certificate);
            j["method"] = "region";
            j["stage"] = to_string(r.stage);
            j["grow_steps"] = r.grow_steps;
        }
        emit(dump_json(j));
        return j["answer"] == "yes" ? kExitOk : kExitNo;
    }

    int gen() {
        std::mt19937 rng(c_.seed);
        if (c_.kind == "drawing") {
            RandomDrawingOptions o;
            o.max_crossings = c_.max_crossings;
            o.max_curves = c_.max_curves;
            o.closed = c_.closed;
            emit(dump_json(curves_to_json(random_drawing(rng, o))));
        } else if (c_.kind == "arrangement") {
            emit(dump_json(arrangement_to_json(random_arrangement(rng, c_.max_circles, c_.max_faces))));
        } else {
            SnailTemplate st = build_snail();
            auto cell = st.cells.find(c_.v_cell);
            if (cell == st.cells.end() || c_.v_cell == "X") throw Invalid("unknown cell '" + c_.v_cell + "'");
            CurveSet cs = st.curves;
            cs.isolated = {{"u", st.cells.at("X")}, {"v", cell->second}};
            emit(dump_json(curves_to_json(cs)));
        }
        return kExitOk;
    }

    int render() {
        Json j = read_json(c_.input);
        std::optional<CurveSet> curves;
        Planarization p;
        if (j.is_object() && j.contains("circles")) {
            curves = arrangement_curves(arrangement_from_json(j));
            p = build_planarization(*curves);
        } else {
            LoadedDrawing d = drawing_from_json(j);
            curves = d.curves;
            p = std::move(d.map);
        }
        std::string format = c_.format.empty() ? "dot" : c_.format;
        if (format == "svg") {
            if (!curves) throw Invalid("svg needs geometric input");
            emit(curves_to_svg(*curves));
        } else if (format == "json") {
            emit(dump_json(planarization_to_json(p)));
        } else if (c_.what == "dual") {
            if (c_.u.empty() || c_.v.empty()) throw Invalid("the dual needs --u and --v");
            emit(dual_to_dot(p, colored_dual(p, vertex_or_throw(p, c_.u), vertex_or_throw(p, c_.v))));
        } else {
            emit(planarization_to_dot(p));
        }
        return kExitOk;
    }

private:
    Planarization simple_drawing(const std::string& path) {
        LoadedDrawing d = drawing_from_json(read_json(path));
        ValidationReport r = validate_simple(d.map);
        if (!r.ok()) {
            const Violation& v = r.violations.front();
            throw Invalid(std::string("not a simple drawing: ") + to_string(v.kind) + " " + v.detail);
        }
        return std::move(d.map);
    }

    void emit(const std::string& text) {
        if (c_.output.empty()) {
            out_ << text;
        } else {
            write_file(c_.output, text);
        }
    }

    const Config& c_;
    std::ostream& out_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Edge insertion in simple drawings and extension of pseudosegments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    auto add_budget = [&](CLI::App* s) {
        s->add_option("--budget", c.budget, "Node expansion budget")->check(CLI::PositiveNumber)->capture_default_str();
    };
    auto add_output = [&](CLI::App* s) { s->add_option("-o,--output", c.output, "Write the result to this file"); };

    CLI::App* validate = app.add_subcommand("validate", "Report violated simple-drawing axioms");
    validate->add_option("drawing", c.input)->required();
    add_output(validate);

    CLI::App* insert = app.add_subcommand("insert", "Decide whether edge uv can be inserted");
    insert->add_option("drawing", c.input)->required();
    insert->add_option("--u", c.u, "Name of vertex u")->required();
    insert->add_option("--v", c.v, "Name of vertex v")->required();
    insert->add_option("--strategy", c.strategy)->check(CLI::IsMember({"oracle", "fpt"}))->capture_default_str();
    add_budget(insert);
    add_output(insert);

    CLI::App* reduce = app.add_subcommand("reduce", "Build the insertion instance of a 3-CNF formula");
    reduce->add_option("cnf", c.input)->required();
    reduce->add_option("-o,--output", c.output, "Write PREFIX.drawing.json and PREFIX.sidecar.json");

    CLI::App* roundtrip = app.add_subcommand("roundtrip", "Compare insertability of the reduction with satisfiability");
    roundtrip->add_option("cnf", c.input)->required();
    roundtrip->add_option("--strategy", c.strategy)->check(CLI::IsMember({"oracle", "fpt"}))->capture_default_str();
    add_budget(roundtrip);
    add_output(roundtrip);

    CLI::App* extend = app.add_subcommand("extend", "Extend sigma to a pseudocircle");
    extend->add_option("arrangement", c.input)->required();
    extend->add_flag("--oracle", c.oracle, "Use exhaustive search instead of region growing");
    add_budget(extend);
    add_output(extend);

    CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
    gen->add_option("--kind", c.kind)->check(CLI::IsMember({"drawing", "arrangement", "snail"}))->capture_default_str();
    gen->add_option("--seed", c.seed)->capture_default_str();
    gen->add_option("--max-crossings", c.max_crossings)->check(CLI::NonNegativeNumber)->capture_default_str();
    gen->add_option("--max-curves", c.max_curves)->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_flag("--closed", c.closed, "Allow closed curves in drawings");
    gen->add_option("--max-circles", c.max_circles)->check(CLI::NonNegativeNumber)->capture_default_str();
    gen->add_option("--max-faces", c.max_faces)->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_option("--v-cell", c.v_cell, "Cell holding v for --kind snail")->capture_default_str();
    add_output(gen);

    CLI::App* render = app.add_subcommand("render", "Draw a drawing, its dual or an arrangement");
    render->add_option("input", c.input)->required();
    render->add_option("--what", c.what)->check(CLI::IsMember({"planarization", "dual"}))->capture_default_str();
    render->add_option("--format", c.format)->check(CLI::IsMember({"dot", "svg", "json"}));
    render->add_option("--u", c.u);
    render->add_option("--v", c.v);
    add_output(render);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    Runner r(c, out);
    try {
        if (validate->parsed()) return r.validate();
        if (insert->parsed()) return r.insert();
        if (reduce->parsed()) return r.reduce();
        if (roundtrip->parsed()) return r.roundtrip();
        if (extend->parsed()) return r.extend_cmd();
        if (gen->parsed()) return r.gen();
        return r.render();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const SearchTimeout& e) {
        err << e.what() << "\n";
        return kExitTimeout;
    } catch (const DrawingError& e) {
        err << "invalid drawing: " << e.what() << "\n";
        return e.kind() == DrawingErrorKind::ParseError ? kExitParse : kExitInvalid;
    } catch (const GeomError& e) {
        err << "invalid geometry: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const InvalidArrangement& e) {
        err << "invalid arrangement: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Invalid& e) {
        err << e.what() << "\n";
        return kExitInvalid;
    } catch (const TooManyVariables& e) {
        err << e.what() << "\n";
        return kExitInvalid;
    } catch (const LayoutOverflow& e) {
        err << e.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace edgeins
