#include "edgeins/cnf.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <sstream>

namespace edgeins {

void check_formula(const CnfFormula& f) {
    if (f.num_vars < 0) throw std::invalid_argument("negative variable count");
    for (const auto& c : f.clauses) {
        for (Literal l : c) {
            if (l == 0 || std::abs(l) > f.num_vars) {
                throw std::invalid_argument("literal " + std::to_string(l) + " out of range");
            }
        }
    }
}

CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula f;
    bool header = false;
    int declared_clauses = 0;
    std::vector<Literal> pending;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c" || first[0] == 'c') continue;
        if (first == "%") break;
        if (first == "p") {
            std::string fmt;
            if (header || !(ls >> fmt >> f.num_vars >> declared_clauses) || fmt != "cnf" || f.num_vars < 0 ||
                declared_clauses < 0) {
                throw ParseError("line " + std::to_string(line_no) + ": bad problem line");
            }
            header = true;
            continue;
        }
        if (!header) throw ParseError("line " + std::to_string(line_no) + ": clause before problem line");
        ls.clear();
        ls.str(line);
        long long lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (pending.size() != 3) {
                    throw ParseError("line " + std::to_string(line_no) + ": clause with " +
                                     std::to_string(pending.size()) + " literals, expected 3");
                }
                f.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
                continue;
            }
            if (lit < -f.num_vars || lit > f.num_vars) {
                throw ParseError("line " + std::to_string(line_no) + ": literal " + std::to_string(lit) + " out of range");
            }
            pending.push_back(Literal(lit));
        }
        if (!ls.eof()) throw ParseError("line " + std::to_string(line_no) + ": expected integers");
    }
    if (!header) throw ParseError("missing problem line");
    if (!pending.empty()) throw ParseError("unterminated clause");
    if (int(f.clauses.size()) != declared_clauses) {
        throw ParseError("problem line declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(f.clauses.size()));
    }
    return f;
}

std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    return out.str();
}

const char* to_string(ClauseType t) {
    switch (t) {
    case ClauseType::I: return "I";
    case ClauseType::II: return "II";
    case ClauseType::III: return "III";
    case ClauseType::IV: return "IV";
    }
    return "?";
}

std::vector<TransformedClause> transform_clause(const std::array<Literal, 3>& c, int fresh) {
    int positives = int(std::count_if(c.begin(), c.end(), [](Literal l) { return l > 0; }));
    auto var = [](Literal l) { return std::abs(l); };
    if (positives == 3) {
        return {{ClauseType::I, {Slot::pos(var(c[2])), Slot::pos(fresh), Slot::constant_false()}},
                {ClauseType::II, {Slot::neg(fresh), Slot::pos(var(c[0])), Slot::pos(var(c[1]))}}};
    }
    if (positives == 0) {
        return {{ClauseType::III, {Slot::pos(fresh), Slot::neg(var(c[0])), Slot::neg(var(c[1]))}},
                {ClauseType::IV, {Slot::neg(var(c[2])), Slot::neg(fresh), Slot::constant_false()}}};
    }
    // Mixed: negatives first for II, positives first for III; stable otherwise.
    std::array<Literal, 3> sorted = c;
    bool type2 = positives == 2;
    std::stable_partition(sorted.begin(), sorted.end(), [&](Literal l) { return type2 ? l < 0 : l > 0; });
    TransformedClause t;
    t.type = type2 ? ClauseType::II : ClauseType::III;
    for (int i = 0; i < 3; ++i) t.slots[i] = sorted[i] > 0 ? Slot::pos(var(sorted[i])) : Slot::neg(var(sorted[i]));
    return {t};
}

TransformedFormula transform_formula(const CnfFormula& f) {
    check_formula(f);
    TransformedFormula out;
    out.num_vars = f.num_vars;
    for (const auto& c : f.clauses) {
        auto parts = transform_clause(c, out.num_vars + 1);
        if (parts.size() == 2) ++out.num_vars;
        out.clauses.insert(out.clauses.end(), parts.begin(), parts.end());
    }
    return out;
}

namespace {

template <class Eval>
bool search_assignments(int n, Eval eval) {
    if (n > kMaxBruteForceVars) {
        throw TooManyVariables(std::to_string(n) + " variables exceed the limit of " + std::to_string(kMaxBruteForceVars));
    }
    for (std::uint32_t a = 0; a < (std::uint32_t(1) << n); ++a) {
        if (eval(a)) return true;
    }
    return false;
}

bool value(std::uint32_t a, int var) { return (a >> (var - 1)) & 1; }

}  // namespace

bool brute_force_sat(const CnfFormula& f) {
    check_formula(f);
    return search_assignments(f.num_vars, [&](std::uint32_t a) {
        for (const auto& c : f.clauses) {
            bool sat = false;
            for (Literal l : c) sat = sat || (l > 0 ? value(a, l) : !value(a, -l));
            if (!sat) return false;
        }
        return true;
    });
}

bool brute_force_sat(const TransformedFormula& f) {
    return search_assignments(f.num_vars, [&](std::uint32_t a) {
        for (const auto& c : f.clauses) {
            bool sat = false;
            for (const Slot& s : c.slots) {
                if (s.kind == Slot::Kind::Pos) sat = sat || value(a, s.var);
                if (s.kind == Slot::Kind::Neg) sat = sat || !value(a, s.var);
            }
            if (!sat) return false;
        }
        return true;
    });
}

}  // namespace edgeins
