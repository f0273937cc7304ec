#pragma once

#include <array>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgeins {

/// Signed variable index: +i is x_i, -i is not x_i (i >= 1).
using Literal = int;

struct CnfFormula {
    int num_vars = 0;
    std::vector<std::array<Literal, 3>> clauses;
};

/// Throws std::invalid_argument when a literal is 0 or out of range.
void check_formula(const CnfFormula& f);

/// DIMACS CNF with exactly three literals per clause. Throws ParseError.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
CnfFormula parse_dimacs(std::istream& in);
std::string to_dimacs(const CnfFormula& f);

enum class ClauseType { I, II, III, IV };
const char* to_string(ClauseType t);

struct Slot {
    enum class Kind { Pos, Neg, False } kind = Kind::False;
    int var = 0;  // 0 for False

    static Slot pos(int v) { return {Kind::Pos, v}; }
    static Slot neg(int v) { return {Kind::Neg, v}; }
    static Slot constant_false() { return {Kind::False, 0}; }
    friend bool operator==(const Slot&, const Slot&) = default;
};

/// Slot patterns: I (pos, pos, false), II (neg, pos, pos), III (pos, neg, neg),
/// IV (neg, neg, false).
struct TransformedClause {
    ClauseType type = ClauseType::II;
    std::array<Slot, 3> slots;
    friend bool operator==(const TransformedClause&, const TransformedClause&) = default;
};

struct TransformedFormula {
    int num_vars = 0;
    std::vector<TransformedClause> clauses;
};

/// Splits an all-positive or all-negative clause in two with the fresh
/// variable `fresh`; mixed clauses are reordered into slot order only.
std::vector<TransformedClause> transform_clause(const std::array<Literal, 3>& c, int fresh);

/// Fresh variables are n+1, n+2, ... in clause order.
TransformedFormula transform_formula(const CnfFormula& f);

class TooManyVariables : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxBruteForceVars = 24;

/// Truth-table satisfiability. Throws TooManyVariables above 24 variables.
bool brute_force_sat(const CnfFormula& f);
bool brute_force_sat(const TransformedFormula& f);

}  // namespace edgeins
