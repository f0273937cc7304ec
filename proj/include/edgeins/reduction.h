#pragma once

#include "edgeins/cnf.h"
#include "edgeins/drawing.h"
#include "edgeins/geom.h"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgeins {

/// The six-arc drawing with cells X, A1, A2, A3, B1, B2, B3, Y. X and Y cannot
/// be joined by an arc that keeps the drawing simple.
struct SnailTemplate {
    // Curves a1, a2, a3, b1, b2, b3.
    CurveSet curves;
    // A point strictly inside each of the eight cells, keyed by cell name.
    // B2 is the unbounded cell.
    std::map<std::string, Point> cells;
    // The part of b2 between its crossings with a2 and b3.
    Polyline b2_star;
    long scale = 1;
};

/// Integer coordinates, multiplied by `scale`.
SnailTemplate build_snail(long scale = 1);

class LayoutOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coordinates beyond this bound (in absolute value) raise LayoutOverflow.
inline constexpr long kMaxCoordinate = 1'000'000'000;

struct LiteralArc {
    int clause = -1;  // index into TransformedFormula::clauses
    int slot = -1;
    std::string color;
};

struct VariableGadget {
    int variable = 0;
    // Literal edges of negative occurrences (ending on r1) and positive ones
    // (ending on l1).
    std::vector<std::string> p_arcs;
    std::vector<std::string> n_arcs;
    Polyline kappa;
};

struct ClauseGadget {
    int clause = -1;
    ClauseType type = ClauseType::II;
    std::string gamma_a, gamma_b, gamma_c, dg;
    int layer = 0;  // 0 is the innermost ring around v
};

struct ReductionInstance {
    TransformedFormula formula;
    CurveSet drawing;
    std::string u = "u";
    std::string v = "v";
    std::vector<LiteralArc> literal_map;
    // f_1 .. f_|F| in order along b2.
    std::vector<std::string> frame;
    std::string r1, r2, l1, l2;
    std::vector<VariableGadget> variables;
    std::vector<ClauseGadget> clauses;
    // Sample points of the snail cells and of R, R_l, R_r.
    std::map<std::string, Point> regions;
    Polyline kappa_f;
    // Polylines of the walls r1, r2, l1, l2.
    std::map<std::string, Polyline> lines;
    long snail_scale = 1;
};

/// Snail with u in X, v in R and the frame F (|F| = mI + mIV + 4), where
/// gadgets for the transformed formula are placed inside R.
ReductionInstance build_instance(const CnfFormula& f);

/// The frame alone: snail, u, v and the |F| = mI + mIV + 4 frame arcs, without
/// variable or clause gadgets.
ReductionInstance build_frame(int m_type1, int m_type4);

/// Structural checks of an instance; returns one message per violated
/// invariant (empty when all hold).
std::vector<std::string> check_instance(const ReductionInstance& inst);

/// Variable gadget with |P| = p, |N| = q inside a closed frame whose left and
/// right sides act as the walls; u below, v above.
/// Colors: "frame", "P1".., "N1"...
CurveSet standalone_variable_gadget(int p, int q);

/// Clause gadget inside a closed frame whose sides act as the walls; u below,
/// v above. Colors: "frame", "ga", "gb", "gc", "dg".
CurveSet standalone_clause_gadget();

}  // namespace edgeins
