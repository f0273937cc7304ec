#pragma once

#include "edgeins/drawing.h"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace edgeins {

enum class Strategy {
    // Face-simple depth-first search with a used-color set, on the input map.
    Oracle,
    // Kernelize first, then search walks with failure memoization on
    // (face, color set).
    Fpt,
};

const char* to_string(Strategy s);

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

class SearchTimeout : public std::runtime_error {
public:
    explicit SearchTimeout(std::uint64_t budget)
        : std::runtime_error("Timeout: node budget of " + std::to_string(budget) + " expansions exceeded"),
          budget_(budget) {}
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t budget_;
};

struct SearchOptions {
    std::uint64_t node_budget = kDefaultNodeBudget;
    // Colors the path may not cross, on top of those incident to u or v.
    std::vector<int> blocked_colors;
};

struct InsertionStats {
    std::uint64_t nodes_expanded = 0;
    int vertices = 0;   // original vertices of the searched map
    int edges = 0;      // colors of the searched map
    int crossings = 0;  // crossing vertices of the searched map
};

struct InsertionDecision {
    bool yes = false;
    std::optional<Witness> witness;
    InsertionStats stats;
    // Map the witness refers to: the kernel for Fpt, the input for Oracle.
    std::shared_ptr<const Planarization> searched;
    int u = -1;
    int v = -1;
};

/// Removes uncrossed edges and every isolated vertex other than u and v,
/// repeatedly, keeping names. u and v are located in the result by name.
/// Closed curves and the colors in `keep` are never removed.
Planarization kernelize(const Planarization& p, int u, int v, const std::vector<int>& keep = {});

/// Removes the given colors and then the listed vertices (which must have no
/// remaining edges), merging faces combinatorially.
Planarization remove_elements(const Planarization& p, const std::vector<int>& colors, const std::vector<int>& vertices);

/// Decides whether edge uv can be inserted. Throws SearchTimeout.
InsertionDecision insertable(const Planarization& p, int u, int v, Strategy strategy,
                             const SearchOptions& options = {});

/// All face-simple heterochromatic dual paths from a u-face to a v-face (the
/// path stops at its first v-face), at most `limit`, in DFS order with arcs
/// tried by ascending (color, arc id). Throws SearchTimeout.
std::vector<Witness> enumerate_witnesses(const Planarization& p, int u, int v, std::size_t limit,
                                         const SearchOptions& options = {});

struct RandomDrawingOptions {
    int max_curves = 8;
    int grid = 14;
    int max_crossings = 8;
    // Allow closed curves among the random polylines.
    bool closed = false;
};

/// Random polylines on an integer grid plus isolated points "u" and "v" at
/// half-integer coordinates, redrawn until the overlay is a valid simple
/// drawing with at most `max_crossings` crossings.
CurveSet random_drawing(std::mt19937& rng, const RandomDrawingOptions& options = {});

/// Shortcuts repeated faces out of a heterochromatic walk.
Witness shortcut_walk(const ColoredDual& d, const Witness& walk);

}  // namespace edgeins
