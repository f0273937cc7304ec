#pragma once

#include "edgeins/drawing.h"
#include "edgeins/geom.h"
#include "edgeins/insertion.h"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgeins {

/// Closed curves plus an open arc sigma from u (first point) to v (last point).
struct Arrangement {
    CurveSet circles;
    Polyline sigma;
};

class InvalidArrangement : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sigma crosses some circle three or more times.
class TooManyCrossings : public InvalidArrangement {
public:
    using InvalidArrangement::InvalidArrangement;
};

/// A property that the decision procedure relies on failed to hold.
class InternalInvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr const char* kSigmaId = "sigma";

/// Planarization of the circles and sigma with per-face inside flags.
struct PreparedArrangement {
    Planarization map;
    // Circles in input order; circle i has color circle_color[i].
    std::vector<std::string> circle_ids;
    std::vector<int> circle_color;
    int sigma_color = -1;
    int u = -1, v = -1;
    int u_face = -1, v_face = -1;
    // inside[f][i]: face f lies inside circle i.
    std::vector<std::vector<char>> inside;
    // Circle index of each color, -1 for sigma.
    std::vector<int> circle_of_color;

    std::size_t face_count() const { return map.faces.size(); }
};

/// Validates and planarizes. Throws InvalidArrangement, TooManyCrossings or
/// GeomError.
PreparedArrangement prepare(const Arrangement& a);

struct CircleClassification {
    // Circle indices, ascending.
    std::vector<int> c0, c1, c2;
    // Crossings of sigma with each circle.
    std::vector<int> count;
};

CircleClassification classify(const PreparedArrangement& pa);

/// Faces of the forbidden region; sigma's edges always count as part of it.
struct Region {
    std::vector<char> faces;
    int iteration = 0;

    bool contains(int f) const { return faces[f] != 0; }
    int size() const;
};

/// R_0, or nullopt when v's face is already cut off from u.
std::optional<Region> initial_region(const PreparedArrangement& pa, const CircleClassification& cls);

struct GrowResult {
    enum class Status { Grown, Fixpoint, Infeasible } status = Status::Fixpoint;
    Region region;     // the grown region (Grown only)
    int circle = -1;   // circle whose unreachable cells were added
};

const char* to_string(GrowResult::Status s);

/// One growth step. Circles of C0 and C1 are scanned in ascending index, or
/// descending when `reverse` is set.
GrowResult grow(const PreparedArrangement& pa, const CircleClassification& cls, const Region& r, bool reverse = false);

/// For every C0 circle, the complement faces inside it are edge-connected
/// (or absent).
bool c0_complement_connected(const PreparedArrangement& pa, const CircleClassification& cls, const Region& r);

/// The complement is one edge-connected set containing the faces of u and v.
bool region_well_formed(const PreparedArrangement& pa, const Region& r);

struct CertificateCrossing {
    std::string circle;
    int edge = -1;

    friend bool operator==(const CertificateCrossing&, const CertificateCrossing&) = default;
    friend auto operator<=>(const CertificateCrossing&, const CertificateCrossing&) = default;
};

struct ExtensionCertificate {
    enum class Side { Left, Right, None } side = Side::None;  // None: found by the oracle
    std::vector<CertificateCrossing> crossings;
    // Faces visited from u's face to v's face; one more than crossings.
    std::vector<int> faces;
};

const char* to_string(ExtensionCertificate::Side s);

struct ExtendOptions {
    bool reverse_scan = false;
    // Check c0_complement_connected and region_well_formed after every step.
    bool check_invariants = true;
};

struct ExtensionResult {
    bool yes = false;
    std::optional<ExtensionCertificate> certificate;
    enum class Stage { Initial, Growth, Fixpoint } stage = Stage::Fixpoint;
    int grow_steps = 0;
    // R_0, R_1, ..., last region reached.
    std::vector<Region> trace;
};

const char* to_string(ExtensionResult::Stage s);

/// Decides whether sigma extends to a closed curve that keeps the
/// arrangement property. Throws InternalInvariantViolation.
ExtensionResult extend(const PreparedArrangement& pa, const ExtendOptions& options = {});

/// Checks the face walk against the map and the per-class crossing counts.
bool verify_certificate(const PreparedArrangement& pa, const ExtensionCertificate& c);

/// Exhaustive search over face-simple dual paths. Sound, not complete.
/// Throws SearchTimeout.
std::optional<ExtensionCertificate> oracle_extend(const PreparedArrangement& pa,
                                                  std::uint64_t node_budget = kDefaultNodeBudget);

/// Axis-parallel rectangles on a small grid plus a random staircase sigma;
/// retries until the result is a valid arrangement with at most `max_faces`
/// faces.
Arrangement random_arrangement(std::mt19937& rng, int max_circles, int max_faces = 40);

/// Every circle crosses sigma twice; v is sealed off by two circles and sigma.
Arrangement obstruction_two_crossings();

/// One circle crosses sigma once; every way out of it crosses that circle
/// three times.
Arrangement obstruction_one_crossing();

}  // namespace edgeins
