#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wiener/dyadic.hpp"

namespace wiener {

struct PathSetSpec;

// ||x|| <= radius (uniform norm over the grid points).
struct SupBall {
    double radius; // >= 0; radius 0 leaves only the null path
};

// ||x - center|| <= radius around a piecewise-linear reference path.
struct Tube {
    GridPath center;
    double radius; // > 0
};

// Discrete alpha-Hoelder ball: all grid pairs with 0 < |t-s| < window
// (the anchor t = 0, x(0) = 0 included) satisfy |x(t)-x(s)| <= bound*|t-s|^alpha.
struct HolderBall {
    double alpha;        // in (0, 1/2)
    double bound;        // lambda >= 0
    double window = 1.0; // pair-distance cap
};

struct Intersection {
    std::vector<PathSetSpec> parts;
};

struct SetUnion {
    std::vector<PathSetSpec> parts;
};

// Only valid inside boolean combinations; a top-level complement is
// never a compact set.
struct Complement {
    std::shared_ptr<const PathSetSpec> inner;
};

struct PathSetSpec {
    std::variant<SupBall, Tube, HolderBall, Intersection, SetUnion, Complement> node;

    static PathSetSpec sup_ball(double m);
    static PathSetSpec tube(GridPath center, double r);
    static PathSetSpec holder_ball(double alpha, double lambda, double window = 1.0);
    static PathSetSpec intersection(std::vector<PathSetSpec> parts);
    static PathSetSpec set_union(std::vector<PathSetSpec> parts);
    static PathSetSpec complement(PathSetSpec inner);

    // Annulus SupBall(outer) \ SupBall(inner).
    static PathSetSpec annulus(double inner_m, double outer_m);
};

// Validates catalog membership: top level must be SupBall/Tube/HolderBall
// or a finite boolean combination; complements only inside combinations.
// Throws std::invalid_argument naming the offending field.
void validate_catalog(const PathSetSpec& spec);

// Structural emptiness (used to certify disjointness with an empty set):
// recognizes annuli with inner radius >= outer radius and boolean
// combinations thereof. Conservative: false means "not provably empty".
bool provably_empty(const PathSetSpec& spec);

// Explicit description of the projected set at the grid level: decides
// whether the path with the given increments lies in the set, using
// partial sums for levels and the discrete Hoelder seminorm.
bool member_grid(const PathSetSpec& spec, const IncrementVector& inc);

struct HolderValue {
    double seminorm = 0.0;
    // attaining grid pair (s, t), s < t; absent when no pair is within the window
    bool has_pair = false;
    std::size_t s_index = 0;
    std::size_t t_index = 0;
    double s_time = 0.0;
    double t_time = 0.0;
};

// max of |x(t)-x(s)| / |t-s|^alpha over grid pairs with 0 < |t-s| < window.
HolderValue holder_seminorm(const GridPath& path, double alpha, double window = 1.0);

struct ModulusReport {
    double modulus;         // max over sample of sup_{|t-s| <= delta} |x(t)-x(s)|
    double certified_bound; // lambda * delta^alpha
};

// Worst-case oscillation at scale delta over a sample of members
// (Arzela-Ascoli equicontinuity diagnostic). Requires 0 < delta < window;
// every sample path must be a member at its own grid level.
ModulusReport equicontinuity_modulus(const HolderBall& ball, double delta,
                                     std::span<const GridPath> sample);

// Closedness diagnostic: all paths on a common grid, each a member,
// sup-distances Cauchy toward the final element (taken as the limit
// representative). Returns true iff the limit is itself a member.
bool closedness_check(const HolderBall& ball, std::span<const GridPath> sequence);

// Certified lower bound on the sup-distance between members of two
// SupBall/Tube sets at the given grid level:
// max(0, max_k |c1(t_k) - c2(t_k)| - r1 - r2). Positive => disjoint.
double separation(const PathSetSpec& a, const PathSetSpec& b, double horizon, int level);

// Versioned JSON encoding; specs appear verbatim in all reports.
std::string path_set_to_json(const PathSetSpec& spec);
PathSetSpec path_set_from_json(const std::string& text);

// --- grid-level evaluation machinery (shared with the measure engine) ---

// A spec compiled against one grid: thresholds and tube centers are
// materialized once, membership is then a pure predicate over the path
// values (values[0..2^n], values[0] = 0).
class CompiledSet {
public:
    CompiledSet(const PathSetSpec& spec, const DyadicGrid& grid);
    CompiledSet(const PathSetSpec& spec, double spacing, std::size_t point_count,
                double horizon_hint);

    bool contains(std::span<const double> values) const;

    struct Node;

private:
    std::shared_ptr<const Node> root_;
};

// Discrete seminorm over a uniform grid (values[0] = x(0)); shared by
// GridPath and the infinite-horizon paths.
HolderValue discrete_seminorm(std::span<const double> values, double spacing,
                              double alpha, double window);

} // namespace wiener
