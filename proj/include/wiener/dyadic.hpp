#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace wiener {

// Dyadic time grid on [0, a]: points t_k = a*k/2^n for k = 0..2^n.
// Stored as (a, n); times are materialized only on evaluation so that
// repeated transforms cannot drift.
struct DyadicGrid {
    double horizon;
    int level;

    DyadicGrid(double a, int n);

    std::size_t count() const { return std::size_t{1} << level; }
    double spacing() const { return horizon / static_cast<double>(count()); }
    double time(std::size_t k) const {
        return horizon * static_cast<double>(k) / static_cast<double>(count());
    }

    bool operator==(const DyadicGrid&) const = default;
};

// A path known through its values at the grid points t_1..t_{2^n};
// x(0) = 0 is implicit. Immutable by convention: transforms return
// new values.
struct GridPath {
    DyadicGrid grid;
    std::vector<double> levels; // levels[k-1] = x(t_k), k = 1..2^n

    GridPath(DyadicGrid g, std::vector<double> values);

    double value(std::size_t k) const { return k == 0 ? 0.0 : levels[k - 1]; }
};

// The increment coordinates of a path: increments[k-1] = x(t_k) - x(t_{k-1}).
// Bijective with GridPath through cumulative summation.
struct IncrementVector {
    DyadicGrid grid;
    std::vector<double> increments;

    IncrementVector(DyadicGrid g, std::vector<double> incs);
};

IncrementVector project(const GridPath& path);
GridPath cumulate(const IncrementVector& inc);

// Piecewise-linear refinement onto a finer dyadic grid. Values at common
// grid points are copied bit-exactly; new points are linear interpolants.
GridPath refine(const GridPath& path, int to_level);

// Sub-sampling onto a coarser dyadic grid (keeps values at the coarse
// grid's points, bit-exactly).
GridPath restrict_path(const GridPath& path, int to_level);

// Serialization: JSON object {a, n, levels[]} and CSV rows (t, x(t)).
// Decimal round-trips are bit-exact (shortest-representation floats).
std::string grid_path_to_json(const GridPath& path);
GridPath grid_path_from_json(const std::string& text);
std::string grid_path_to_csv(const GridPath& path);
GridPath grid_path_from_csv(const std::string& text);

} // namespace wiener
