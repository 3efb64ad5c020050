#pragma once

#include <cmath>
#include <vector>

namespace vscl {

enum class GridKind { periodic, line };

/// Uniform 1D finite-volume grid with cell-average semantics. Periodic grids
/// must span a positive integer number of flux periods (period 1).
struct Grid1D {
    GridKind kind = GridKind::periodic;
    double x_left = 0.0;
    double x_right = 1.0;
    int n_cells = 0;
    double dx = 0.0;

    Grid1D() = default;
    Grid1D(GridKind kind, double x_left, double x_right, int n_cells);

    double center(int j) const { return x_left + (j + 0.5) * dx; }
    double interface(int j) const { return x_left + j * dx; }  // j = 0..n_cells
    double measure() const { return x_right - x_left; }
    std::vector<double> centers() const;

    friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

/// One state value per cell.
struct Field {
    Grid1D grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid1D& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.n_cells), fill) {}
    Field(const Grid1D& g, std::vector<double> v);

    double mass() const;
    double max_abs() const;
    int size() const { return grid.n_cells; }
};

struct DiffNorms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
    double signed_mass = 0.0;
};

/// Discrete norms of a - b with cell measure dx. Throws GridMismatch.
DiffNorms diff_norms(const Field& a, const Field& b);

}  // namespace vscl
