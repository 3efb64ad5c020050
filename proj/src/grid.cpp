#include "vscl/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "vscl/errors.hpp"

namespace vscl {

Grid1D::Grid1D(GridKind kind_, double x_left_, double x_right_, int n_cells_)
    : kind(kind_), x_left(x_left_), x_right(x_right_), n_cells(n_cells_) {
    if (n_cells < 8) throw std::invalid_argument("Grid1D: need n_cells >= 8");
    if (!(x_right > x_left)) throw std::invalid_argument("Grid1D: empty extent");
    if (kind == GridKind::periodic) {
        const double span = x_right - x_left;
        if (std::abs(span - std::round(span)) > 1e-12 || std::round(span) < 1.0)
            throw std::invalid_argument(
                "Grid1D: periodic extent must be a positive integer number of periods");
    }
    dx = (x_right - x_left) / n_cells;
}

std::vector<double> Grid1D::centers() const {
    std::vector<double> c(static_cast<std::size_t>(n_cells));
    for (int j = 0; j < n_cells; ++j) c[static_cast<std::size_t>(j)] = center(j);
    return c;
}

Field::Field(const Grid1D& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.n_cells)
        throw std::invalid_argument("Field: value count != n_cells");
}

double Field::mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.dx;
}

double Field::max_abs() const {
    double s = 0.0;
    for (double v : values) s = std::max(s, std::abs(v));
    return s;
}

DiffNorms diff_norms(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw GridMismatch("diff_norms: fields on different grids");
    DiffNorms n;
    double l2sq = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        n.l1 += std::abs(d);
        l2sq += d * d;
        n.linf = std::max(n.linf, std::abs(d));
        n.signed_mass += d;
    }
    n.l1 *= a.grid.dx;
    n.l2 = std::sqrt(l2sq * a.grid.dx);
    n.signed_mass *= a.grid.dx;
    return n;
}

}  // namespace vscl
