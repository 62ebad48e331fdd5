#include "grid.hpp"

#include <cmath>
#include <stdexcept>

namespace thinhomog {

Grid Grid::base_interval(int cells) {
    if (cells < 1) throw std::invalid_argument("grid needs at least one cell per axis");
    Grid g;
    g.base_dim = 1;
    g.has_vertical = false;
    g.cells = {cells, 1, 1};
    return g;
}

Grid Grid::base_rectangle(int cells_x1, int cells_x2) {
    if (cells_x1 < 1 || cells_x2 < 1) {
        throw std::invalid_argument("grid needs at least one cell per axis");
    }
    Grid g;
    g.base_dim = 2;
    g.has_vertical = false;
    g.cells = {cells_x1, cells_x2, 1};
    return g;
}

Grid Grid::over_reference(const Grid& base, int vertical_cells) {
    if (base.has_vertical) throw std::invalid_argument("base grid already has a vertical axis");
    if (vertical_cells < 1) throw std::invalid_argument("grid needs at least one cell per axis");
    Grid g = base;
    g.has_vertical = true;
    g.cells[base.base_dim] = vertical_cells;
    g.origin[base.base_dim] = 0.0;
    g.extent[base.base_dim] = 1.0;
    return g;
}

Grid Grid::cell(int dim, double origin, double length, int cells_per_axis) {
    if (dim < 1 || dim > 2) throw std::invalid_argument("cell dimension must be 1 or 2");
    if (cells_per_axis < 2) throw std::invalid_argument("cell grid needs at least two cells per axis");
    if (!(length > 0.0)) throw std::invalid_argument("cell length must be positive");
    Grid g;
    g.base_dim = dim;
    g.has_vertical = false;
    for (int a = 0; a < dim; ++a) {
        g.cells[a] = cells_per_axis;
        g.origin[a] = origin;
        g.extent[a] = length;
    }
    return g;
}

std::int64_t Grid::node_count() const {
    std::int64_t n = 1;
    for (int a = 0; a < dim(); ++a) n *= nodes(a);
    return n;
}

std::int64_t Grid::flat_index(const std::array<int, 3>& idx) const {
    std::int64_t flat = 0;
    for (int a = dim() - 1; a >= 0; --a) flat = flat * nodes(a) + idx[a];
    return flat;
}

std::array<int, 3> Grid::unflatten(std::int64_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < dim(); ++a) {
        idx[a] = static_cast<int>(flat % nodes(a));
        flat /= nodes(a);
    }
    return idx;
}

bool Grid::same_layout(const Grid& other) const {
    if (base_dim != other.base_dim || has_vertical != other.has_vertical) return false;
    for (int a = 0; a < dim(); ++a) {
        if (cells[a] != other.cells[a] || origin[a] != other.origin[a] ||
            extent[a] != other.extent[a]) {
            return false;
        }
    }
    return true;
}

bool Field::all_finite() const {
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
}

Field extend_vertical(const Field& base_field, const Grid& q_grid) {
    if (q_grid.base_dim != base_field.grid.base_dim || !q_grid.has_vertical ||
        base_field.grid.has_vertical) {
        throw std::invalid_argument("extend_vertical: incompatible grids");
    }
    for (int a = 0; a < q_grid.base_dim; ++a) {
        if (q_grid.cells[a] != base_field.grid.cells[a]) {
            throw std::invalid_argument("extend_vertical: base cells must match the Q grid");
        }
    }
    Field out(q_grid, base_field.tag);
    const std::int64_t base_count = base_field.size();
    const int ny = q_grid.nodes(q_grid.base_dim);
    for (int iy = 0; iy < ny; ++iy) {
        for (std::int64_t ib = 0; ib < base_count; ++ib) {
            out[iy * base_count + ib] = base_field[ib];
        }
    }
    return out;
}

Field vertical_average(const Field& q_field) {
    const Grid& g = q_field.grid;
    if (!g.has_vertical) throw std::invalid_argument("vertical_average: field is not on a Q grid");
    Grid base = g;
    base.has_vertical = false;
    base.cells[g.base_dim] = 1;
    Field out(base, q_field.tag);
    const std::int64_t base_count = base.node_count();
    const int ny = g.nodes(g.base_dim);
    const double hy = g.spacing(g.base_dim);
    for (std::int64_t ib = 0; ib < base_count; ++ib) {
        double acc = 0.0;
        for (int iy = 0; iy < ny; ++iy) {
            const double w = (iy == 0 || iy == ny - 1) ? 0.5 : 1.0;
            acc += w * q_field[iy * base_count + ib];
        }
        out[ib] = acc * hy;
    }
    return out;
}

} // namespace thinhomog
