#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace thinhomog {

/// Tensor-product grid over a box. Axes 0..base_dim-1 span the base domain;
/// when has_vertical is set, axis base_dim spans the reference vertical (0,1).
/// Axis 0 varies fastest in the flat node ordering.
struct Grid {
    int base_dim = 1;
    bool has_vertical = false;
    std::array<int, 3> cells{1, 1, 1};
    std::array<double, 3> origin{0.0, 0.0, 0.0};
    std::array<double, 3> extent{1.0, 1.0, 1.0};

    static Grid base_interval(int cells);
    static Grid base_rectangle(int cells_x1, int cells_x2);
    static Grid over_reference(const Grid& base, int vertical_cells);
    static Grid cell(int dim, double origin, double length, int cells_per_axis);

    int dim() const { return base_dim + (has_vertical ? 1 : 0); }
    int nodes(int axis) const { return cells[axis] + 1; }
    double spacing(int axis) const { return extent[axis] / cells[axis]; }
    std::int64_t node_count() const;
    double coord(int axis, int i) const { return origin[axis] + extent[axis] * i / cells[axis]; }

    std::int64_t flat_index(const std::array<int, 3>& idx) const;
    std::array<int, 3> unflatten(std::int64_t flat) const;

    bool same_layout(const Grid& other) const;
};

/// Nodal scalar values on a Grid, tagged with the unknown it approximates.
struct Field {
    Grid grid;
    std::vector<double> values;
    std::string tag;

    Field() = default;
    Field(const Grid& g, std::string tag_ = {})
        : grid(g), values(static_cast<size_t>(g.node_count()), 0.0), tag(std::move(tag_)) {}

    double& operator[](std::int64_t i) { return values[static_cast<size_t>(i)]; }
    double operator[](std::int64_t i) const { return values[static_cast<size_t>(i)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }

    bool all_finite() const;
    double max_abs() const;
};

/// Extends a base-domain field constantly in the vertical direction (E_eps).
Field extend_vertical(const Field& base_field, const Grid& q_grid);

/// Vertical average over the reference interval: integral over y in (0,1) of
/// the nodal field, by the grid's trapezoid rule. Exact for y-constant fields.
Field vertical_average(const Field& q_field);

} // namespace thinhomog
