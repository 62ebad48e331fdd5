#pragma once

#include "grid.hpp"
#include "homogenize.hpp"
#include "profile.hpp"

#include <array>
#include <functional>
#include <vector>

namespace thinhomog {

/// Correctors of the periodic auxiliary problem on a cell, with the
/// homogenized tensor assembled from their averages.
struct CellSolution {
    std::vector<Field> correctors;   // one per direction, mean-zero, periodic
    std::array<double, 4> tensor{};  // row-major dim x dim
    Grid mesh;
    double residual = 0.0; // relative CG residual of the worst solve
};

/// Symmetric matrix coefficient on the cell, row-major dim x dim.
using CellCoefficient = std::function<void(const double* z, int dim, double* A)>;

/// Solves the periodic corrector problems
///   -div(A(z) grad(X^i - z_i)) = 0,  X^i periodic, mean zero,
/// on a cell of the given origin/length with multilinear elements, and
/// assembles the homogenized tensor a_ij = mean((A (e_j - grad X^j))_i).
CellSolution cell_problem(const CellCoefficient& coefficient, int dim, double origin, double length,
                          int cells_per_axis);

/// Scalar-coefficient convenience overload: A(z) = G(z) * I.
CellSolution cell_problem(const std::function<double(const double*)>& G, int dim, double origin,
                          double length, int cells_per_axis);

struct QuasiPeriodicOptions {
    std::vector<double> box_sizes = {4.0, 8.0, 16.0}; // half-widths L of [-L, L]^n
    int cells_per_unit = 256;                          // 1D default; reduced in 2D
};

/// Truncated-box approximation of the quasi-periodic corrector problem:
/// periodic cell problems on growing boxes [-L, L]^n, returning the
/// largest-box model with the inter-box deviation as the error proxy.
/// Throws AccuracyError when the deviation fails to decrease.
EffectiveModel quasiperiodic_A0(const BoundaryProfile& g, const BoundaryProfile& h, int dim,
                                const QuasiPeriodicOptions& opts = {});

struct ReiteratedOptions {
    int samples_per_period = 128; // frozen-coordinate samples of the slow profile
    int cells_per_axis = 4096;    // inner/outer cell resolution (1D)
    int cells_per_axis_nd = 64;   // cell resolution per axis in 2D
    int samples_per_period_nd = 16;
};

/// Two-stage averaging for boundaries with different scale exponents: the
/// fast profile is homogenized with the slow coordinate frozen, the sampled
/// intermediate tensor is interpolated, and the result is homogenized again
/// over the slow period.
EffectiveModel reiterated_A0(const BoundaryProfile& fast, const BoundaryProfile& slow, int dim,
                             const ReiteratedOptions& opts = {});

} // namespace thinhomog
