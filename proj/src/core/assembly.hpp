#pragma once

#include "grid.hpp"
#include "sparse.hpp"

#include <array>
#include <functional>
#include <string>

namespace thinhomog {

/// Pointwise data of a weighted second-order weak form
///   a(u, v) = int A(p) grad u . grad v + m(p) u v
/// with natural boundary conditions. A is returned row-major, dim x dim,
/// symmetric.
struct WeakForm {
    std::function<void(const double* p, int dim, double* A)> diffusion;
    std::function<double(const double* p)> mass;
};

/// Discretized elliptic operator: the full system matrix (diffusion plus
/// weighted identity) and its companion mass matrix, with metadata naming the
/// problem it came from.
struct SparseOperator {
    SparseMatrix system; // stiffness + weighted mass
    SparseMatrix mass;   // weighted mass alone
    Grid grid;
    std::string problem;
    double epsilon = 0.0;
};

/// Assembles the weak form with multilinear elements and 2-point Gauss
/// quadrature per axis. Periodic axes identify opposite faces.
SparseOperator assemble_form(const Grid& grid, const WeakForm& form, std::string problem_tag,
                             const std::array<bool, 3>& periodic = {false, false, false});

/// Right-hand side vector b_i = int m(p) f(p) N_i for a callable f.
std::vector<double> assemble_rhs(const Grid& grid, const std::function<double(const double*)>& mass,
                                 const std::function<double(const double*)>& f,
                                 const std::array<bool, 3>& periodic = {false, false, false});

/// Flux right-hand side b_i = int (A(p) e_dir) . grad N_i, the source term of
/// the periodic corrector problems.
std::vector<double> assemble_flux_rhs(const Grid& grid,
                                      const std::function<void(const double*, int, double*)>& diffusion,
                                      int direction,
                                      const std::array<bool, 3>& periodic = {false, false, false});

/// Evaluates int fn(p, u(p), grad u(p)) over the grid by element quadrature
/// of the nodal field.
double integrate_field(const Field& field,
                       const std::function<double(const double* p, double value,
                                                  const double* grad)>& fn);

/// Samples a callable into a nodal field.
Field sample_field(const Grid& grid, const std::function<double(const double*)>& f,
                   std::string tag = {});

/// Smallest and largest Ritz values from a fixed number of plain Lanczos
/// steps on the matrix; used for SPD sanity checks.
struct RitzRange {
    double smallest = 0.0;
    double largest = 0.0;
};
RitzRange ritz_range(const SparseMatrix& matrix, int steps = 10, unsigned seed = 7);

} // namespace thinhomog
