#pragma once

#include "assembly.hpp"
#include "grid.hpp"
#include "sparse.hpp"

#include <vector>

namespace thinhomog {

struct CgResult {
    std::vector<double> x;
    int iterations = 0;
    double residual = 0.0; // final relative residual
};

/// Jacobi-preconditioned conjugate gradient for SPD systems. The iteration
/// cap defaults to 50*sqrt(n). Throws SolverError on non-convergence.
CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& b, double rel_tol = 1e-10,
                  int max_iterations = -1, const std::vector<double>* initial_guess = nullptr);

/// Solves op.system * u = op.mass * rhs, the discrete form of the declared
/// problem with right-hand side rhs.
Field solve(const SparseOperator& op, const Field& rhs, double rel_tol = 1e-10,
            int* iterations = nullptr);

/// Solves op.system * u = b for an already-assembled dual vector b.
Field solve_dual(const SparseOperator& op, const std::vector<double>& b, double rel_tol = 1e-10,
                 int* iterations = nullptr, const Field* initial_guess = nullptr);

/// Applies the inverse of a weighted mass matrix (used to turn residual dual
/// vectors back into fields).
std::vector<double> mass_solve(const SparseMatrix& mass, const std::vector<double>& b,
                               double rel_tol = 1e-12);

} // namespace thinhomog
