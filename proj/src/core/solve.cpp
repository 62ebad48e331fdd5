#include "solve.hpp"

#include "errors.hpp"

#include <cmath>
#include <stdexcept>

namespace thinhomog {

CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& b, double rel_tol,
                  int max_iterations, const std::vector<double>* initial_guess) {
    const std::int64_t n = A.size();
    if (static_cast<std::int64_t>(b.size()) != n) {
        throw std::invalid_argument("cg_solve: right-hand side has wrong length");
    }
    if (max_iterations < 0) {
        max_iterations = static_cast<int>(50.0 * std::sqrt(static_cast<double>(n))) + 10;
    }

    CgResult result;
    result.x.assign(static_cast<size_t>(n), 0.0);

    double b_norm = 0.0;
    for (double v : b) b_norm += v * v;
    b_norm = std::sqrt(b_norm);
    if (b_norm == 0.0) {
        return result;
    }

    std::vector<double> inv_diag = A.diagonal();
    for (double& d : inv_diag) {
        if (d <= 0.0) throw SolverError("cg_solve: nonpositive diagonal entry", 0.0, 0);
        d = 1.0 / d;
    }

    std::vector<double> r(b);
    if (initial_guess && static_cast<std::int64_t>(initial_guess->size()) == n) {
        result.x = *initial_guess;
        std::vector<double> Ax(static_cast<size_t>(n));
        A.multiply(result.x.data(), Ax.data());
        for (std::int64_t i = 0; i < n; ++i) r[static_cast<size_t>(i)] -= Ax[static_cast<size_t>(i)];
    }

    std::vector<double> z(static_cast<size_t>(n));
    std::vector<double> p(static_cast<size_t>(n));
    std::vector<double> Ap(static_cast<size_t>(n));

    for (std::int64_t i = 0; i < n; ++i) z[static_cast<size_t>(i)] = inv_diag[static_cast<size_t>(i)] * r[static_cast<size_t>(i)];
    p = z;
    double rz = 0.0;
    for (std::int64_t i = 0; i < n; ++i) rz += r[static_cast<size_t>(i)] * z[static_cast<size_t>(i)];

    double res_norm = 0.0;
    for (double v : r) res_norm += v * v;
    res_norm = std::sqrt(res_norm);

    int iter = 0;
    while (res_norm / b_norm > rel_tol) {
        if (iter >= max_iterations) {
            throw SolverError("cg_solve: no convergence within iteration cap", res_norm / b_norm,
                              iter);
        }
        A.multiply(p.data(), Ap.data());
        double pAp = 0.0;
        for (std::int64_t i = 0; i < n; ++i) pAp += p[static_cast<size_t>(i)] * Ap[static_cast<size_t>(i)];
        if (pAp <= 0.0) {
            throw SolverError("cg_solve: matrix is not positive definite", res_norm / b_norm, iter);
        }
        const double alpha = rz / pAp;
        for (std::int64_t i = 0; i < n; ++i) {
            result.x[static_cast<size_t>(i)] += alpha * p[static_cast<size_t>(i)];
            r[static_cast<size_t>(i)] -= alpha * Ap[static_cast<size_t>(i)];
        }
        for (std::int64_t i = 0; i < n; ++i) z[static_cast<size_t>(i)] = inv_diag[static_cast<size_t>(i)] * r[static_cast<size_t>(i)];
        double rz_next = 0.0;
        for (std::int64_t i = 0; i < n; ++i) rz_next += r[static_cast<size_t>(i)] * z[static_cast<size_t>(i)];
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::int64_t i = 0; i < n; ++i) {
            p[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] + beta * p[static_cast<size_t>(i)];
        }
        res_norm = 0.0;
        for (double v : r) res_norm += v * v;
        res_norm = std::sqrt(res_norm);
        ++iter;
    }

    result.iterations = iter;
    result.residual = res_norm / b_norm;
    return result;
}

Field solve(const SparseOperator& op, const Field& rhs, double rel_tol, int* iterations) {
    if (!rhs.all_finite()) throw std::invalid_argument("solve: right-hand side has non-finite values");
    if (!rhs.grid.same_layout(op.grid)) {
        throw std::invalid_argument("solve: right-hand side grid does not match the operator");
    }
    const std::vector<double> b = op.mass.multiply(rhs.values);
    return solve_dual(op, b, rel_tol, iterations);
}

Field solve_dual(const SparseOperator& op, const std::vector<double>& b, double rel_tol,
                 int* iterations, const Field* initial_guess) {
    CgResult cg = cg_solve(op.system, b, rel_tol, -1,
                           initial_guess ? &initial_guess->values : nullptr);
    Field u(op.grid, "solution:" + op.problem);
    u.values = std::move(cg.x);
    if (iterations) *iterations = cg.iterations;
    return u;
}

std::vector<double> mass_solve(const SparseMatrix& mass, const std::vector<double>& b,
                               double rel_tol) {
    return cg_solve(mass, b, rel_tol).x;
}

} // namespace thinhomog
