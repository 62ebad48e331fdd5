#include "cell.hpp"

#include "assembly.hpp"
#include "errors.hpp"
#include "solve.hpp"
#include "util.hpp"

#include <cmath>
#include <stdexcept>

namespace thinhomog {

namespace {

constexpr std::array<bool, 3> kPeriodicAll{true, true, true};

/// Copies representative values onto the redundant far-face nodes so the
/// returned field is periodic nodewise.
void unwrap_periodic(Field& f) {
    const Grid& g = f.grid;
    const std::int64_t n = g.node_count();
    for (std::int64_t i = 0; i < n; ++i) {
        auto idx = g.unflatten(i);
        bool redundant = false;
        for (int a = 0; a < g.dim(); ++a) {
            if (idx[a] == g.cells[a]) {
                idx[a] = 0;
                redundant = true;
            }
        }
        if (redundant) f[i] = f[g.flat_index(idx)];
    }
}

/// Plain cell mean of a periodic nodal field (uniform weights over the
/// distinct nodes).
double periodic_mean(const Field& f) {
    const Grid& g = f.grid;
    double sum = 0.0;
    std::int64_t count = 0;
    const std::int64_t n = g.node_count();
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = g.unflatten(i);
        bool redundant = false;
        for (int a = 0; a < g.dim(); ++a) redundant = redundant || (idx[a] == g.cells[a]);
        if (redundant) continue;
        sum += f[i];
        ++count;
    }
    return sum / static_cast<double>(count);
}

/// Pins the first degree of freedom of a singular periodic stiffness matrix:
/// row and column 0 are cleared and the diagonal set to one. The corrector is
/// unique up to constants, so any representative works; the mean is fixed
/// afterwards.
SparseMatrix pin_first_node(const SparseMatrix& S) {
    std::vector<std::int64_t> rows, cols;
    std::vector<double> vals;
    rows.reserve(static_cast<size_t>(S.nonzeros()) + 1);
    cols.reserve(static_cast<size_t>(S.nonzeros()) + 1);
    vals.reserve(static_cast<size_t>(S.nonzeros()) + 1);
    const auto& rp = S.row_ptr();
    const auto& ci = S.col_index();
    const auto& v = S.values();
    for (std::int64_t r = 0; r < S.size(); ++r) {
        for (std::int64_t k = rp[static_cast<size_t>(r)]; k < rp[static_cast<size_t>(r) + 1]; ++k) {
            const std::int64_t c = ci[static_cast<size_t>(k)];
            if (r == 0 || c == 0) continue;
            rows.push_back(r);
            cols.push_back(c);
            vals.push_back(v[static_cast<size_t>(k)]);
        }
    }
    rows.push_back(0);
    cols.push_back(0);
    vals.push_back(1.0);
    return SparseMatrix::from_triplets(S.size(), std::move(rows), std::move(cols), std::move(vals));
}

} // namespace

CellSolution cell_problem(const CellCoefficient& coefficient, int dim, double origin, double length,
                          int cells_per_axis) {
    const Grid grid = Grid::cell(dim, origin, length, cells_per_axis);

    WeakForm form;
    form.diffusion = [&coefficient](const double* p, int d, double* A) { coefficient(p, d, A); };
    form.mass = [](const double*) { return 0.0; };
    SparseOperator stiffness = assemble_form(grid, form, "cell", kPeriodicAll);
    const SparseMatrix pinned = pin_first_node(stiffness.system);

    CellSolution out;
    out.mesh = grid;
    double volume = 1.0;
    for (int a = 0; a < dim; ++a) volume *= length;

    for (int j = 0; j < dim; ++j) {
        std::vector<double> rhs = assemble_flux_rhs(grid, coefficient, j, kPeriodicAll);
        rhs[0] = 0.0; // pinned dof
        CgResult cg;
        try {
            cg = cg_solve(pinned, rhs, 1e-11);
        } catch (const SolverError& e) {
            throw SolverError(std::string("cell_problem: corrector solve failed (") + e.what() + ")",
                              e.residual, e.iterations);
        }
        out.residual = std::max(out.residual, cg.residual);

        Field corrector(grid, "corrector_" + std::to_string(j + 1));
        corrector.values = std::move(cg.x);
        unwrap_periodic(corrector);
        const double mean = periodic_mean(corrector);
        for (double& v : corrector.values) v -= mean;

        // a_ij = mean over the cell of (A (e_j - grad X^j))_i
        double column[3] = {0.0, 0.0, 0.0};
        for (int i = 0; i < dim; ++i) {
            const int row = i;
            column[row] = integrate_field(corrector, [&coefficient, dim, j, row](const double* p,
                                                                                 double,
                                                                                 const double* grad) {
                double A[9];
                coefficient(p, dim, A);
                double flux = 0.0;
                for (int b = 0; b < dim; ++b) {
                    const double ej = (b == j) ? 1.0 : 0.0;
                    flux += A[row * dim + b] * (ej - grad[b]);
                }
                return flux;
            }) / volume;
        }
        for (int i = 0; i < dim; ++i) out.tensor[static_cast<size_t>(i * dim + j)] = column[i];
        out.correctors.push_back(std::move(corrector));
    }
    return out;
}

CellSolution cell_problem(const std::function<double(const double*)>& G, int dim, double origin,
                          double length, int cells_per_axis) {
    CellCoefficient coeff = [&G](const double* z, int d, double* A) {
        const double g = G(z);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) A[i * d + j] = (i == j) ? g : 0.0;
        }
    };
    return cell_problem(coeff, dim, origin, length, cells_per_axis);
}

EffectiveModel quasiperiodic_A0(const BoundaryProfile& g, const BoundaryProfile& h, int dim,
                                const QuasiPeriodicOptions& opts) {
    if (opts.box_sizes.size() < 2) {
        throw std::invalid_argument("quasiperiodic_A0: need at least two box sizes");
    }
    for (size_t i = 1; i < opts.box_sizes.size(); ++i) {
        if (opts.box_sizes[i] <= opts.box_sizes[i - 1]) {
            throw std::invalid_argument("quasiperiodic_A0: box sizes must increase");
        }
    }
    auto G = [&g, &h, dim](const double* z) { return g.value_nd(z, dim) + h.value_nd(z, dim); };

    EffectiveModel model;
    model.regime = Regime::QuasiPeriodicTruncated;
    model.dim = dim;
    model.weight = 0.0; // filled by callers that know the profile means

    const int per_unit = dim == 1 ? opts.cells_per_unit : std::min(opts.cells_per_unit, 32);
    std::array<double, 4> prev{};
    double prev_dev = std::numeric_limits<double>::infinity();
    for (size_t b = 0; b < opts.box_sizes.size(); ++b) {
        const double L = opts.box_sizes[b];
        const int cells = std::max(8, static_cast<int>(std::lround(2.0 * L * per_unit)));
        const CellSolution cell = cell_problem(G, dim, -L, 2.0 * L, cells);
        if (b > 0) {
            double dev = 0.0;
            for (int k = 0; k < dim * dim; ++k) {
                dev = std::max(dev, std::fabs(cell.tensor[static_cast<size_t>(k)] - prev[static_cast<size_t>(k)]));
            }
            if (b > 1 && dev > prev_dev) {
                throw AccuracyError("quasiperiodic_A0: inter-box deviation did not decrease", dev,
                                    prev[0], cell.tensor[0]);
            }
            prev_dev = dev;
            model.error_proxy = dev;
        }
        prev = cell.tensor;
        model.tensor = cell.tensor;
        model.quadrature_depth = cells;
    }
    model.coefficient = model.tensor[0];
    return model;
}

namespace {

/// Periodic Catmull-Rom interpolation of equally spaced samples over one
/// period.
double catmull_rom_periodic(const std::vector<double>& samples, double period, double t) {
    const int m = static_cast<int>(samples.size());
    const double u = (t / period) * m;
    double ufloor = std::floor(u);
    int i = static_cast<int>(ufloor);
    const double s = u - ufloor;
    auto at = [&](int k) { return samples[static_cast<size_t>(((k % m) + m) % m)]; };
    const double p0 = at(i - 1);
    const double p1 = at(i);
    const double p2 = at(i + 1);
    const double p3 = at(i + 2);
    return 0.5 * ((2.0 * p1) + (-p0 + p2) * s + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * s * s +
                  (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * s * s * s);
}

} // namespace

EffectiveModel reiterated_A0(const BoundaryProfile& fast, const BoundaryProfile& slow, int dim,
                             const ReiteratedOptions& opts) {
    EffectiveModel model;
    model.regime = Regime::Reiterated;
    model.dim = dim;
    model.weight = 0.0; // filled by callers that know the profile means

    if (dim == 1) {
        // Stage 1: freeze the slow coordinate, homogenize the fast profile.
        const int m = opts.samples_per_period;
        std::vector<std::vector<double>> stage1(1, std::vector<double>(static_cast<size_t>(m)));
        for (int s = 0; s < m; ++s) {
            const double x = slow.period() * s / m;
            const double frozen = slow(x);
            auto G = [&fast, frozen](const double* z) { return frozen + fast(z[0]); };
            const CellSolution cell = cell_problem(G, 1, 0.0, fast.period(), opts.cells_per_axis);
            stage1[0][static_cast<size_t>(s)] = cell.tensor[0];
        }
        // Stage 2: homogenize the interpolated intermediate coefficient.
        auto A1 = [&](const double* x) {
            return catmull_rom_periodic(stage1[0], slow.period(), x[0]);
        };
        const CellSolution outer = cell_problem(A1, 1, 0.0, slow.period(), opts.cells_per_axis);
        model.tensor = outer.tensor;
        model.coefficient = outer.tensor[0];
        model.error_proxy = outer.residual;
        model.quadrature_depth = m;
        return model;
    }

    // Stage 1 on a sample lattice of the slow cell; each entry of the
    // intermediate tensor is interpolated separately in stage 2.
    const int m = opts.samples_per_period_nd;
    std::vector<std::vector<double>> entries(4, std::vector<double>(static_cast<size_t>(m) * m));
    for (int s2 = 0; s2 < m; ++s2) {
        for (int s1 = 0; s1 < m; ++s1) {
            double x[2] = {slow.period() * s1 / m, slow.period() * s2 / m};
            const double frozen = slow.value_nd(x, 2);
            auto G = [&fast, frozen](const double* z) { return frozen + fast.value_nd(z, 2); };
            const CellSolution cell = cell_problem(G, 2, 0.0, fast.period(), opts.cells_per_axis_nd);
            for (int k = 0; k < 4; ++k) {
                entries[static_cast<size_t>(k)][static_cast<size_t>(s2) * m + s1] =
                    cell.tensor[static_cast<size_t>(k)];
            }
        }
    }
    auto interp_entry = [&](int k, const double* x) {
        // tensor-product Catmull-Rom: interpolate rows in x1, then in x2
        const int mm = m;
        std::vector<double> column(static_cast<size_t>(mm));
        for (int s2 = 0; s2 < mm; ++s2) {
            std::vector<double> row(static_cast<size_t>(mm));
            for (int s1 = 0; s1 < mm; ++s1) {
                row[static_cast<size_t>(s1)] = entries[static_cast<size_t>(k)][static_cast<size_t>(s2) * mm + s1];
            }
            column[static_cast<size_t>(s2)] = catmull_rom_periodic(row, slow.period(), x[0]);
        }
        return catmull_rom_periodic(column, slow.period(), x[1]);
    };
    CellCoefficient A1 = [&](const double* x, int d, double* A) {
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) A[i * d + j] = interp_entry(i * d + j, x);
        }
    };
    const CellSolution outer = cell_problem(A1, 2, 0.0, slow.period(), opts.cells_per_axis_nd);
    model.tensor = outer.tensor;
    model.coefficient = outer.tensor[0];
    model.error_proxy = outer.residual;
    model.quadrature_depth = m;
    return model;
}

} // namespace thinhomog
