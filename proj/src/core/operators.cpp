#include "operators.hpp"

#include "errors.hpp"
#include "util.hpp"

#include <cmath>
#include <string>

namespace thinhomog {

namespace {

int resolved_cells(const ThinDomainSpec& spec, const GridOptions& opts) {
    const double period = spec.shortest_period();
    const int needed = static_cast<int>(std::ceil(opts.cells_per_period / period));
    return std::max(opts.min_base_cells, needed);
}

void check_resolution(const ThinDomainSpec& spec, const Grid& grid, const char* what) {
    const double period = spec.shortest_period();
    const double limit = period / 8.0;
    for (int a = 0; a < spec.base_dim(); ++a) {
        if (grid.spacing(a) > limit * (1.0 + 1e-12)) {
            const int required = static_cast<int>(std::ceil(grid.extent[a] / limit));
            throw ResolutionError(std::string(what) +
                                      ": grid does not resolve the boundary oscillation; need at least " +
                                      std::to_string(required) + " cells per base axis",
                                  required + 1);
        }
    }
}

} // namespace

Grid base_grid_for(const ThinDomainSpec& spec, const GridOptions& opts) {
    const int cells = resolved_cells(spec, opts);
    return spec.base_dim() == 1 ? Grid::base_interval(cells) : Grid::base_rectangle(cells, cells);
}

Grid q_grid_for(const ThinDomainSpec& spec, const GridOptions& opts) {
    return Grid::over_reference(base_grid_for(spec, opts), opts.vertical_cells);
}

SparseOperator assemble_transformed(const ThinDomainSpec& spec, const Grid& q_grid) {
    if (!q_grid.has_vertical || q_grid.base_dim != spec.base_dim()) {
        throw std::invalid_argument("assemble_transformed: grid must cover Q for this spec");
    }
    check_resolution(spec, q_grid, "assemble_transformed");

    const int n = spec.base_dim();
    const double eps = spec.epsilon();
    WeakForm form;
    form.diffusion = [&spec, n, eps](const double* p, int dim, double* A) {
        const double K = spec.thickness(p);
        const double y = p[n];
        double grad_norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double dK = spec.thickness_partial(p, i);
            grad_norm2 += dK * dK;
            for (int j = 0; j < n; ++j) A[i * dim + j] = (i == j) ? K : 0.0;
            A[i * dim + n] = -y * dK;
            A[n * dim + i] = -y * dK;
        }
        A[n * dim + n] = y * y * grad_norm2 / K + 1.0 / (eps * eps * K);
    };
    form.mass = [&spec](const double* p) { return spec.thickness(p); };

    SparseOperator op = assemble_form(q_grid, form, "transformed");
    op.epsilon = eps;
    return op;
}

SparseOperator assemble_simplified(const ThinDomainSpec& spec, const Grid& q_grid) {
    if (!q_grid.has_vertical || q_grid.base_dim != spec.base_dim()) {
        throw std::invalid_argument("assemble_simplified: grid must cover Q for this spec");
    }
    check_resolution(spec, q_grid, "assemble_simplified");

    const int n = spec.base_dim();
    const double eps = spec.epsilon();
    WeakForm form;
    form.diffusion = [&spec, n, eps](const double* p, int dim, double* A) {
        const double K = spec.thickness(p);
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) A[i * dim + j] = 0.0;
        }
        for (int i = 0; i < n; ++i) A[i * dim + i] = K;
        A[n * dim + n] = 1.0 / (eps * eps * K);
    };
    form.mass = [&spec](const double* p) { return spec.thickness(p); };

    SparseOperator op = assemble_form(q_grid, form, "simplified");
    op.epsilon = eps;
    return op;
}

SparseOperator assemble_reduced(const ThinDomainSpec& spec, const Grid& base_grid) {
    if (base_grid.has_vertical || base_grid.base_dim != spec.base_dim()) {
        throw std::invalid_argument("assemble_reduced: grid must cover omega for this spec");
    }
    check_resolution(spec, base_grid, "assemble_reduced");

    const int n = spec.base_dim();
    WeakForm form;
    form.diffusion = [&spec, n](const double* p, int dim, double* A) {
        const double K = spec.thickness(p);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) A[i * dim + j] = (i == j) ? K : 0.0;
        }
    };
    form.mass = [&spec](const double* p) { return spec.thickness(p); };

    SparseOperator op = assemble_form(base_grid, form, "reduced");
    op.epsilon = spec.epsilon();
    return op;
}

SparseOperator assemble_limit(const Grid& base_grid, const double* A0, double weight) {
    if (base_grid.has_vertical) {
        throw std::invalid_argument("assemble_limit: grid must cover omega");
    }
    const int n = base_grid.base_dim;
    std::array<double, 4> tensor{0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < n * n; ++i) tensor[static_cast<size_t>(i)] = A0[i];

    WeakForm form;
    form.diffusion = [tensor, n](const double*, int dim, double* A) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) A[i * dim + j] = tensor[static_cast<size_t>(i * n + j)];
        }
    };
    form.mass = [weight](const double*) { return weight; };
    return assemble_form(base_grid, form, "limit");
}

std::function<double(const double*)> pull_back_to_q(
    const ThinDomainSpec& spec, const std::function<double(const double*)>& f_physical) {
    const int n = spec.base_dim();
    const double eps = spec.epsilon();
    return [&spec, f_physical, n, eps](const double* p) {
        double phys[3] = {p[0], p[1], p[2]};
        phys[n] = p[n] * eps * spec.thickness(p) - eps * spec.bottom_depth(p);
        return f_physical(phys);
    };
}

std::function<double(const double*)> project_f_hat(
    const ThinDomainSpec& spec, const std::function<double(const double*)>& f_physical) {
    const int n = spec.base_dim();
    const double eps = spec.epsilon();
    return [&spec, f_physical, n, eps](const double* x) {
        const double lo = -eps * spec.bottom_depth(x);
        const double hi = eps * spec.top_height(x);
        auto slice = [&](double y) {
            double p[3] = {x[0], x[1], 0.0};
            p[n] = y;
            return f_physical(p);
        };
        return simpson(slice, lo, hi, 64) / (hi - lo);
    };
}

Field project_f_hat(const ThinDomainSpec& spec, const Field& f_on_q) {
    (void)spec;
    Field out = vertical_average(f_on_q);
    out.tag = "fhat";
    return out;
}

Field average_thickness_scaled(const ThinDomainSpec& spec, const Field& f_on_q) {
    Field out = vertical_average(f_on_q);
    out.tag = "Mf";
    const std::int64_t count = out.size();
    for (std::int64_t i = 0; i < count; ++i) {
        const auto idx = out.grid.unflatten(i);
        double x[2] = {0.0, 0.0};
        for (int a = 0; a < out.grid.base_dim; ++a) x[a] = out.grid.coord(a, idx[a]);
        out[i] *= spec.thickness(x);
    }
    return out;
}

} // namespace thinhomog
