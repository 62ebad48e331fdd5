#include "ladder.hpp"

#include "solve.hpp"
#include "util.hpp"

#include <cmath>

namespace thinhomog {

namespace {

/// ||| f2 |||_{Z_eps}^2 by nested Simpson, resolved against the coefficient
/// oscillation so the normalization is grid-independent.
double rescaled_l2_sq(const ThinDomainSpec& spec, const std::function<double(const double*)>& f2) {
    const int periods = static_cast<int>(std::ceil(1.0 / spec.shortest_period()));
    const int nx = std::max(512, 32 * periods);
    if (spec.base_dim() == 1) {
        auto outer = [&](double x) {
            auto inner = [&](double y) {
                const double p[3] = {x, y, 0.0};
                const double v = f2(p);
                return v * v;
            };
            const double px[1] = {x};
            return spec.thickness(px) * simpson(inner, 0.0, 1.0, 64);
        };
        return simpson(outer, 0.0, 1.0, nx);
    }
    const int nx2 = std::max(128, 16 * periods);
    auto outer = [&](double x1) {
        auto mid = [&](double x2) {
            auto inner = [&](double y) {
                const double p[3] = {x1, x2, y};
                const double v = f2(p);
                return v * v;
            };
            const double px[2] = {x1, x2};
            return spec.thickness(px) * simpson(inner, 0.0, 1.0, 32);
        };
        return simpson(mid, 0.0, 1.0, nx2);
    };
    return simpson(outer, 0.0, 1.0, nx2);
}

} // namespace

LadderRow verify_ladder(const ThinDomainSpec& spec,
                        const std::function<double(const double*)>& f_physical,
                        const LadderOptions& opts) {
    LadderRow row;
    row.epsilon = spec.epsilon();
    row.in_hypothesis = spec.in_hypothesis();

    const OscillationReport eta = oscillation_magnitude(spec);
    row.eta = eta.total;

    auto f2 = pull_back_to_q(spec, f_physical);
    double scale = 1.0;
    if (opts.normalize_rhs) {
        scale = 1.0 / std::sqrt(rescaled_l2_sq(spec, f2));
    }
    auto f2_scaled = [f2, scale](const double* p) { return scale * f2(p); };

    const Grid q_grid = q_grid_for(spec, opts.grid);
    Grid base_grid = q_grid;
    base_grid.has_vertical = false;
    base_grid.cells[spec.base_dim()] = 1;

    const SparseOperator op_t = assemble_transformed(spec, q_grid);
    const SparseOperator op_s = assemble_simplified(spec, q_grid);
    const SparseOperator op_r = assemble_reduced(spec, base_grid);

    auto K = [&spec](const double* p) { return spec.thickness(p); };
    const std::vector<double> rhs_q = assemble_rhs(q_grid, K, f2_scaled);
    auto fhat = [&spec, f2_scaled](const double* x) {
        auto slice = [&](double y) {
            const double p[3] = {x[0], x[1], 0.0};
            double q[3] = {p[0], p[1], p[2]};
            q[spec.base_dim()] = y;
            return f2_scaled(q);
        };
        return simpson(slice, 0.0, 1.0, 64);
    };
    const std::vector<double> rhs_base = assemble_rhs(base_grid, K, fhat);

    int iters = 0;
    int it = 0;
    const Field u_transformed = solve_dual(op_t, rhs_q, opts.solver_tol, &it);
    iters += it;
    const Field w_simplified = solve_dual(op_s, rhs_q, opts.solver_tol, &it);
    iters += it;
    const Field w_reduced = solve_dual(op_r, rhs_base, opts.solver_tol, &it);
    iters += it;
    row.solver_iters = iters;

    const double weight = 1.0; // ladder norms carry no limit weight
    RescaledNorms norms(spec, weight);

    Field diff_ts = u_transformed;
    for (std::int64_t i = 0; i < diff_ts.size(); ++i) diff_ts[i] -= w_simplified[i];
    row.dist_transformed_simplified = norms.ladder(diff_ts);
    row.dist_simplified_reduced = norms.ladder_diff(w_simplified, w_reduced);
    row.dist_total = norms.ladder_diff(u_transformed, w_reduced);

    const double eta_floor = std::max(row.eta, 1e-300);
    row.ratio_total_over_eta = row.dist_total * row.dist_total / eta_floor;
    row.ratio_ts_over_eta = row.dist_transformed_simplified * row.dist_transformed_simplified / eta_floor;
    row.ratio_sr = row.dist_simplified_reduced * row.dist_simplified_reduced;
    return row;
}

} // namespace thinhomog
