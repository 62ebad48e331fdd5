#include "spectral.hpp"

#include "errors.hpp"
#include "solve.hpp"
#include "util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace thinhomog {

namespace {

/// Eigenvalues and eigenvectors of a symmetric tridiagonal matrix by QL with
/// implicit shifts.
void tridiag_eigen(std::vector<double> d, std::vector<double> e, std::vector<double>& eigvals,
                   std::vector<std::vector<double>>& eigvecs) {
    const int n = static_cast<int>(d.size());
    e.resize(static_cast<size_t>(n), 0.0); // e[i] couples i and i+1; e[n-1] unused
    std::vector<std::vector<double>> z(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) z[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[static_cast<size_t>(m)]) + std::fabs(d[static_cast<size_t>(m) + 1]);
                if (std::fabs(e[static_cast<size_t>(m)]) <= 1e-15 * dd) break;
            }
            if (m != l) {
                if (++iter > 50) throw SolverError("tridiag_eigen: too many QL iterations", 0.0, iter);
                double g = (d[static_cast<size_t>(l) + 1] - d[static_cast<size_t>(l)]) / (2.0 * e[static_cast<size_t>(l)]);
                double r = std::hypot(g, 1.0);
                g = d[static_cast<size_t>(m)] - d[static_cast<size_t>(l)] +
                    e[static_cast<size_t>(l)] / (g + (g >= 0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[static_cast<size_t>(i)];
                    const double b = c * e[static_cast<size_t>(i)];
                    r = std::hypot(f, g);
                    e[static_cast<size_t>(i) + 1] = r;
                    if (r == 0.0) {
                        d[static_cast<size_t>(i) + 1] -= p;
                        e[static_cast<size_t>(m)] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[static_cast<size_t>(i) + 1] - p;
                    r = (d[static_cast<size_t>(i)] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[static_cast<size_t>(i) + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = z[static_cast<size_t>(k)][static_cast<size_t>(i) + 1];
                        z[static_cast<size_t>(k)][static_cast<size_t>(i) + 1] = s * z[static_cast<size_t>(k)][static_cast<size_t>(i)] + c * f;
                        z[static_cast<size_t>(k)][static_cast<size_t>(i)] = c * z[static_cast<size_t>(k)][static_cast<size_t>(i)] - s * f;
                    }
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[static_cast<size_t>(l)] -= p;
                e[static_cast<size_t>(l)] = g;
                e[static_cast<size_t>(m)] = 0.0;
            }
        } while (m != l);
    }

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&d](int a, int b) { return d[static_cast<size_t>(a)] < d[static_cast<size_t>(b)]; });
    eigvals.resize(static_cast<size_t>(n));
    eigvecs.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int k = 0; k < n; ++k) {
        eigvals[static_cast<size_t>(k)] = d[static_cast<size_t>(order[static_cast<size_t>(k)])];
        for (int i = 0; i < n; ++i) {
            eigvecs[static_cast<size_t>(k)][static_cast<size_t>(i)] = z[static_cast<size_t>(i)][static_cast<size_t>(order[static_cast<size_t>(k)])];
        }
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<EigenPair> lanczos_attempt(const SparseOperator& op, int k, std::uint64_t seed,
                                       int steps, bool* breakdown) {
    const std::int64_t n = op.system.size();
    const SparseMatrix& M = op.mass;
    *breakdown = false;

    Rng rng(seed);
    std::vector<std::vector<double>> V;  // Lanczos basis
    std::vector<std::vector<double>> MV; // cached M * V
    std::vector<double> alpha, beta;

    std::vector<double> v(static_cast<size_t>(n));
    for (double& x : v) x = rng.normal();
    std::vector<double> Mv = M.multiply(v);
    double norm = std::sqrt(std::max(0.0, dot(v, Mv)));
    for (size_t i = 0; i < v.size(); ++i) {
        v[i] /= norm;
        Mv[i] /= norm;
    }
    V.push_back(v);
    MV.push_back(Mv);

    for (int j = 0; j < steps; ++j) {
        const CgResult inner = cg_solve(op.system, MV.back(), 1e-12);
        std::vector<double> w = inner.x;
        const double a = dot(w, MV.back());
        alpha.push_back(a);
        for (size_t i = 0; i < w.size(); ++i) {
            w[i] -= a * V.back()[i];
            if (j > 0) w[i] -= beta.back() * V[V.size() - 2][i];
        }
        // full reorthogonalization, twice
        for (int pass = 0; pass < 2; ++pass) {
            for (size_t b = 0; b < V.size(); ++b) {
                const double proj = dot(w, MV[b]);
                for (size_t i = 0; i < w.size(); ++i) w[i] -= proj * V[b][i];
            }
        }
        std::vector<double> Mw = M.multiply(w);
        const double b = std::sqrt(std::max(0.0, dot(w, Mw)));
        if (!(b > 1e-13)) {
            *breakdown = true;
            break;
        }
        if (static_cast<int>(alpha.size()) >= steps) break;
        beta.push_back(b);
        for (size_t i = 0; i < w.size(); ++i) {
            w[i] /= b;
            Mw[i] /= b;
        }
        V.push_back(std::move(w));
        MV.push_back(std::move(Mw));
    }

    const int m = static_cast<int>(alpha.size());
    if (m == 0) return {};
    std::vector<double> theta;
    std::vector<std::vector<double>> s;
    tridiag_eigen(alpha, beta, theta, s);

    // shift-invert: largest theta of system^{-1} mass are the smallest
    // eigenvalues lambda = 1/theta of the pencil
    std::vector<EigenPair> pairs;
    for (int l = m - 1; l >= 0 && static_cast<int>(pairs.size()) < k; --l) {
        if (theta[static_cast<size_t>(l)] <= 0.0) continue;
        EigenPair pair;
        pair.value = 1.0 / theta[static_cast<size_t>(l)];
        pair.function = Field(op.grid, "eigenfunction");
        for (int j = 0; j < m; ++j) {
            const double c = s[static_cast<size_t>(l)][static_cast<size_t>(j)];
            for (std::int64_t i = 0; i < n; ++i) {
                pair.function[i] += c * V[static_cast<size_t>(j)][static_cast<size_t>(i)];
            }
        }
        // normalize in the mass inner product and measure the residual
        std::vector<double> Mphi = M.multiply(pair.function.values);
        const double phi_norm = std::sqrt(std::max(1e-300, dot(pair.function.values, Mphi)));
        for (size_t i = 0; i < pair.function.values.size(); ++i) {
            pair.function.values[i] /= phi_norm;
            Mphi[i] /= phi_norm;
        }
        std::vector<double> r(static_cast<size_t>(n));
        op.system.multiply(pair.function.values.data(), r.data());
        for (std::int64_t i = 0; i < n; ++i) r[static_cast<size_t>(i)] -= pair.value * Mphi[static_cast<size_t>(i)];
        const std::vector<double> Minv_r = mass_solve(M, r, 1e-10);
        pair.residual = std::sqrt(std::max(0.0, dot(Minv_r, r)));
        pairs.push_back(std::move(pair));
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const EigenPair& a, const EigenPair& b) { return a.value < b.value; });
    for (size_t i = 0; i < pairs.size(); ++i) pairs[i].index = static_cast<int>(i) + 1;
    return pairs;
}

} // namespace

std::vector<EigenPair> smallest_eigenpairs(const SparseOperator& op, int k, std::uint64_t seed,
                                           double residual_tol) {
    if (k < 1 || k > 12) throw std::invalid_argument("smallest_eigenpairs: k must be in [1, 12]");
    const int n = static_cast<int>(op.system.size());
    int steps = std::min(n, std::max(3 * k + 20, 40));
    for (int restart = 0; restart < 3; ++restart) {
        bool breakdown = false;
        std::vector<EigenPair> pairs =
            lanczos_attempt(op, k, seed + 1000003ull * restart, steps, &breakdown);
        bool converged = static_cast<int>(pairs.size()) >= k;
        if (converged) {
            for (int i = 0; i < k; ++i) {
                converged = converged && pairs[static_cast<size_t>(i)].residual <=
                                             residual_tol * std::max(1.0, pairs[static_cast<size_t>(i)].value);
            }
        }
        if (converged) {
            pairs.resize(static_cast<size_t>(k));
            return pairs;
        }
        steps = std::min(n, steps + 3 * k + 20);
    }
    throw SolverError("smallest_eigenpairs: Lanczos failed to converge after 3 restarts", 0.0, steps);
}

namespace {

double vertical_energy_fraction(const ThinDomainSpec& spec, const Field& phi) {
    const int nb = spec.base_dim();
    const double eps = spec.epsilon();
    double horizontal = 0.0;
    double vertical = 0.0;
    horizontal = integrate_field(phi, [&spec, nb](const double* p, double, const double* grad) {
        double acc = 0.0;
        for (int i = 0; i < nb; ++i) acc += grad[i] * grad[i];
        return spec.thickness(p) * acc;
    });
    vertical = integrate_field(phi, [&spec, nb, eps](const double* p, double, const double* grad) {
        const double K = spec.thickness(p);
        return grad[nb] * grad[nb] / (eps * eps * K);
    });
    const double total = horizontal + vertical;
    return total > 1e-12 ? vertical / total : 0.0;
}

} // namespace

std::vector<SpectralRow> spectral_convergence_study(const ThinDomainSpec& spec_template,
                                                    const std::vector<double>& eps_list,
                                                    const EffectiveModel& model,
                                                    const SpectralStudyOptions& opts) {
    if (opts.n_max < 1 || opts.n_max > 12) {
        throw std::invalid_argument("spectral_convergence_study: n_max must be in [1, 12]");
    }

    // reference limit eigenvalues on a fine grid
    const Grid ref_grid = spec_template.base_dim() == 1
                              ? Grid::base_interval(opts.reference_cells)
                              : Grid::base_rectangle(opts.reference_cells / 4, opts.reference_cells / 4);
    const SparseOperator ref_limit = assemble_limit(ref_grid, model.tensor_data(), model.weight);
    const std::vector<EigenPair> ref_pairs = smallest_eigenpairs(ref_limit, opts.n_max, opts.seed);

    std::vector<SpectralRow> rows;
    for (double eps : eps_list) {
        const ThinDomainSpec spec = spec_template.with_epsilon(eps);
        const Grid q_grid = q_grid_for(spec, opts.grid);
        Grid base_grid = q_grid;
        base_grid.has_vertical = false;
        base_grid.cells[spec.base_dim()] = 1;

        const SparseOperator op_eps = assemble_transformed(spec, q_grid);
        const SparseOperator op_limit = assemble_limit(base_grid, model.tensor_data(), model.weight);

        const int batch = std::min(12, opts.n_max + 2);
        const std::vector<EigenPair> eps_pairs = smallest_eigenpairs(op_eps, batch, opts.seed);
        const std::vector<EigenPair> limit_pairs = smallest_eigenpairs(op_limit, opts.n_max, opts.seed);

        const RescaledNorms norms(spec, model.weight);

        for (int n = 1; n <= opts.n_max; ++n) {
            const EigenPair& pe = eps_pairs[static_cast<size_t>(n - 1)];
            SpectralRow row;
            row.epsilon = eps;
            row.n = n;
            row.lambda_eps = pe.value;
            row.lambda_0 = ref_pairs[static_cast<size_t>(n - 1)].value;
            row.gap = std::fabs(row.lambda_eps - row.lambda_0);
            row.vertical_fraction = vertical_energy_fraction(spec, pe.function);
            if (row.vertical_fraction > 0.5) {
                throw StudyError("spectral_convergence_study: mode " + std::to_string(n) +
                                 " at epsilon=" + format_double(eps) +
                                 " is a vertical mode; use a smaller epsilon or fewer modes");
            }

            // project the eps-eigenfunction onto the limit eigenspace of the
            // matching cluster, then measure the extended H1 distance
            const double lam0 = limit_pairs[static_cast<size_t>(n - 1)].value;
            Field projected(base_grid, "projected_limit_mode");
            for (int m = 1; m <= opts.n_max; ++m) {
                const EigenPair& pm = limit_pairs[static_cast<size_t>(m - 1)];
                if (std::fabs(pm.value - lam0) > opts.cluster_rel_tol * std::max(1.0, lam0)) continue;
                const Field extended = extend_vertical(pm.function, q_grid);
                const std::vector<double> Me = op_eps.mass.multiply(extended.values);
                const double coef = dot(pe.function.values, Me);
                for (std::int64_t i = 0; i < projected.size(); ++i) {
                    projected[i] += coef * pm.function[i];
                }
            }
            const double proj_norm = norms.l2_limit(projected);
            if (proj_norm > 1e-12) {
                for (double& v : projected.values) v /= proj_norm;
            }
            row.eigfun_dist = norms.h1_diff(pe.function, projected);
            rows.push_back(row);
        }
    }
    return rows;
}

ResolventDefectRow resolvent_defect(const ThinDomainSpec& spec, const EffectiveModel& model,
                                    const ResolventOptions& opts) {
    const Grid q_grid = q_grid_for(spec, opts.grid);
    Grid base_grid = q_grid;
    base_grid.has_vertical = false;
    base_grid.cells[spec.base_dim()] = 1;

    const SparseOperator op_eps = assemble_transformed(spec, q_grid);
    const SparseOperator op_limit = assemble_limit(base_grid, model.tensor_data(), model.weight);
    const RescaledNorms norms(spec, model.weight);

    Rng rng(opts.seed);
    double defect_max = 0.0;
    double defect_sum = 0.0;
    for (int probe = 0; probe < opts.probes; ++probe) {
        Field f(q_grid, "probe");
        for (double& v : f.values) v = rng.normal();
        const std::vector<double> Mf = op_eps.mass.multiply(f.values);
        const double nrm = std::sqrt(std::max(1e-300, dot(f.values, Mf)));
        for (double& v : f.values) v /= nrm;

        const Field u_eps = solve(op_eps, f);
        Field averaged = average_thickness_scaled(spec, f);
        for (double& v : averaged.values) v /= model.weight;
        const Field u_limit = solve(op_limit, averaged);

        const double defect = norms.l2_diff(u_eps, u_limit);
        defect_max = std::max(defect_max, defect);
        defect_sum += defect;
    }

    ResolventDefectRow row;
    row.epsilon = spec.epsilon();
    row.defect_max = defect_max;
    row.defect_mean = opts.probes > 0 ? defect_sum / opts.probes : 0.0;
    row.probes = opts.probes;
    row.seed = opts.seed;
    return row;
}

} // namespace thinhomog
