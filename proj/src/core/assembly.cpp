#include "assembly.hpp"

#include "util.hpp"

#include <cmath>
#include <stdexcept>

namespace thinhomog {

namespace {

// 2-point Gauss rule on [0,1].
constexpr double kGaussOffset = 0.28867513459481287; // 1/(2*sqrt(3))
const double kGaussPoints[2] = {0.5 - kGaussOffset, 0.5 + kGaussOffset};

struct ElementContext {
    int dim = 0;
    std::array<int, 3> cells{};
    std::array<int, 3> nodes{};
    std::array<double, 3> h{};
    int verts = 0; // 2^dim
};

ElementContext make_context(const Grid& grid) {
    ElementContext ctx;
    ctx.dim = grid.dim();
    ctx.verts = 1 << ctx.dim;
    for (int a = 0; a < ctx.dim; ++a) {
        ctx.cells[a] = grid.cells[a];
        ctx.nodes[a] = grid.nodes(a);
        ctx.h[a] = grid.spacing(a);
    }
    return ctx;
}

// Global flat index of an element vertex, wrapping periodic axes.
std::int64_t vertex_index(const Grid& grid, const ElementContext& ctx,
                          const std::array<int, 3>& elem, int vert,
                          const std::array<bool, 3>& periodic) {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < ctx.dim; ++a) {
        int i = elem[a] + ((vert >> a) & 1);
        if (periodic[a] && i == ctx.cells[a]) i = 0;
        idx[a] = i;
    }
    return grid.flat_index(idx);
}

// Shape values and physical gradients at a local quadrature point.
void shapes_at(const ElementContext& ctx, const std::array<double, 3>& t, double* N,
               double* dN /* verts x dim */) {
    for (int v = 0; v < ctx.verts; ++v) {
        double val = 1.0;
        for (int a = 0; a < ctx.dim; ++a) {
            val *= ((v >> a) & 1) ? t[a] : (1.0 - t[a]);
        }
        N[v] = val;
        for (int a = 0; a < ctx.dim; ++a) {
            double g = ((v >> a) & 1) ? 1.0 : -1.0;
            for (int b = 0; b < ctx.dim; ++b) {
                if (b == a) continue;
                g *= ((v >> b) & 1) ? t[b] : (1.0 - t[b]);
            }
            dN[v * ctx.dim + a] = g / ctx.h[a];
        }
    }
}

template <typename PerQuadPoint>
void for_each_quad_point(const Grid& grid, const ElementContext& ctx, PerQuadPoint&& body) {
    std::array<int, 3> elem{0, 0, 0};
    std::int64_t elem_count = 1;
    for (int a = 0; a < ctx.dim; ++a) elem_count *= ctx.cells[a];

    double vol = 1.0;
    for (int a = 0; a < ctx.dim; ++a) vol *= ctx.h[a];
    const int quads = 1 << ctx.dim;
    const double weight = vol / quads;

    for (std::int64_t e = 0; e < elem_count; ++e) {
        std::int64_t rem = e;
        for (int a = 0; a < ctx.dim; ++a) {
            elem[a] = static_cast<int>(rem % ctx.cells[a]);
            rem /= ctx.cells[a];
        }
        for (int q = 0; q < quads; ++q) {
            std::array<double, 3> t{0.0, 0.0, 0.0};
            std::array<double, 3> p{0.0, 0.0, 0.0};
            for (int a = 0; a < ctx.dim; ++a) {
                t[a] = kGaussPoints[(q >> a) & 1];
                p[a] = grid.coord(a, elem[a]) + t[a] * ctx.h[a];
            }
            body(elem, t, p, weight);
        }
    }
}

} // namespace

SparseOperator assemble_form(const Grid& grid, const WeakForm& form, std::string problem_tag,
                             const std::array<bool, 3>& periodic) {
    const ElementContext ctx = make_context(grid);
    const std::int64_t n = grid.node_count();

    std::vector<std::int64_t> rows, cols;
    std::vector<double> sys_vals, mass_vals;
    const size_t reserve =
        static_cast<size_t>(n) * static_cast<size_t>(ctx.verts) * static_cast<size_t>(ctx.verts);
    rows.reserve(reserve);
    cols.reserve(reserve);
    sys_vals.reserve(reserve);
    mass_vals.reserve(reserve);

    double N[8];
    double dN[8 * 3];
    double A[9];

    for_each_quad_point(grid, ctx, [&](const std::array<int, 3>& elem, const std::array<double, 3>& t,
                                       const std::array<double, 3>& p, double w) {
        shapes_at(ctx, t, N, dN);
        form.diffusion(p.data(), ctx.dim, A);
        const double m = form.mass(p.data());
        std::array<std::int64_t, 8> gids;
        for (int v = 0; v < ctx.verts; ++v) {
            gids[v] = vertex_index(grid, ctx, elem, v, periodic);
        }
        for (int v = 0; v < ctx.verts; ++v) {
            // A grad N_v, reused across the inner loop
            double Ag[3] = {0.0, 0.0, 0.0};
            for (int a = 0; a < ctx.dim; ++a) {
                for (int b = 0; b < ctx.dim; ++b) {
                    Ag[a] += A[a * ctx.dim + b] * dN[v * ctx.dim + b];
                }
            }
            for (int u = 0; u < ctx.verts; ++u) {
                double stiff = 0.0;
                for (int a = 0; a < ctx.dim; ++a) stiff += Ag[a] * dN[u * ctx.dim + a];
                const double mass = m * N[v] * N[u];
                rows.push_back(gids[v]);
                cols.push_back(gids[u]);
                sys_vals.push_back(w * (stiff + mass));
                mass_vals.push_back(w * mass);
            }
        }
    });

    // Periodic axes leave the far-face nodes without equations; give them
    // trivial identity rows so the system stays invertible. Their values are
    // rewritten from the representatives after solving.
    bool any_periodic = false;
    for (int a = 0; a < ctx.dim; ++a) any_periodic = any_periodic || periodic[a];
    std::vector<std::int64_t> mass_rows = rows;
    std::vector<std::int64_t> mass_cols = cols;
    if (any_periodic) {
        for (std::int64_t i = 0; i < n; ++i) {
            const auto idx = grid.unflatten(i);
            bool redundant = false;
            for (int a = 0; a < ctx.dim; ++a) {
                redundant = redundant || (periodic[a] && idx[a] == ctx.cells[a]);
            }
            if (redundant) {
                rows.push_back(i);
                cols.push_back(i);
                sys_vals.push_back(1.0);
            }
        }
    }

    SparseOperator op;
    op.grid = grid;
    op.problem = std::move(problem_tag);
    op.system = SparseMatrix::from_triplets(n, std::move(rows), std::move(cols), std::move(sys_vals));
    op.mass = SparseMatrix::from_triplets(n, std::move(mass_rows), std::move(mass_cols), std::move(mass_vals));
    return op;
}

std::vector<double> assemble_rhs(const Grid& grid, const std::function<double(const double*)>& mass,
                                 const std::function<double(const double*)>& f,
                                 const std::array<bool, 3>& periodic) {
    const ElementContext ctx = make_context(grid);
    std::vector<double> b(static_cast<size_t>(grid.node_count()), 0.0);
    double N[8];
    double dN[8 * 3];
    for_each_quad_point(grid, ctx, [&](const std::array<int, 3>& elem, const std::array<double, 3>& t,
                                       const std::array<double, 3>& p, double w) {
        shapes_at(ctx, t, N, dN);
        const double mf = mass(p.data()) * f(p.data());
        for (int v = 0; v < ctx.verts; ++v) {
            b[static_cast<size_t>(vertex_index(grid, ctx, elem, v, periodic))] += w * mf * N[v];
        }
    });
    return b;
}

std::vector<double> assemble_flux_rhs(const Grid& grid,
                                      const std::function<void(const double*, int, double*)>& diffusion,
                                      int direction,
                                      const std::array<bool, 3>& periodic) {
    const ElementContext ctx = make_context(grid);
    std::vector<double> b(static_cast<size_t>(grid.node_count()), 0.0);
    double N[8];
    double dN[8 * 3];
    double A[9];
    for_each_quad_point(grid, ctx, [&](const std::array<int, 3>& elem, const std::array<double, 3>& t,
                                       const std::array<double, 3>& p, double w) {
        shapes_at(ctx, t, N, dN);
        diffusion(p.data(), ctx.dim, A);
        for (int v = 0; v < ctx.verts; ++v) {
            double acc = 0.0;
            for (int a = 0; a < ctx.dim; ++a) {
                acc += A[a * ctx.dim + direction] * dN[v * ctx.dim + a];
            }
            b[static_cast<size_t>(vertex_index(grid, ctx, elem, v, periodic))] += w * acc;
        }
    });
    return b;
}

double integrate_field(const Field& field,
                       const std::function<double(const double*, double, const double*)>& fn) {
    const Grid& grid = field.grid;
    const ElementContext ctx = make_context(grid);
    double total = 0.0;
    double N[8];
    double dN[8 * 3];
    const std::array<bool, 3> no_wrap{false, false, false};
    for_each_quad_point(grid, ctx, [&](const std::array<int, 3>& elem, const std::array<double, 3>& t,
                                       const std::array<double, 3>& p, double w) {
        shapes_at(ctx, t, N, dN);
        double value = 0.0;
        double grad[3] = {0.0, 0.0, 0.0};
        for (int v = 0; v < ctx.verts; ++v) {
            const double nodal = field[vertex_index(grid, ctx, elem, v, no_wrap)];
            value += nodal * N[v];
            for (int a = 0; a < ctx.dim; ++a) grad[a] += nodal * dN[v * ctx.dim + a];
        }
        total += w * fn(p.data(), value, grad);
    });
    return total;
}

Field sample_field(const Grid& grid, const std::function<double(const double*)>& f,
                   std::string tag) {
    Field out(grid, std::move(tag));
    const std::int64_t n = grid.node_count();
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = grid.unflatten(i);
        double p[3] = {0.0, 0.0, 0.0};
        for (int a = 0; a < grid.dim(); ++a) p[a] = grid.coord(a, idx[a]);
        out[i] = f(p);
    }
    return out;
}

RitzRange ritz_range(const SparseMatrix& matrix, int steps, unsigned seed) {
    const std::int64_t n = matrix.size();
    if (n == 0) return {};
    steps = static_cast<int>(std::min<std::int64_t>(steps, n));

    Rng rng(seed);
    std::vector<double> v(static_cast<size_t>(n));
    for (double& x : v) x = rng.normal();
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;

    std::vector<double> v_prev(static_cast<size_t>(n), 0.0);
    std::vector<double> w(static_cast<size_t>(n));
    std::vector<double> alpha, beta;
    for (int j = 0; j < steps; ++j) {
        matrix.multiply(v.data(), w.data());
        double a = 0.0;
        for (std::int64_t i = 0; i < n; ++i) a += w[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
        alpha.push_back(a);
        for (std::int64_t i = 0; i < n; ++i) {
            w[static_cast<size_t>(i)] -= a * v[static_cast<size_t>(i)] +
                                         (j > 0 ? beta.back() * v_prev[static_cast<size_t>(i)] : 0.0);
        }
        double b = 0.0;
        for (double x : w) b += x * x;
        b = std::sqrt(b);
        if (b < 1e-14 || j == steps - 1) break;
        beta.push_back(b);
        v_prev = v;
        for (std::int64_t i = 0; i < n; ++i) v[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] / b;
    }

    // Eigenvalues of the small tridiagonal by bisection-free QL would be
    // overkill here; Jacobi on the dense form is plenty for <= steps ~ 10.
    const int m = static_cast<int>(alpha.size());
    std::vector<double> T(static_cast<size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) {
        T[static_cast<size_t>(i) * m + i] = alpha[static_cast<size_t>(i)];
        if (i + 1 < m) {
            T[static_cast<size_t>(i) * m + i + 1] = beta[static_cast<size_t>(i)];
            T[static_cast<size_t>(i + 1) * m + i] = beta[static_cast<size_t>(i)];
        }
    }
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) off += std::fabs(T[static_cast<size_t>(i) * m + j]);
        if (off < 1e-14) break;
        for (int p = 0; p < m; ++p) {
            for (int q = p + 1; q < m; ++q) {
                const double apq = T[static_cast<size_t>(p) * m + q];
                if (std::fabs(apq) < 1e-300) continue;
                const double app = T[static_cast<size_t>(p) * m + p];
                const double aqq = T[static_cast<size_t>(q) * m + q];
                const double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                for (int k = 0; k < m; ++k) {
                    const double akp = T[static_cast<size_t>(k) * m + p];
                    const double akq = T[static_cast<size_t>(k) * m + q];
                    T[static_cast<size_t>(k) * m + p] = c * akp - s * akq;
                    T[static_cast<size_t>(k) * m + q] = s * akp + c * akq;
                }
                for (int k = 0; k < m; ++k) {
                    const double apk = T[static_cast<size_t>(p) * m + k];
                    const double aqk = T[static_cast<size_t>(q) * m + k];
                    T[static_cast<size_t>(p) * m + k] = c * apk - s * aqk;
                    T[static_cast<size_t>(q) * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
    RitzRange range;
    range.smallest = T[0];
    range.largest = T[0];
    for (int i = 1; i < m; ++i) {
        range.smallest = std::min(range.smallest, T[static_cast<size_t>(i) * m + i]);
        range.largest = std::max(range.largest, T[static_cast<size_t>(i) * m + i]);
    }
    return range;
}

} // namespace thinhomog
