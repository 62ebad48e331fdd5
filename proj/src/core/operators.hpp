#pragma once

#include "assembly.hpp"
#include "geometry.hpp"
#include "grid.hpp"

#include <functional>

namespace thinhomog {

/// Grid sizing knobs shared by the solver studies. The base resolution follows
/// the coefficient oscillation: at least cells_per_period cells per shortest
/// oscillation period und at least min_base_cells overall.
struct GridOptions {
    int cells_per_period = 16;
    int min_base_cells = 64;
    int vertical_cells = 16;
};

/// Base grid over omega = [0,1]^n resolving the spec's oscillations.
Grid base_grid_for(const ThinDomainSpec& spec, const GridOptions& opts);
/// Grid over the reference cylinder Q = omega x (0,1).
Grid q_grid_for(const ThinDomainSpec& spec, const GridOptions& opts);

/// Exact transform of the thin-domain problem to Q: anisotropic diffusion
/// with thickness weight, shear cross terms and the stiff vertical direction.
/// Weak form:
///   int_Q K grad_x u . grad_x v
///       - y dK/dx_i (u_y v_{x_i} + u_{x_i} v_y)
///       + (y^2 |grad K|^2 / K + 1/(eps^2 K)) u_y v_y
///       + K u v
/// with natural boundary conditions and K-weighted right-hand side.
SparseOperator assemble_transformed(const ThinDomainSpec& spec, const Grid& q_grid);

/// Same problem with the shear cross terms dropped: diffusion diag(K,...,K,
/// 1/(eps^2 K)), K-weighted mass.
SparseOperator assemble_simplified(const ThinDomainSpec& spec, const Grid& q_grid);

/// Thickness-weighted reduced problem on omega:
///   int K grad w . grad v + K w v = int K fhat v.
SparseOperator assemble_reduced(const ThinDomainSpec& spec, const Grid& base_grid);

/// Homogenized limit operator on omega: constant diffusion tensor A0 and
/// constant mass weight (the mean thickness M(g)+M(h)).
SparseOperator assemble_limit(const Grid& base_grid, const double* A0, double weight);

/// Thickness average in reference coordinates:
///   fhat(x) = (1/(eps K)) int_{-eps k1}^{eps k2} f dy = int_0^1 f2(x, y) dy,
/// where f is given in physical coordinates. Vertical quadrature is composite
/// Simpson with 64 subintervals.
std::function<double(const double*)> project_f_hat(const ThinDomainSpec& spec,
                                                   const std::function<double(const double*)>& f_physical);
Field project_f_hat(const ThinDomainSpec& spec, const Field& f_on_q);

/// Vertical average scaled by 1/eps (not by thickness): M f = K * fhat.
Field average_thickness_scaled(const ThinDomainSpec& spec, const Field& f_on_q);

/// Composes a physical-coordinate function with the two coordinate maps,
/// yielding its representative f2 on Q.
std::function<double(const double*)> pull_back_to_q(const ThinDomainSpec& spec,
                                                    const std::function<double(const double*)>& f_physical);

} // namespace thinhomog
