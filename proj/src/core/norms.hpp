#pragma once

#include "geometry.hpp"
#include "grid.hpp"

namespace thinhomog {

/// Rescaled norms of the epsilon-family and the limit space, evaluated on
/// reference-cylinder fields by element quadrature.
///
/// On Q coordinates the 1/eps-weighted L2 norm over the physical domain
/// becomes the thickness-weighted L2 norm over Q; the H1 counterpart carries
/// the exact pullback of the physical gradient (shear plus stiff vertical
/// term). The limit norms are weighted by the mean thickness.
class RescaledNorms {
public:
    RescaledNorms(const ThinDomainSpec& spec, double weight);

    /// |||u|||_{Z_eps} for u on a Q grid.
    double l2(const Field& u_on_q) const;
    /// |||u|||_{Z_eps^{1/2}} (rescaled H1 of the physical representative).
    double h1(const Field& u_on_q) const;
    /// Plain rescaled H1 used by the reduction-ladder estimates:
    ///   |grad_x u|^2 + eps^{-2} |u_y|^2 + u^2 over Q.
    double ladder(const Field& u_on_q) const;

    /// ||u||_{Z_0} = sqrt(weight * int u^2) for u on the base grid.
    double l2_limit(const Field& u_on_base) const;
    /// Limit H1 norm induced by the limit operator: weight * u^2 + A0 grad.grad.
    double h1_limit(const Field& u_on_base, const double* A0) const;

    /// ||| a - E b |||_{Z_eps} with b extended vertically.
    double l2_diff(const Field& a_on_q, const Field& b_on_base) const;
    double h1_diff(const Field& a_on_q, const Field& b_on_base) const;
    double ladder_diff(const Field& a_on_q, const Field& b_on_base) const;

    double weight() const { return weight_; }

private:
    Field difference(const Field& a_on_q, const Field& b_on_base) const;

    const ThinDomainSpec* spec_;
    double weight_;
};

} // namespace thinhomog
