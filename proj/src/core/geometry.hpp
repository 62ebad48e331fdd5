#pragma once

#include "profile.hpp"

#include <array>

namespace thinhomog {

/// A point in up to three coordinates; index base_dim holds the vertical one.
using Point = std::array<double, 3>;

/// The full geometry of one member of the thin-domain family: base domain
/// [0,1]^n (n = 1 or 2), bottom profile h at scale eps^alpha, top profile g
/// at scale eps^beta, and the thickness parameter eps.
///
/// Exponents are accepted in (0, 1]; the weak-oscillation hypothesis requires
/// them strictly below 1, and in_hypothesis() reports whether it holds.
/// Immutable after construction; all evaluations are pure.
class ThinDomainSpec {
public:
    ThinDomainSpec(int base_dim, BoundaryProfile bottom, BoundaryProfile top, double alpha,
                   double beta, double epsilon);

    int base_dim() const { return base_dim_; }
    const BoundaryProfile& bottom() const { return bottom_; }
    const BoundaryProfile& top() const { return top_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double epsilon() const { return epsilon_; }
    bool in_hypothesis() const { return alpha_ < 1.0 && beta_ < 1.0; }

    ThinDomainSpec with_epsilon(double epsilon) const;

    /// Bottom graph k1(x) = h(x / eps^alpha); the physical boundary is -eps*k1.
    double bottom_depth(const double* x) const;
    /// Top graph k2(x) = g(x / eps^beta); the physical boundary is +eps*k2.
    double top_height(const double* x) const;
    double bottom_depth_partial(const double* x, int j) const;
    double top_height_partial(const double* x, int j) const;

    /// Total thickness coefficient K(x) = k1(x) + k2(x).
    double thickness(const double* x) const;
    double thickness_partial(const double* x, int j) const;

    /// A-priori thickness bounds g0+h0 and g1+h1.
    double thickness_lower() const;
    double thickness_upper() const;

    /// Shortest oscillation period measured in base-domain units.
    double shortest_period() const;

private:
    int base_dim_;
    BoundaryProfile bottom_;
    BoundaryProfile top_;
    double alpha_;
    double beta_;
    double epsilon_;
    double alpha_scale_; // eps^alpha
    double beta_scale_;  // eps^beta
};

/// Per-boundary and total oscillation magnitude at the spec's eps.
struct OscillationReport {
    double bottom = 0.0; // eta^1
    double top = 0.0;    // eta^2
    double total = 0.0;  // eta = eta^1 + eta^2
};

/// eta(eps): max over directions of sup_x |eps * d k^i / d x_j|, computed on a
/// dense sample grid with local polish. Deterministic.
OscillationReport oscillation_magnitude(const ThinDomainSpec& spec);

/// Map from the bottom-aligned domain {0 < ybar < eps*K(x)} to the physical
/// thin domain (vertical shift by the bottom graph). Unit Jacobian determinant.
Point aligned_to_physical(const ThinDomainSpec& spec, const Point& p);
Point physical_to_aligned(const ThinDomainSpec& spec, const Point& p);

/// Map from the reference cylinder Q = [0,1]^n x (0,1) to the aligned domain
/// (vertical scaling by eps*K(x)).
Point reference_to_aligned(const ThinDomainSpec& spec, const Point& p);
Point aligned_to_reference(const ThinDomainSpec& spec, const Point& p);

/// Composition Q -> physical domain, and its inverse.
Point reference_to_physical(const ThinDomainSpec& spec, const Point& p);
Point physical_to_reference(const ThinDomainSpec& spec, const Point& p);

/// Determinant of the Jacobian of aligned_to_physical; identically one, kept
/// as an explicit function so the invariant is testable.
double aligned_to_physical_jacobian(const ThinDomainSpec& spec, const Point& p);

} // namespace thinhomog
