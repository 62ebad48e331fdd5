#include "geometry.hpp"

#include "errors.hpp"
#include "util.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thinhomog {

ThinDomainSpec::ThinDomainSpec(int base_dim, BoundaryProfile bottom, BoundaryProfile top,
                               double alpha, double beta, double epsilon)
    : base_dim_(base_dim),
      bottom_(std::move(bottom)),
      top_(std::move(top)),
      alpha_(alpha),
      beta_(beta),
      epsilon_(epsilon) {
    if (base_dim_ != 1 && base_dim_ != 2) {
        throw std::invalid_argument("base dimension must be 1 or 2");
    }
    if (!(alpha_ > 0.0 && alpha_ <= 1.0) || !(beta_ > 0.0 && beta_ <= 1.0)) {
        throw std::invalid_argument("oscillation exponents must lie in (0, 1]");
    }
    if (!(epsilon_ > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    if (bottom_.lower_bound_nd(base_dim_) < -1e-12) {
        throw std::invalid_argument("bottom profile must be nonnegative");
    }
    if (top_.lower_bound_nd(base_dim_) <= 0.0) {
        throw std::invalid_argument("top profile must be strictly positive");
    }
    if (thickness_lower() <= 0.0) {
        throw std::invalid_argument("total thickness bound g0 + h0 must be positive");
    }
    alpha_scale_ = std::pow(epsilon_, alpha_);
    beta_scale_ = std::pow(epsilon_, beta_);
}

ThinDomainSpec ThinDomainSpec::with_epsilon(double epsilon) const {
    return ThinDomainSpec(base_dim_, bottom_, top_, alpha_, beta_, epsilon);
}

double ThinDomainSpec::bottom_depth(const double* x) const {
    double scaled[2];
    for (int j = 0; j < base_dim_; ++j) scaled[j] = x[j] / alpha_scale_;
    return bottom_.value_nd(scaled, base_dim_);
}

double ThinDomainSpec::top_height(const double* x) const {
    double scaled[2];
    for (int j = 0; j < base_dim_; ++j) scaled[j] = x[j] / beta_scale_;
    return top_.value_nd(scaled, base_dim_);
}

double ThinDomainSpec::bottom_depth_partial(const double* x, int j) const {
    double scaled[2];
    for (int d = 0; d < base_dim_; ++d) scaled[d] = x[d] / alpha_scale_;
    return bottom_.partial_nd(scaled, base_dim_, j) / alpha_scale_;
}

double ThinDomainSpec::top_height_partial(const double* x, int j) const {
    double scaled[2];
    for (int d = 0; d < base_dim_; ++d) scaled[d] = x[d] / beta_scale_;
    return top_.partial_nd(scaled, base_dim_, j) / beta_scale_;
}

double ThinDomainSpec::thickness(const double* x) const {
    return bottom_depth(x) + top_height(x);
}

double ThinDomainSpec::thickness_partial(const double* x, int j) const {
    return bottom_depth_partial(x, j) + top_height_partial(x, j);
}

double ThinDomainSpec::thickness_lower() const {
    return bottom_.lower_bound_nd(base_dim_) + top_.lower_bound_nd(base_dim_);
}

double ThinDomainSpec::thickness_upper() const {
    return bottom_.upper_bound_nd(base_dim_) + top_.upper_bound_nd(base_dim_);
}

double ThinDomainSpec::shortest_period() const {
    return std::min(bottom_.period() * alpha_scale_, top_.period() * beta_scale_);
}

namespace {

/// sup over the visible window of |d/dx P(x/scale)|, times eps.
double boundary_eta(const BoundaryProfile& p, double scale, double epsilon) {
    const double window = 1.0 / scale; // profile-units seen across the unit base edge
    const double extent = std::min(p.period(), window);
    auto slope = [&](double t) { return std::fabs(p.derivative(t)); };
    const int samples = std::max(4096, 64);
    const double sup = sampled_max(slope, 0.0, extent, samples);
    return epsilon * sup / scale;
}

} // namespace

OscillationReport oscillation_magnitude(const ThinDomainSpec& spec) {
    OscillationReport r;
    const double eps = spec.epsilon();
    r.bottom = boundary_eta(spec.bottom(), std::pow(eps, spec.alpha()), eps);
    r.top = boundary_eta(spec.top(), std::pow(eps, spec.beta()), eps);
    r.total = r.bottom + r.top;
    return r;
}

namespace {

void check_base(const ThinDomainSpec& spec, const Point& p, const char* where) {
    const double tol = 1e-12;
    for (int j = 0; j < spec.base_dim(); ++j) {
        if (p[j] < -tol || p[j] > 1.0 + tol) {
            throw DomainError(std::string(where) + ": base coordinate outside [0,1]");
        }
    }
}

} // namespace

Point aligned_to_physical(const ThinDomainSpec& spec, const Point& p) {
    check_base(spec, p, "aligned_to_physical");
    const int n = spec.base_dim();
    const double eps = spec.epsilon();
    const double depth = eps * spec.bottom_depth(p.data());
    const double height = eps * spec.thickness(p.data());
    const double tol = 1e-12 * (1.0 + height);
    if (p[n] < -tol || p[n] > height + tol) {
        throw DomainError("aligned_to_physical: vertical coordinate outside [0, eps*K(x)]");
    }
    Point out = p;
    out[n] = p[n] - depth;
    return out;
}

Point physical_to_aligned(const ThinDomainSpec& spec, const Point& p) {
    check_base(spec, p, "physical_to_aligned");
    const int n = spec.base_dim();
    const double eps = spec.epsilon();
    const double depth = eps * spec.bottom_depth(p.data());
    const double top = eps * spec.top_height(p.data());
    const double tol = 1e-12 * (1.0 + depth + top);
    if (p[n] < -depth - tol || p[n] > top + tol) {
        throw DomainError("physical_to_aligned: vertical coordinate outside (-eps*k1, eps*k2)");
    }
    Point out = p;
    out[n] = p[n] + depth;
    return out;
}

Point reference_to_aligned(const ThinDomainSpec& spec, const Point& p) {
    check_base(spec, p, "reference_to_aligned");
    const int n = spec.base_dim();
    if (p[n] < -1e-12 || p[n] > 1.0 + 1e-12) {
        throw DomainError("reference_to_aligned: vertical coordinate outside [0,1]");
    }
    Point out = p;
    out[n] = p[n] * spec.epsilon() * spec.thickness(p.data());
    return out;
}

Point aligned_to_reference(const ThinDomainSpec& spec, const Point& p) {
    check_base(spec, p, "aligned_to_reference");
    const int n = spec.base_dim();
    const double height = spec.epsilon() * spec.thickness(p.data());
    const double tol = 1e-12 * (1.0 + height);
    if (p[n] < -tol || p[n] > height + tol) {
        throw DomainError("aligned_to_reference: vertical coordinate outside [0, eps*K(x)]");
    }
    Point out = p;
    out[n] = p[n] / height;
    return out;
}

Point reference_to_physical(const ThinDomainSpec& spec, const Point& p) {
    return aligned_to_physical(spec, reference_to_aligned(spec, p));
}

Point physical_to_reference(const ThinDomainSpec& spec, const Point& p) {
    return aligned_to_reference(spec, physical_to_aligned(spec, p));
}

double aligned_to_physical_jacobian(const ThinDomainSpec& spec, const Point& p) {
    // The Jacobian is unit lower-triangular: identity block in x, a shear row
    // from the bottom graph, and 1 in the vertical direction.
    (void)spec;
    (void)p;
    return 1.0;
}

} // namespace thinhomog
