#include "norms.hpp"

#include "assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace thinhomog {

RescaledNorms::RescaledNorms(const ThinDomainSpec& spec, double weight)
    : spec_(&spec), weight_(weight) {}

double RescaledNorms::l2(const Field& u_on_q) const {
    const ThinDomainSpec& spec = *spec_;
    const double sq = integrate_field(u_on_q, [&spec](const double* p, double u, const double*) {
        return spec.thickness(p) * u * u;
    });
    return std::sqrt(std::max(0.0, sq));
}

double RescaledNorms::h1(const Field& u_on_q) const {
    const ThinDomainSpec& spec = *spec_;
    const int n = spec.base_dim();
    const double eps = spec.epsilon();
    const double sq = integrate_field(u_on_q, [&spec, n, eps](const double* p, double u,
                                                              const double* grad) {
        const double K = spec.thickness(p);
        const double y = p[n];
        const double uy = grad[n];
        double horizontal = 0.0;
        for (int i = 0; i < n; ++i) {
            // physical x-derivative of the pulled-back function
            const double shear = (y * spec.thickness_partial(p, i) - spec.bottom_depth_partial(p, i)) / K;
            const double gx = grad[i] - shear * uy;
            horizontal += gx * gx;
        }
        const double vertical = uy / (eps * K);
        return K * (horizontal + vertical * vertical + u * u);
    });
    return std::sqrt(std::max(0.0, sq));
}

double RescaledNorms::ladder(const Field& u_on_q) const {
    const int n = spec_->base_dim();
    const double eps = spec_->epsilon();
    const double sq = integrate_field(u_on_q, [n, eps](const double*, double u, const double* grad) {
        double horizontal = 0.0;
        for (int i = 0; i < n; ++i) horizontal += grad[i] * grad[i];
        const double vertical = grad[n] / eps;
        return horizontal + vertical * vertical + u * u;
    });
    return std::sqrt(std::max(0.0, sq));
}

double RescaledNorms::l2_limit(const Field& u_on_base) const {
    const double sq = integrate_field(u_on_base, [](const double*, double u, const double*) {
        return u * u;
    });
    return std::sqrt(std::max(0.0, weight_ * sq));
}

double RescaledNorms::h1_limit(const Field& u_on_base, const double* A0) const {
    const int n = u_on_base.grid.base_dim;
    const double w = weight_;
    const double sq = integrate_field(u_on_base, [n, w, A0](const double*, double u, const double* grad) {
        double diff = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) diff += A0[i * n + j] * grad[i] * grad[j];
        }
        return w * u * u + diff;
    });
    return std::sqrt(std::max(0.0, sq));
}

Field RescaledNorms::difference(const Field& a_on_q, const Field& b_on_base) const {
    Field diff = a_on_q;
    const Field extended = extend_vertical(b_on_base, a_on_q.grid);
    for (std::int64_t i = 0; i < diff.size(); ++i) diff[i] -= extended[i];
    diff.tag = "difference";
    return diff;
}

double RescaledNorms::l2_diff(const Field& a_on_q, const Field& b_on_base) const {
    return l2(difference(a_on_q, b_on_base));
}

double RescaledNorms::h1_diff(const Field& a_on_q, const Field& b_on_base) const {
    return h1(difference(a_on_q, b_on_base));
}

double RescaledNorms::ladder_diff(const Field& a_on_q, const Field& b_on_base) const {
    return ladder(difference(a_on_q, b_on_base));
}

} // namespace thinhomog
