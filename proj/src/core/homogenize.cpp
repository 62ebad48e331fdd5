#include "homogenize.hpp"

#include "cell.hpp"
#include "errors.hpp"
#include "operators.hpp"
#include "util.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thinhomog {

std::string regime_name(Regime r) {
    switch (r) {
    case Regime::SameOrderCommensurate: return "same-order-commensurate";
    case Regime::SameOrderIncommensurate: return "same-order-incommensurate";
    case Regime::DifferentOrder: return "different-order";
    case Regime::PeriodicCell: return "nd-periodic-cell";
    case Regime::QuasiPeriodicTruncated: return "nd-quasiperiodic-truncated";
    case Regime::Reiterated: return "nd-reiterated";
    }
    return "unknown";
}

double mean_value(const BoundaryProfile& p) {
    switch (p.kind()) {
    case ProfileKind::Constant:
    case ProfileKind::TrigPolynomial:
        // every sin/cos term integrates to zero over the period
        return p.offset();
    case ProfileKind::SmoothedSawtooth: {
        auto f = [&p](double y) { return p(y); };
        const QuadratureResult q =
            simpson_refined(f, 0.0, p.period(), 1e-10, 1 << 14);
        return q.value / p.period();
    }
    }
    return p.offset();
}

namespace {

/// Continued-fraction reconstruction of ratio as q/p with p <= cap.
bool rational_reconstruct(double ratio, double rel_tol, long cap, long* num, long* den) {
    long p_prev = 1, p_cur = 0; // denominators
    long q_prev = 0, q_cur = 1; // numerators
    double x = ratio;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_floor = std::floor(x);
        if (a_floor > static_cast<double>(cap)) break;
        const long a = static_cast<long>(a_floor);
        const long p_next = a * p_cur + p_prev;
        const long q_next = a * q_cur + q_prev;
        if (p_next > cap || p_next < 0 || q_next < 0) break;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
        if (p_cur > 0 && std::fabs(ratio - static_cast<double>(q_cur) / p_cur) <= rel_tol * std::fabs(ratio)) {
            *num = q_cur;
            *den = p_cur;
            return true;
        }
        const double frac = x - a_floor;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    return false;
}

} // namespace

double p0_commensurate(const BoundaryProfile& g, const BoundaryProfile& h) {
    const double ratio = g.period() / h.period();
    long q = 0, p = 0; // ratio ~ q/p, common period p * L1 = q * L2
    if (!rational_reconstruct(ratio, 1e-9, 1000000, &q, &p)) {
        throw RegimeError(
            "p0_commensurate: period ratio is not recognizably rational within 1e-9; "
            "use p0_incommensurate for rationally independent periods");
    }
    const double common = static_cast<double>(p) * g.period();
    auto reciprocal = [&g, &h](double y) { return 1.0 / (g(y) + h(y)); };
    const QuadratureResult quad = simpson_refined(reciprocal, 0.0, common, 1e-10, 128);
    return common / quad.value;
}

ErgodicAverage p0_incommensurate(const BoundaryProfile& g, const BoundaryProfile& h, double t_max) {
    const double longest = std::max(g.period(), h.period());
    if (t_max < 1e3 * longest) {
        throw std::invalid_argument("p0_incommensurate: T_max must be at least 1e3 * max period");
    }
    auto reciprocal = [&g, &h](double y) { return 1.0 / (g(y) + h(y)); };
    const double half = t_max / 2.0;
    // resolve the shortest period with ~128 points; both windows use the same rule
    const double shortest = std::min(g.period(), h.period());
    const int n_half = static_cast<int>(std::ceil(128.0 * half / shortest));
    const double avg_half = simpson(reciprocal, 0.0, half, n_half) / half;
    const double avg_full = simpson(reciprocal, 0.0, t_max, 2 * n_half) / t_max;

    ErgodicAverage out;
    out.error_estimate = std::fabs(1.0 / avg_full - 1.0 / avg_half);
    out.value = 1.0 / avg_full;
    if (out.error_estimate > 1e-4) {
        throw AccuracyError("p0_incommensurate: ergodic average did not stabilize at T_max",
                            out.error_estimate, 1.0 / avg_half, 1.0 / avg_full);
    }
    return out;
}

double p0_two_scale(const BoundaryProfile& g, const BoundaryProfile& h) {
    const double L1 = g.period();
    const double L2 = h.period();
    auto inner = [&](double y) {
        auto slice = [&](double z) { return 1.0 / (g(y) + h(z)); };
        return simpson_refined(slice, 0.0, L2, 1e-10, 64).value / L2;
    };
    const QuadratureResult quad = simpson_refined(inner, 0.0, L1, 1e-9, 64, 1 << 14);
    return L1 / quad.value;
}

DiophantineReport diophantine_check(const DiophantineParams& params) {
    if (!(params.period_1 > 0.0) || !(params.period_2 > 0.0) || !(params.s0 > 0.0) ||
        !(params.constant > 0.0) || params.search_bound < 1000) {
        throw std::invalid_argument("diophantine_check: invalid parameters (N must be >= 1e3)");
    }
    DiophantineReport report;
    report.min_margin = std::numeric_limits<double>::infinity();
    const long N = params.search_bound;
    // n1 > 0 > n2 without loss of generality: flipping both signs leaves the
    // margin unchanged.
    for (long n1 = 1; n1 < N; ++n1) {
        for (long n2 = -1; n1 - n2 <= N; --n2) {
            if (n1 + n2 == 0) continue;
            const double combo = std::fabs(n1 * params.period_1 + n2 * params.period_2);
            const double margin = combo * std::pow(std::fabs(static_cast<double>(n1 + n2)), params.s0);
            if (margin < report.min_margin) {
                report.min_margin = margin;
                report.n1_at_min = n1;
                report.n2_at_min = n2;
            }
        }
    }
    report.pass = report.min_margin >= params.constant;
    return report;
}

Field limit_rhs(const ThinDomainSpec& spec, const std::function<double(const double*)>& f_physical,
                const Grid& base_grid) {
    auto fhat = project_f_hat(spec, f_physical);
    Field out = sample_field(base_grid, fhat, "fhat_limit");
    return out;
}

EffectiveModel homogenize(const ThinDomainSpec& spec, Regime regime) {
    const BoundaryProfile& h = spec.bottom();
    const BoundaryProfile& g = spec.top();
    EffectiveModel model;
    model.regime = regime;
    model.dim = spec.base_dim();
    model.weight = mean_value(g) + mean_value(h);

    const int n = spec.base_dim();
    switch (regime) {
    case Regime::SameOrderCommensurate: {
        if (n != 1) throw RegimeError("homogenize: use the periodic-cell regime in dimension > 1");
        model.coefficient = p0_commensurate(g, h);
        break;
    }
    case Regime::SameOrderIncommensurate: {
        if (n != 1) throw RegimeError("homogenize: use the quasiperiodic regime in dimension > 1");
        const ErgodicAverage avg = p0_incommensurate(g, h, 2e4 * std::max(g.period(), h.period()));
        model.coefficient = avg.value;
        model.error_proxy = avg.error_estimate;
        break;
    }
    case Regime::DifferentOrder: {
        if (n != 1) throw RegimeError("homogenize: use the reiterated regime in dimension > 1");
        model.coefficient = p0_two_scale(g, h);
        break;
    }
    case Regime::PeriodicCell: {
        const double ratio = g.period() / h.period();
        long q = 0, p = 0;
        if (!rational_reconstruct(ratio, 1e-9, 1000000, &q, &p)) {
            throw RegimeError("homogenize: periods not rationally dependent; use the quasiperiodic regime");
        }
        const double common = static_cast<double>(p) * g.period();
        auto G = [&g, &h, n](const double* z) {
            return g.value_nd(z, n) + h.value_nd(z, n);
        };
        const int cells = (n == 1) ? 4096 : 192;
        const CellSolution cell = cell_problem(G, n, 0.0, common, cells);
        model.tensor = cell.tensor;
        model.coefficient = cell.tensor[0];
        model.error_proxy = cell.residual;
        break;
    }
    case Regime::QuasiPeriodicTruncated: {
        EffectiveModel sub = quasiperiodic_A0(g, h, n);
        sub.weight = model.weight;
        return sub;
    }
    case Regime::Reiterated: {
        // the faster boundary is the one with the larger exponent
        const bool bottom_fast = spec.alpha() > spec.beta();
        EffectiveModel sub = bottom_fast ? reiterated_A0(h, g, n) : reiterated_A0(g, h, n);
        sub.weight = model.weight;
        return sub;
    }
    }
    if (n == 1) {
        model.tensor[0] = model.coefficient;
    }
    return model;
}

} // namespace thinhomog
