#pragma once

#include "geometry.hpp"
#include "grid.hpp"
#include "profile.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace thinhomog {

enum class Regime {
    SameOrderCommensurate,
    SameOrderIncommensurate,
    DifferentOrder,
    PeriodicCell,
    QuasiPeriodicTruncated,
    Reiterated,
};

std::string regime_name(Regime r);

/// Homogenized limit-problem data: the effective diffusion coefficient
/// (scalar in 1D, symmetric tensor otherwise), the mean thickness weight
/// M(g)+M(h), and accuracy diagnostics of the averaging that produced it.
struct EffectiveModel {
    Regime regime = Regime::SameOrderCommensurate;
    int dim = 1;
    double coefficient = 0.0;          // 1D effective coefficient
    std::array<double, 4> tensor{};    // row-major dim x dim, coincides with coefficient in 1D
    double weight = 0.0;               // M(g) + M(h)
    double error_proxy = 0.0;
    int quadrature_depth = 0;

    const double* tensor_data() const { return tensor.data(); }
};

/// Mean value over one period. Exact (offset) for constant and trig profiles,
/// refined quadrature for the smoothed sawtooth.
double mean_value(const BoundaryProfile& p);

/// Harmonic-type mean over the common period of two rationally dependent
/// periods. Throws RegimeError if the period ratio has no rational
/// reconstruction within tolerance 1e-9 (denominator cap 1e6).
double p0_commensurate(const BoundaryProfile& g, const BoundaryProfile& h);

struct ErgodicAverage {
    double value = 0.0;
    double error_estimate = 0.0; // |avg(2T) - avg(T)|
};

/// Ergodic average of 1/(g+h) up to T_max with a half-interval agreement
/// check. Requires T_max >= 1e3 * max period; throws AccuracyError if the
/// estimate exceeds 1e-4 at T_max.
ErgodicAverage p0_incommensurate(const BoundaryProfile& g, const BoundaryProfile& h, double t_max);

/// Double-period average of 1/(g(y)+h(z)), reciprocated; for boundaries
/// oscillating at different scale exponents.
double p0_two_scale(const BoundaryProfile& g, const BoundaryProfile& h);

struct DiophantineParams {
    double period_1 = 1.0;
    double period_2 = 1.0;
    double s0 = 2.0;
    double constant = 0.1;
    long search_bound = 10000; // N
};

struct DiophantineReport {
    double min_margin = 0.0; // min |n1 L1 + n2 L2| * |n1+n2|^s0 over the scan
    long n1_at_min = 0;
    long n2_at_min = 0;
    bool pass = false;
};

/// Scans mixed-sign integer pairs with 0 < |n1|+|n2| <= N for near
/// cancellations of n1 L1 + n2 L2. Pairs with n1 + n2 = 0 are skipped: the
/// margin weight |n1+n2|^s0 vanishes there while the combination stays away
/// from zero whenever the periods differ.
DiophantineReport diophantine_check(const DiophantineParams& params);

/// Limit right-hand side: for f independent of the vertical coordinate the
/// limit data is f itself; otherwise the thickness average at the spec's eps.
Field limit_rhs(const ThinDomainSpec& spec, const std::function<double(const double*)>& f_physical,
                const Grid& base_grid);

/// Assembles the EffectiveModel for a declared regime using the matching
/// averaging method (1D closed quadratures; cell problems in higher
/// dimension).
EffectiveModel homogenize(const ThinDomainSpec& spec, Regime regime);

} // namespace thinhomog
