#pragma once

#include "geometry.hpp"
#include "norms.hpp"
#include "operators.hpp"

#include <functional>

namespace thinhomog {

/// One epsilon of the reduction-ladder study: the pairwise rescaled-H1
/// distances between the exact transformed solution, the cross-term-free
/// simplified solution and the thickness-averaged reduced solution, with the
/// ratios the reduction estimates bound. The right-hand side is normalized to
/// unit rescaled L2 norm, which makes every ratio scale-free.
struct LadderRow {
    double epsilon = 0.0;
    double eta = 0.0;
    double dist_transformed_simplified = 0.0;
    double dist_simplified_reduced = 0.0;
    double dist_total = 0.0;
    double ratio_total_over_eta = 0.0;
    long solver_iters = 0;
    bool in_hypothesis = true;
    double ratio_ts_over_eta = 0.0; // diagnostic companion ratios
    double ratio_sr = 0.0;
};

struct LadderOptions {
    GridOptions grid{16, 64, 16};
    double solver_tol = 1e-10;
    bool normalize_rhs = true;
};

/// Solves the three ladder problems for one spec and measures the distances.
/// f is given in physical coordinates.
LadderRow verify_ladder(const ThinDomainSpec& spec,
                        const std::function<double(const double*)>& f_physical,
                        const LadderOptions& opts = {});

} // namespace thinhomog
