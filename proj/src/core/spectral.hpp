#pragma once

#include "assembly.hpp"
#include "geometry.hpp"
#include "homogenize.hpp"
#include "norms.hpp"
#include "operators.hpp"

#include <cstdint>
#include <vector>

namespace thinhomog {

struct EigenPair {
    double value = 0.0;
    Field function; // normalized in the operator's weighted mass inner product
    int index = 0;
    double residual = 0.0;
};

/// Computes the k smallest eigenpairs of the generalized problem
///   system u = lambda mass u
/// by shift-invert Lanczos at shift zero (inner CG solves, full
/// reorthogonalization in the mass inner product). Eigenvalues ascend with
/// multiplicity; eigenfunctions are mass-orthonormal. Breakdown triggers a
/// restart with a fresh random start, at most three times.
std::vector<EigenPair> smallest_eigenpairs(const SparseOperator& op, int k,
                                           std::uint64_t seed = 42, double residual_tol = 1e-8);

struct SpectralRow {
    double epsilon = 0.0;
    int n = 0;
    double lambda_eps = 0.0;
    double lambda_0 = 0.0;
    double gap = 0.0;
    double eigfun_dist = 0.0;
    double vertical_fraction = 0.0; // diagnostic: stiff-direction energy share
};

struct SpectralStudyOptions {
    GridOptions grid{24, 96, 16};
    int n_max = 4;
    double cluster_rel_tol = 1e-6;
    std::uint64_t seed = 42;
    int reference_cells = 1024; // fine limit grid for the lambda_0 column
};

/// Per-epsilon eigenvalue gaps and extended-eigenfunction distances against
/// the homogenized limit operator. Throws StudyError when a requested mode is
/// not a horizontal (thin-direction-constant) mode at some epsilon.
std::vector<SpectralRow> spectral_convergence_study(const ThinDomainSpec& spec_template,
                                                    const std::vector<double>& eps_list,
                                                    const EffectiveModel& model,
                                                    const SpectralStudyOptions& opts);

struct ResolventDefectRow {
    double epsilon = 0.0;
    double defect_max = 0.0;
    double defect_mean = 0.0;
    int probes = 0;
    std::uint64_t seed = 0;
};

struct ResolventOptions {
    GridOptions grid{16, 64, 16};
    int probes = 20;
    std::uint64_t seed = 42;
};

/// Randomized lower bound on ||L_eps^{-1} - E L_0^{-1} M_eps / weight|| in the
/// rescaled norm: max and mean defect over unit-norm random right-hand sides.
ResolventDefectRow resolvent_defect(const ThinDomainSpec& spec, const EffectiveModel& model,
                                    const ResolventOptions& opts);

} // namespace thinhomog
