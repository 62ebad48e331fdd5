#pragma once

#include "assembly.hpp"
#include "geometry.hpp"
#include "homogenize.hpp"
#include "norms.hpp"
#include "operators.hpp"

#include <functional>
#include <string>
#include <vector>

namespace thinhomog {

/// Reaction term from the closed-form family: zero, or a cubic clamped to
/// linear tails through a C^2 quintic blend outside a window, so that the
/// derivatives stay bounded while f(s)/s remains negative for large |s|.
/// Construction certifies the dissipative window: f(s) s <= -delta s^2 for
/// |s| >= threshold.
class Nonlinearity {
public:
    static Nonlinearity zero();
    static Nonlinearity clamped_cubic(double c0, double c1, double c2, double c3,
                                      double window = 3.0, double transition = 1.0);
    /// DSL: "none" or "cubic(c0, c1, c2, c3)".
    static Nonlinearity parse(const std::string& dsl);

    double operator()(double s) const;
    double derivative(double s) const;
    /// Antiderivative with F(0) = 0, for energy diagnostics.
    double antiderivative(double s) const;

    bool is_zero() const { return zero_; }
    double dissipative_threshold() const { return s_star_; }
    double dissipative_rate() const { return delta_; }
    std::string dsl() const;

private:
    Nonlinearity() = default;
    void build_certificate();

    bool zero_ = true;
    double c_[4] = {0.0, 0.0, 0.0, 0.0};
    double window_ = 3.0;
    double transition_ = 1.0;
    double s_star_ = 0.0;
    double delta_ = 0.0;
};

/// One implicit-linear / explicit-nonlinear step:
///   (M + dt T) u_next = M (u + dt f(u)).
Field step_imex(const SparseOperator& op, const Field& state, double dt, const Nonlinearity& nl,
                const Field* warm_start = nullptr);

struct Trajectory {
    std::vector<double> times;
    std::vector<Field> snapshots;
    std::vector<double> sup_norms; // one per time step
    double dt = 0.0;
};

/// Repeated IMEX stepping with snapshots at the requested times and a runtime
/// absorbing-bound check: no state may exceed max(threshold, |u0|_inf) + 1.
Trajectory evolve(const SparseOperator& op, const Field& u0, double t_end, double dt,
                  const Nonlinearity& nl, const std::vector<double>& snapshot_times = {});

struct EquilibriaSet {
    std::vector<Field> states;      // deduplicated converged roots
    std::vector<double> residuals;  // rescaled-norm Newton residuals
    int seeds_tried = 0;
    int seeds_converged = 0;
};

struct NewtonOptions {
    double residual_tol = 1e-9;
    int max_iterations = 60;
    double dedup_tol = 1e-6;
};

/// Damped Newton on T u = M f(u) from the given seed fields. Divergent seeds
/// are skipped, converged roots deduplicated in the rescaled norm.
EquilibriaSet equilibria(const SparseOperator& op, const Nonlinearity& nl,
                         const std::vector<Field>& seeds, const NewtonOptions& opts = {});

/// Default seed set: constants over [-2, 2] in steps of 0.25 plus small
/// multiples of the first nonconstant eigenfunction.
std::vector<Field> default_equilibria_seeds(const SparseOperator& op, std::uint64_t seed = 42);

/// Directed Hausdorff semidistance sup_a inf_b metric(a, b). Throws on empty B.
double semidistance(const std::vector<Field>& A, const std::vector<Field>& B,
                    const std::function<double(const Field&, const Field&)>& metric);

/// Terminal snapshots of seed trajectories past a transient; a finite sample
/// of the attractor, not the attractor itself.
std::vector<Field> attractor_surrogate(const SparseOperator& op, const Nonlinearity& nl,
                                       const std::vector<Field>& seeds, double t_transient,
                                       double dt = 1e-3);

struct DefectRow {
    double epsilon = 0.0;
    double t = 0.0;
    double defect_h1 = 0.0;
    double defect_l2 = 0.0;
};

struct SemigroupDefectResult {
    std::vector<DefectRow> rows;
    double gamma_fit = 0.0; // least-squares slope of log defect_h1 vs log t
};

struct DynamicsOptions {
    GridOptions grid{16, 64, 16};
    double dt = 1e-3;
};

/// Integrates the epsilon-problem from the extended start E u0 and the limit
/// problem from u0, and reports the rescaled defects at the requested times.
SemigroupDefectResult semigroup_defect(const ThinDomainSpec& spec, const EffectiveModel& model,
                                       const Nonlinearity& nl, const std::vector<double>& t_list,
                                       const Field& u0_on_base, const DynamicsOptions& opts = {});

/// Lyapunov energy 0.5 <T u, u> - int weight F(u), for the decrease check.
double energy(const SparseOperator& op, const Field& u, const Nonlinearity& nl);

} // namespace thinhomog
