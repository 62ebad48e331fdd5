#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace thinhomog {

enum class ProfileKind { Constant, TrigPolynomial, SmoothedSawtooth };

/// One term of a trigonometric polynomial: coef * sin(2*pi*harmonic*y/period)
/// or coef * cos(...).
struct TrigTerm {
    double coef = 0.0;
    int harmonic = 1;
    bool is_sine = true;
};

/// A C^1 periodic boundary profile from the closed-form family
///   const(c) | trig(offset; a sin k; b cos k; ...) | saw(offset, amplitude, smoothing).
///
/// The smoothed sawtooth is the Gaussian-damped Fourier series of the unit
/// sawtooth, so every kind has an exact derivative rule. Bounds over one
/// period are cached at construction. In base dimension n > 1 the profile is
/// evaluated as a separable sum: offset counted once plus the oscillatory
/// part applied to each coordinate.
class BoundaryProfile {
public:
    static BoundaryProfile constant(double value, double period = 1.0);
    static BoundaryProfile trig(double offset, std::vector<TrigTerm> terms, double period = 1.0);
    static BoundaryProfile sawtooth(double offset, double amplitude, double smoothing,
                                    double period = 1.0);

    /// Parses the profile DSL. Throws std::invalid_argument on malformed input.
    static BoundaryProfile parse(std::string_view dsl, double period = 1.0);

    double operator()(double y) const { return offset_ + oscillation(y); }
    double derivative(double y) const;

    /// Separable-sum evaluation for an n-dimensional argument.
    double value_nd(const double* x, int n) const;
    /// Partial derivative of the separable sum in direction j.
    double partial_nd(const double* x, int n, int j) const;

    ProfileKind kind() const { return kind_; }
    double period() const { return period_; }
    double offset() const { return offset_; }
    double lower_bound() const { return lower_; }
    double upper_bound() const { return upper_; }
    /// Bounds of the separable sum over [0, period]^n.
    double lower_bound_nd(int n) const { return offset_ + n * (lower_ - offset_); }
    double upper_bound_nd(int n) const { return offset_ + n * (upper_ - offset_); }
    /// Exact a-priori bound on |P'|.
    double derivative_bound() const { return derivative_bound_; }

    /// Canonical DSL text (used by config re-serialization).
    std::string dsl() const;

    const std::vector<TrigTerm>& terms() const { return terms_; }

private:
    BoundaryProfile() = default;
    void finalize_bounds();
    double oscillation(double y) const;
    double oscillation_derivative(double y) const;

    ProfileKind kind_ = ProfileKind::Constant;
    double period_ = 1.0;
    double offset_ = 0.0;
    std::vector<TrigTerm> terms_;    // trig terms; the sawtooth stores its series here
    double saw_amplitude_ = 0.0;     // DSL parameters, kept for re-serialization
    double saw_smoothing_ = 0.0;
    double lower_ = 0.0;
    double upper_ = 0.0;
    double derivative_bound_ = 0.0;
};

} // namespace thinhomog
