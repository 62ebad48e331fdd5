#pragma once

#include <stdexcept>
#include <string>

namespace thinhomog {

/// A point fell outside the domain a map or evaluator is defined on.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A grid is too coarse to resolve the fastest boundary oscillation.
class ResolutionError : public std::invalid_argument {
public:
    ResolutionError(const std::string& what, int required_nodes)
        : std::invalid_argument(what), required_nodes(required_nodes) {}

    int required_nodes;
};

/// An iterative solver failed to reach its tolerance within the iteration cap.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), residual(residual), iterations(iterations) {}

    double residual;
    int iterations;
};

/// The requested averaging regime does not apply to the given periods.
class RegimeError : public std::invalid_argument {
public:
    explicit RegimeError(const std::string& what) : std::invalid_argument(what) {}
};

/// A limit/average did not stabilize to the requested accuracy.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate, double partial_a, double partial_b)
        : std::runtime_error(what), estimate(estimate), partial_a(partial_a), partial_b(partial_b) {}

    double estimate;
    double partial_a;
    double partial_b;
};

/// A study-level precondition failed (e.g. requested modes are not reachable).
class StudyError : public std::runtime_error {
public:
    explicit StudyError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace thinhomog
