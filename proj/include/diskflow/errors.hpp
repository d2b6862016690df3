#pragma once

#include <stdexcept>
#include <string>

namespace diskflow {

// Bad inputs: malformed measures, points outside the disk, schema violations.
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A radial/angular limit failed to stabilize under extrapolation.
struct DivergentLimit : std::runtime_error {
    explicit DivergentLimit(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive step size collapsed; the trajectory ran into a singularity of the field.
struct StepUnderflow : std::runtime_error {
    double t;
    explicit StepUnderflow(double t_, const std::string& what) : std::runtime_error(what), t(t_) {}
};

// Every admissible integration detour still passes through a zero of f.
struct PathThroughZero : std::runtime_error {
    explicit PathThroughZero(const std::string& what) : std::runtime_error(what) {}
};

// Newton refused to converge. Recoverable: probes use it to detect points
// outside the image of a map.
struct NoConvergence : std::runtime_error {
    double stall_parameter;
    explicit NoConvergence(const std::string& what, double stall = 0.0)
        : std::runtime_error(what), stall_parameter(stall) {}
};

// Petal equation has no univalent solution below alpha = -gamma.
struct AlphaTooSmall : std::invalid_argument {
    double alpha, alpha_min;
    AlphaTooSmall(double a, double amin, const std::string& what)
        : std::invalid_argument(what), alpha(a), alpha_min(amin) {}
};

}  // namespace diskflow
