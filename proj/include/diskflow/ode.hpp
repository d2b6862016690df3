#pragma once

#include <cmath>
#include <limits>

#include "diskflow/numeric.hpp"

namespace diskflow {

struct FlowOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double escape_radius = 1.0 - 1e-12;  // backward integration stops here

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ValidationError("tolerances must be positive");
        if (!(escape_radius < 1.0)) throw ValidationError("escape_radius must be < 1");
        if (!(max_step > 0.0)) throw ValidationError("max_step must be positive");
    }
};

// One accepted Dormand-Prince step with its quartic dense interpolant.
struct DenseStep {
    double t0 = 0.0, t1 = 0.0;
    cplx c0, c1, c2, c3, c4;

    cplx eval(double t) const {
        const double th = (t - t0) / (t1 - t0);
        const double th1 = 1.0 - th;
        return c0 + th * (c1 + th1 * (c2 + th * (c3 + th1 * c4)));
    }
};

enum class StepControl { proceed, stop };

struct IntegrationResult {
    double t;
    cplx y;
    bool reached_end;
};

// Dormand-Prince 5(4) for a single autonomous complex ODE y' = rhs(y).
// `on_step` sees every accepted step (with dense output) and may stop the
// integration early. Integrates toward t1 regardless of direction.
template <class RHS, class Sink>
IntegrationResult dopri5_integrate(RHS&& rhs, double t0, cplx y0, double t1,
                                   const FlowOptions& opt, Sink&& on_step) {
    opt.validate();
    if (t0 == t1) return {t0, y0, true};

    // Butcher tableau, classic DOPRI5 coefficients.
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    const double dir = t1 > t0 ? 1.0 : -1.0;
    double t = t0;
    cplx y = y0;
    cplx k1 = rhs(y);
    double h = dir * std::min(opt.max_step,
                              0.01 * (1.0 + std::abs(y)) / (1.0 + std::abs(k1)));

    while (dir * (t1 - t) > 0.0) {
        if (dir * (t + h) > dir * t1) h = t1 - t;
        if (std::abs(h) < 1e-14)
            throw StepUnderflow(t, "adaptive step collapsed below 1e-14");

        const cplx k2 = rhs(y + h * (a21 * k1));
        const cplx k3 = rhs(y + h * (a31 * k1 + a32 * k2));
        const cplx k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const cplx k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const cplx k6 = rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const cplx y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const cplx k7 = rhs(y1);

        const cplx errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y), std::abs(y1));
        const double err = std::abs(errv) / sc;

        if (err <= 1.0) {
            DenseStep step;
            step.t0 = t;
            step.t1 = t + h;
            const cplx dy = y1 - y;
            const cplx bspl = h * k1 - dy;
            step.c0 = y;
            step.c1 = dy;
            step.c2 = bspl;
            step.c3 = dy - h * k7 - bspl;
            step.c4 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

            t += h;
            y = y1;
            k1 = k7;  // first-same-as-last

            if (on_step(step, t, y) == StepControl::stop) return {t, y, false};

            const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
            if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
    return {t, y, true};
}

}  // namespace diskflow
