#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diskflow/boundary.hpp"
#include "diskflow/generator.hpp"
#include "diskflow/ode.hpp"

namespace diskflow {

namespace detail {

// Once the orbit is within this distance of the Denjoy-Wolff point the field
// is linear to working precision and the remaining flow is taken in one
// exponential step.
inline constexpr double kLinearizedTail = 1e-8;

inline bool attracting_dw(const Generator& gen) { return gen.beta().real() > 1e-9; }

}  // namespace detail

// u(t, z0) for t >= 0: solution of u' = -f(u), u(0) = z0.
inline cplx advance(const Generator& gen, cplx z0, double t, const FlowOptions& opt = {}) {
    require_interior(z0, "advance");
    if (t < 0.0) throw ValidationError("advance: t must be nonnegative");
    if (t == 0.0) return z0;

    auto rhs = [&gen](cplx u) { return -gen.eval(u); };
    const bool shortcut = detail::attracting_dw(gen);
    const cplx tau = gen.tau();
    auto sink = [&](const DenseStep&, double, cplx y) {
        return shortcut && std::abs(y - tau) < detail::kLinearizedTail ? StepControl::stop
                                                                       : StepControl::proceed;
    };
    IntegrationResult res = dopri5_integrate(rhs, 0.0, z0, t, opt, sink);
    cplx u = res.y;
    if (!res.reached_end) u = tau + std::exp(-gen.beta() * (t - res.t)) * (u - tau);
    // Forward invariance holds exactly; clamp the last ulp of roundoff.
    const double m = std::abs(u);
    if (m >= 1.0) u *= (1.0 - 1e-15) / m;
    return u;
}

struct BackwardResult {
    cplx value;                      // endpoint, or the crossing point when exited
    std::optional<double> exit_time; // set when the orbit left the disk

    bool exited() const { return exit_time.has_value(); }
};

// Integrates u' = -f(u) for t <= 0. Leaving the disk is a legitimate outcome:
// the crossing of |u| = escape_radius is located on the dense output and
// reported as the exit time.
inline BackwardResult advance_backward(const Generator& gen, cplx z0, double t,
                                       const FlowOptions& opt = {}) {
    require_interior(z0, "advance_backward");
    if (t > 0.0) throw ValidationError("advance_backward: t must be nonpositive");
    if (t == 0.0) return {z0, std::nullopt};

    auto rhs = [&gen](cplx u) { return -gen.eval(u); };
    std::optional<double> exit_time;
    cplx exit_point;
    auto sink = [&](const DenseStep& step, double, cplx y) {
        if (std::abs(y) < opt.escape_radius) return StepControl::proceed;
        // First crossing of the escape radius inside this step.
        double lo = step.t0, hi = step.t1;
        for (int i = 0; i < 200 && std::abs(hi - lo) > 1e-15 * (1.0 + std::abs(hi)); ++i) {
            const double mid = 0.5 * (lo + hi);
            (std::abs(step.eval(mid)) < opt.escape_radius ? lo : hi) = mid;
        }
        exit_time = hi;
        exit_point = step.eval(hi);
        return StepControl::stop;
    };
    IntegrationResult res = dopri5_integrate(rhs, 0.0, z0, t, opt, sink);
    if (exit_time) return {exit_point, exit_time};
    return {res.y, std::nullopt};
}

struct TrajectorySample {
    double t;
    cplx z;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;  // strictly increasing t
    std::string generator_label;
    std::optional<double> backward_exit_time;
};

// Dense-output sampling of the orbit on [t_min, t_max] with t_min <= 0 <= t_max.
// The backward part truncates at the disk exit and records it.
inline Trajectory trajectory(const Generator& gen, cplx z0, double t_min, double t_max,
                             int sample_count, const FlowOptions& opt = {}) {
    require_interior(z0, "trajectory");
    if (!(t_min <= 0.0 && 0.0 <= t_max) || t_max <= t_min)
        throw ValidationError("trajectory: need t_min <= 0 <= t_max, t_min < t_max");
    if (sample_count < 2) throw ValidationError("trajectory: need at least 2 samples");

    std::vector<double> times(sample_count);
    for (int i = 0; i < sample_count; ++i)
        times[i] = t_min + (t_max - t_min) * i / (sample_count - 1);

    Trajectory out;
    out.generator_label = gen.label();
    auto rhs = [&gen](cplx u) { return -gen.eval(u); };

    // Forward sweep over nonnegative sample times.
    std::vector<TrajectorySample> fwd;
    {
        std::size_t next = 0;
        while (next < times.size() && times[next] < 0.0) ++next;
        const std::size_t first_fwd = next;
        if (first_fwd < times.size()) {
            const bool shortcut = detail::attracting_dw(gen);
            const cplx tau = gen.tau();
            double t_stop = 0.0;
            cplx y_stop = z0;
            bool stopped = false;
            auto sink = [&](const DenseStep& step, double t_now, cplx y) {
                while (next < times.size() && times[next] <= t_now + 1e-15) {
                    fwd.push_back({times[next], times[next] == 0.0 ? z0 : step.eval(times[next])});
                    ++next;
                }
                if (shortcut && std::abs(y - tau) < detail::kLinearizedTail) {
                    stopped = true;
                    t_stop = t_now;
                    y_stop = y;
                    return StepControl::stop;
                }
                return StepControl::proceed;
            };
            if (next < times.size() && times[next] == 0.0) {
                fwd.push_back({0.0, z0});
                ++next;
            }
            if (next < times.size())
                dopri5_integrate(rhs, 0.0, z0, t_max, opt, sink);
            while (next < times.size()) {
                // Linearized tail samples past the shortcut point.
                if (!stopped) break;
                const double tj = times[next];
                fwd.push_back({tj, tau + std::exp(-gen.beta() * (tj - t_stop)) * (y_stop - tau)});
                ++next;
            }
        }
    }

    // Backward sweep over negative sample times, nearest to zero first.
    std::vector<TrajectorySample> bwd;
    {
        std::vector<double> neg;
        for (double tv : times)
            if (tv < 0.0) neg.push_back(tv);
        std::sort(neg.begin(), neg.end(), std::greater<double>());
        if (!neg.empty()) {
            std::size_t next = 0;
            auto sink = [&](const DenseStep& step, double t_now, cplx y) {
                while (next < neg.size() && neg[next] >= t_now - 1e-15) {
                    bwd.push_back({neg[next], step.eval(neg[next])});
                    ++next;
                }
                if (std::abs(y) >= opt.escape_radius) {
                    double lo = step.t0, hi = step.t1;
                    for (int i = 0; i < 200 && std::abs(hi - lo) > 1e-15; ++i) {
                        const double mid = 0.5 * (lo + hi);
                        (std::abs(step.eval(mid)) < opt.escape_radius ? lo : hi) = mid;
                    }
                    out.backward_exit_time = hi;
                    return StepControl::stop;
                }
                return StepControl::proceed;
            };
            try {
                dopri5_integrate(rhs, 0.0, z0, neg.back(), opt, sink);
            } catch (const StepUnderflow& e) {
                // Wedged against a boundary singularity: record and truncate.
                out.backward_exit_time = e.t;
            }
        }
    }

    std::sort(bwd.begin(), bwd.end(),
              [](const TrajectorySample& a, const TrajectorySample& b) { return a.t < b.t; });
    out.samples = std::move(bwd);
    out.samples.insert(out.samples.end(), fwd.begin(), fwd.end());
    return out;
}

// Closed-form hyperbolic automorphism group with fixed points +1 (attracting)
// and -1 (repelling): G_t(z) = (z+1+e^{-at}(z-1)) / (z+1-e^{-at}(z-1)).
inline cplx hyperbolic_group(double alpha, double t, cplx z) {
    if (!(alpha > 0.0)) throw ValidationError("hyperbolic_group: alpha must be positive");
    const double e = std::exp(-alpha * t);
    return (z + 1.0 + e * (z - 1.0)) / (z + 1.0 - e * (z - 1.0));
}

// Radial derivative of F_t at a repelling boundary fixed point, extrapolated
// from difference quotients along the radius. Agrees with e^{-t gamma}.
inline double boundary_multiplier(const Generator& gen, cplx eta, double t,
                                  const FlowOptions& opt = {}) {
    eta = unit(eta);
    auto g = [&](cplx z) { return advance(gen, z, t, opt) - eta; };
    const Extrapolated e = radial_quotient_limit(g, eta, 6, 14);
    const double mag = std::max(1.0, std::abs(e.value));
    if (!(e.error <= 1e-5 * mag))
        throw DivergentLimit("boundary multiplier quotient does not stabilize");
    if (std::abs(e.value.imag()) > 1e-4 * mag)
        throw DivergentLimit("boundary multiplier has a non-real limit");
    return e.value.real();
}

}  // namespace diskflow
