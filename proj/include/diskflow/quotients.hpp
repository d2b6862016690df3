#pragma once

#include <functional>
#include <vector>

#include "diskflow/boundary.hpp"
#include "diskflow/spirallike.hpp"

namespace diskflow {

// Visser-Ostrowski quotient of g at a boundary point zeta, extrapolated along
// the radius. When the radial limit of g is finite the quotient is
// (z-zeta) g'(z) / (g(z) - g(zeta)); when g tends to infinity it degenerates
// to the logarithmic form (z-zeta) g'(z)/g(z), the value used throughout the
// starlike/spirallike theory (it equals minus the quotient of 1/g).
inline cplx visser_ostrowski(const std::function<cplx(cplx)>& g,
                             const std::function<cplx(cplx)>& gd, cplx zeta,
                             int k_lo = 8, int k_hi = 20) {
    zeta = unit(zeta);
    std::vector<double> xs;
    std::vector<cplx> vals;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double eps = std::ldexp(1.0, -k);
        vals.push_back(g((1.0 - eps) * zeta));
        xs.push_back(eps);
    }
    // Unbounded radial growth marks the infinite-limit case; otherwise the
    // limit itself is extrapolated and subtracted.
    const bool infinite = std::abs(vals.back()) > 2.0 * std::abs(vals.front()) + 1.0;
    cplx limit = 0.0;
    if (!infinite) {
        const Extrapolated lim = neville_to_zero(xs, vals);
        if (!(lim.error <= 1e-3 * std::max(1.0, std::abs(lim.value))))
            throw DivergentLimit("visser-ostrowski: radial limit of the map does not stabilize");
        limit = lim.value;
    }

    std::vector<cplx> qs;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const cplx z = (1.0 - xs[i]) * zeta;
        const cplx denom = infinite ? vals[i] : vals[i] - limit;
        qs.push_back((z - zeta) * gd(z) / denom);
    }
    const Extrapolated q = neville_to_zero(xs, qs);
    if (!(q.error <= 1e-4 * std::max(1.0, std::abs(q.value))))
        throw DivergentLimit("visser-ostrowski quotient does not stabilize");
    return q.value;
}

// Q_h(eta) = mu / f'(eta) for the spirallike map associated with f,
// cross-checked against the extrapolated quotient mu (z-eta)/f(z).
inline cplx q_at_eta(const SpirallikeMap& h, const BoundaryFixedPoint& eta) {
    if (!(eta.gamma < 0.0)) throw ValidationError("q_at_eta: eta must carry gamma < 0");
    const cplx q = h.mu() / eta.gamma;
    auto g = [&h](cplx z) { return h.eval(z); };
    auto gd = [&h](cplx z) { return h.deriv(z); };
    const cplx v = visser_ostrowski(g, gd, eta.eta);
    if (std::abs(q - v) > 1e-4 * std::max(1.0, std::abs(q)))
        throw DivergentLimit("q_at_eta: extrapolated quotient disagrees with mu/gamma");
    return q;
}

// The wedge phase at eta: theta = lim arg h(r eta) for real nu, and
// (|nu|^2 / Re nu) lim arg h^{1/nu}(r eta) in general. Both reduce to
// Im(conj(nu) log h)/Re(nu) with the branch of log h continued along the
// radius; the divergent part of log h is annihilated because conj(nu) nu is
// real. Returned in (-pi, pi].
// The chain stops at k_hi = 14: deeper radii amplify any residual error in
// the eta angle like delta/(1-r) and poison the extrapolated phase.
inline double theta_at_eta(const SpirallikeMap& h, cplx eta, cplx nu, int k_lo = 3,
                           int k_hi = 14) {
    if (!(std::abs(nu) > 0.0) || nu.real() == 0.0)
        throw ValidationError("theta_at_eta: need Re nu != 0");
    eta = unit(eta);
    std::vector<double> xs;
    std::vector<cplx> thetas;
    cplx z_prev = (1.0 - std::ldexp(1.0, -k_lo)) * eta;
    cplx L = h.log_eval(z_prev);
    for (int k = k_lo; k <= k_hi; ++k) {
        const double eps = std::ldexp(1.0, -k);
        const cplx z = (1.0 - eps) * eta;
        if (k > k_lo) {
            L = h.log_continue(z_prev, L, z);
            z_prev = z;
        }
        xs.push_back(eps);
        thetas.push_back((std::conj(nu) * L).imag() / nu.real());
    }
    const Extrapolated th = neville_to_zero(xs, thetas);
    if (!(th.error <= 1e-4 * std::max(1.0, std::abs(th.value))))
        throw DivergentLimit("theta_at_eta: argument limit does not stabilize");
    return wrap_angle(th.value.real());
}

}  // namespace diskflow
