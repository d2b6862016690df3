#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "diskflow/flow.hpp"
#include "diskflow/quotients.hpp"
#include "diskflow/spirallike.hpp"
#include "diskflow/wedge.hpp"

namespace diskflow {

// A backward flow-invariant domain Omega = h^{-1}(W_{beta/alpha, theta}):
// the Riemann map phi = h^{-1} o h0 sends 1 -> tau and -1 -> eta, and the
// semiflow restricted to Omega extends to a group.
struct Petal {
    BoundaryFixedPoint eta;
    double alpha = 0.0;
    double theta = 0.0;
    std::shared_ptr<const SpirallikeMap> h;
    SpiralWedge wedge;            // lambda = beta/alpha
    cplx seed{0.0};               // interior point with h(seed) = e^{i theta}
    std::vector<cplx> boundary;   // closed polyline through tau and eta
    std::string generator_label;

    const Generator& gen() const { return h->generator(); }

    cplx h0(cplx z) const { return wedge.eval(z); }

    // phi(z) by Newton continuation. The strip coordinate u = Log((1-z)/(1+z))
    // is convex over the disk preimage, so the continuation may start from the
    // nearest previously computed point and walk a straight u segment.
    cplx phi(cplx z) const {
        require_interior(z, "petal map");
        const cplx u_end = std::log((1.0 - z) / (1.0 + z));
        cplx u_cur{0.0};
        cplx z_cur{0.0};
        bool have_start = false;
        {
            std::lock_guard<std::mutex> lock(phi_cache_->mu);
            double best = std::numeric_limits<double>::infinity();
            for (const auto& e : phi_cache_->entries) {
                const double d = std::abs(u_end - e.u);
                if (d < best) {
                    best = d;
                    u_cur = e.u;
                    z_cur = e.z;
                    have_start = true;
                }
            }
        }
        if (!have_start) {
            z_cur = h->invert(std::exp(kI * theta), seed);  // phi(0)
            remember_phi(u_cur, z_cur);
        }
        const cplx lambda = wedge.lambda;
        const int steps =
            std::max(1, static_cast<int>(std::ceil(std::abs(lambda * (u_end - u_cur)) / 0.5)));
        for (int j = 1; j <= steps; ++j) {
            const cplx u = u_cur + (u_end - u_cur) * (double(j) / steps);
            z_cur = h->invert(std::exp(kI * theta + lambda * u), z_cur);
        }
        remember_phi(u_end, z_cur);
        return z_cur;
    }

    bool contains(cplx z) const {
        require_interior(z, "membership");
        if (std::abs(z - gen().tau()) < 1e-12) return false;  // h(tau) = 0 is not in W
        return wedge.contains(h->eval(z));
    }

    struct PhiCacheEntry {
        cplx u;
        cplx z;
    };
    struct PhiCache {
        std::mutex mu;
        std::vector<PhiCacheEntry> entries;
    };
    std::shared_ptr<PhiCache> phi_cache_ = std::make_shared<PhiCache>();

private:
    void remember_phi(cplx u, cplx z) const {
        std::lock_guard<std::mutex> lock(phi_cache_->mu);
        if (phi_cache_->entries.size() >= 512) return;
        for (const auto& e : phi_cache_->entries)
            if (std::abs(u - e.u) < 0.15) return;
        phi_cache_->entries.push_back({u, z});
    }
};

inline bool membership(const Petal& petal, cplx z) { return petal.contains(z); }

// alpha = -gamma is the maximal petal.
inline bool is_maximal(const Petal& petal, double tol = 1e-9) {
    return std::abs(petal.alpha + petal.eta.gamma) <= tol;
}

namespace detail {

// Edge point at parameter v reached through the wedge interior: continuation
// along the midline to e^{i theta + lambda v}, then a sweep of the phase from
// the midline onto the edge. Used to restart walks past corners of the petal
// boundary, where h has a critical value and Newton jams along the circle.
// Edges are walked with a tiny inward inset of the strip coordinate: the
// rotated-by-roundoff exact edge can fall marginally outside h(disk), while
// the inset target is provably interior and displaces the polyline by far
// less than the tracing tolerances.
inline constexpr double kEdgeInset = 3e-8;

inline cplx edge_point_via_midline(const Petal& petal, int sigma, double v) {
    const cplx lambda = petal.wedge.lambda;
    cplx z = petal.seed;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(lambda * v) / 0.4)));
    for (int j = 1; j <= steps; ++j)
        z = petal.h->invert(std::exp(kI * petal.theta + lambda * (v * j / steps)), z);
    for (int j = 1; j <= 8; ++j) {
        const cplx lw =
            kI * petal.theta + lambda * cplx{v, sigma * (kPi / 2.0 - kEdgeInset) * (j / 8.0)};
        z = petal.h->invert(std::exp(lw), z);
    }
    return z;
}

// Walk one wedge edge (sigma = +-1) in the h plane, inverting
// w = exp(i theta + lambda (v + sigma i pi/2)) by continuation. Walks from
// v = 0 up toward eta (increasing |h|) or down toward tau, stopping when the
// preimage is within `stop_dist` of the endpoint.
inline std::vector<cplx> walk_edge(const Petal& petal, int sigma, bool toward_eta,
                                   double step_cap, double stop_dist) {
    const cplx lambda = petal.wedge.lambda;
    auto edge_log = [&](double v) {
        return kI * petal.theta + lambda * cplx{v, sigma * (kPi / 2.0 - kEdgeInset)};
    };
    const cplx target = toward_eta ? petal.eta.eta : petal.gen().tau();
    // Bound v by the growth rate of log|h| along the edge.
    const double v_cap = (60.0 + 8.0 * std::abs(std::log(stop_dist))) /
                         std::max(0.05, std::abs(lambda.real()));

    std::vector<cplx> pts;
    // Ease from the midline onto the edge.
    cplx z_cur = petal.seed;
    for (int j = 1; j <= 4; ++j) {
        const cplx lw =
            kI * petal.theta + lambda * cplx{0.0, sigma * (kPi / 2.0 - kEdgeInset) * (j / 4.0)};
        z_cur = petal.h->invert(std::exp(lw), z_cur);
    }
    pts.push_back(z_cur);

    double v = 0.0, dv = 0.1;
    const double dir = toward_eta ? 1.0 : -1.0;
    int jumps = 0;
    while (std::abs(z_cur - target) > stop_dist) {
        if (std::abs(v) > v_cap)
            throw NoConvergence("boundary tracing stalled before reaching " +
                                    std::string(toward_eta ? "eta" : "tau"),
                                v);
        const double v_try = v + dir * dv;
        cplx z_next;
        bool failed = false;
        try {
            z_next = petal.h->invert(std::exp(edge_log(v_try)), z_cur);
        } catch (const NoConvergence&) {
            failed = true;
        }
        if (!failed && std::abs(z_next - z_cur) > step_cap && dv > 1e-7) {
            dv *= 0.5;
            continue;
        }
        if (failed) {
            if (dv >= 1e-6) {
                dv *= 0.5;
                continue;
            }
            // Corner of the boundary: hop over it through the wedge interior.
            if (++jumps > 8) throw NoConvergence("boundary tracing stalled", v);
            const double v_jump = v + dir * 0.05;
            z_cur = edge_point_via_midline(petal, sigma, v_jump);
            v = v_jump;
            dv = 0.02;
            pts.push_back(z_cur);
            continue;
        }
        z_cur = z_next;
        v = v_try;
        pts.push_back(z_cur);
        if (std::abs(z_next - pts[pts.size() - 2]) < 0.3 * step_cap) dv *= 1.5;
    }
    return pts;
}

}  // namespace detail

// Closed boundary polyline: tau -> (edge +) -> eta -> (edge -) -> tau.
// Endpoints are inserted exactly; the adjacent traced points already sit
// within 5e-5 of them.
inline std::vector<cplx> trace_boundary(const Petal& petal, int samples = 257) {
    if (samples < 16) throw ValidationError("trace_boundary: need at least 16 samples");
    const double cap = 6.0 / samples;
    const double stop = 5e-5;
    const cplx tau = petal.gen().tau();

    const auto up_p = detail::walk_edge(petal, +1, true, cap, stop);
    const auto down_p = detail::walk_edge(petal, +1, false, cap, stop);
    const auto up_m = detail::walk_edge(petal, -1, true, cap, stop);
    const auto down_m = detail::walk_edge(petal, -1, false, cap, stop);

    std::vector<cplx> out;
    out.reserve(up_p.size() + down_p.size() + up_m.size() + down_m.size() + 3);
    out.push_back(tau);
    for (auto it = down_p.rbegin(); it != down_p.rend(); ++it) out.push_back(*it);
    out.insert(out.end(), up_p.begin(), up_p.end());
    out.push_back(petal.eta.eta);
    for (auto it = up_m.rbegin(); it != up_m.rend(); ++it) out.push_back(*it);
    out.insert(out.end(), down_m.begin(), down_m.end());
    out.push_back(tau);
    return out;
}

// Univalent solution of alpha phi'(z)(z^2 - 1) = 2 f(phi(z)) normalized by
// phi(1) = tau, phi(-1) = eta, realized as h^{-1} o h0 with
// h0 = e^{i theta}((1-z)/(1+z))^{beta/alpha}. The seed starts at the
// nontangential point (1 - 1e-3) eta and is transported along the forward
// flow to unit modulus of h, which fixes theta deterministically.
inline Petal solve_petal(const Generator& gen, const BoundaryFixedPoint& eta, double alpha,
                         int trace_samples = 257) {
    const cplx beta = gen.beta();
    if (!(beta.real() > 0.0)) throw ValidationError("solve_petal: need Re f'(tau) > 0");
    if (!(eta.gamma < 0.0)) throw ValidationError("solve_petal: eta must carry gamma < 0");
    if (alpha < -eta.gamma - 1e-9)
        throw AlphaTooSmall(alpha, -eta.gamma,
                            "petal equation has no univalent solution below alpha = -gamma");

    Petal petal;
    petal.eta = eta;
    petal.alpha = alpha;
    petal.generator_label = gen.label();
    petal.h = associated_spirallike(gen, eta.eta, {eta.eta});

    const cplx s0 = (1.0 - 1e-3) * eta.eta;
    const cplx log_s0 = petal.h->log_eval(s0);
    const double t_star = log_s0.real() / beta.real();
    cplx seed;
    if (t_star >= 0.0) {
        seed = advance(gen, s0, t_star);
    } else {
        seed = petal.h->invert(std::exp(log_s0 - beta * t_star), s0);
    }
    petal.seed = seed;
    // The transported argument carries an O(1 - |s0|) bias; the extrapolated
    // asymptotic phase at eta is the exact bisector of the maximal wedge and
    // is required for boundary tracing of asymmetric flows. The transport
    // value remains the fallback when the limit refuses to stabilize.
    const double theta_transport = wrap_angle(petal.h->log_eval(seed).imag());
    try {
        petal.theta = theta_at_eta(*petal.h, eta.eta, beta / eta.gamma);
    } catch (const DivergentLimit&) {
        petal.theta = theta_transport;
    }
    if (std::abs(wrap_angle(petal.theta - theta_transport)) > 0.05)
        petal.theta = theta_transport;  // the limit converged to a wrong branch
    petal.wedge = SpiralWedge(beta / alpha, petal.theta);
    if (!petal.contains(seed))
        throw NoConvergence("solve_petal: transported seed missed the wedge midline");
    petal.boundary = trace_boundary(petal, trace_samples);
    return petal;
}

// Group orbit inside the petal: F~_t(z) = h^{-1}(e^{-beta t} h(z)), defined
// for every real t. Once the target contracts past double resolution at an
// endpoint of the orbit, that endpoint is returned outright.
inline cplx backward_orbit(const Petal& petal, cplx z, double t) {
    if (!petal.contains(z)) throw ValidationError("backward_orbit: point is not in the petal");
    if (t == 0.0) return z;
    const cplx beta = petal.gen().beta();
    const cplx log_z = petal.h->log_eval(z);
    const cplx log_target = log_z - beta * t;

    const cplx nu = beta / petal.eta.gamma;
    const cplx log_ref = petal.h->log_eval((1.0 - 1e-3) * petal.eta.eta);
    const double dist_eta = 1e-3 * std::exp(((log_target - log_ref) / nu).real());
    if (dist_eta < 1e-13) return petal.eta.eta;
    if (!petal.gen().tau_on_boundary()) {
        // Near tau, log h ~ log(z - tau) + const.
        const double dist_tau = std::exp((log_target - petal.h->log_eval(
            petal.gen().tau() + 0.5 * (1.0 - std::abs(petal.gen().tau())))).real()) *
            0.5 * (1.0 - std::abs(petal.gen().tau()));
        if (dist_tau < 1e-15 * (1.0 + std::abs(petal.gen().tau()))) return petal.gen().tau();
    }

    const int stages = std::max(1, static_cast<int>(std::ceil(std::abs(beta * t) / 0.5)));
    cplx z_cur = z;
    for (int j = 1; j <= stages; ++j) {
        const cplx lw = log_z - beta * (t * j / stages);
        z_cur = petal.h->invert(std::exp(lw), z_cur);
    }
    return z_cur;
}

struct Flower {
    std::vector<Petal> petals;  // one maximal petal per repelling point
    std::string generator_label;
};

// One maximal petal (alpha = -gamma_k) per detected repelling point, with
// pairwise interior-disjointness verified on a low-discrepancy sample.
inline Flower build_flower(const Generator& gen, int scan_count = 4096,
                           int disjointness_samples = 2000, int trace_samples = 257) {
    Flower flower;
    flower.generator_label = gen.label();
    for (const auto& bfp : boundary_null_points(gen, scan_count))
        flower.petals.push_back(solve_petal(gen, bfp, -bfp.gamma, trace_samples));

    if (flower.petals.size() > 1) {
        for (const cplx z : disk_samples(disjointness_samples)) {
            int hits = 0;
            for (const auto& p : flower.petals) hits += p.contains(z) ? 1 : 0;
            if (hits > 1)
                throw NoConvergence("flower petals overlap at a sampled interior point",
                                    std::abs(z));
        }
    }
    return flower;
}

struct ConjugationReport {
    double A = 0.0;             // e^{-gamma}, the time-1 multiplier at eta
    double B = 0.0;
    double alpha_B = 0.0;       // log B
    double conjugation_residual = 0.0;   // max |phi_B(G_1(z)) - F_1(phi_B(z))|
    bool inclusion_ok = false;           // sampled phi_B(disk) inside phi_A(disk)
    bool images_equal = false;           // no sampled phi_A point escapes phi_B
};

// Corollary-style conjugation check: phi_B intertwines the Mobius hyperbolic
// group of multiplier B at -1 with the semiflow, and the images shrink as B
// grows.
inline ConjugationReport conjugation_check(const Generator& gen, const BoundaryFixedPoint& eta,
                                           double B, int grid = 20) {
    const double A = std::exp(-eta.gamma);
    if (B < A - 1e-9) throw ValidationError("conjugation_check: need B >= A = e^{-gamma}");
    B = std::max(B, A);

    ConjugationReport rep;
    rep.A = A;
    rep.B = B;
    rep.alpha_B = std::log(B);

    const Petal petal_B = solve_petal(gen, eta, rep.alpha_B);
    const Petal petal_A = solve_petal(gen, eta, -eta.gamma);
    const double alpha = rep.alpha_B;

    double residual = 0.0;
    for (const cplx z : disk_samples(grid * grid / 2, 0.8)) {
        const cplx gz = hyperbolic_group(alpha, 1.0, z);
        const cplx lhs = petal_B.phi(gz);
        const cplx rhs = advance(gen, petal_B.phi(z), 1.0);
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    rep.conjugation_residual = residual;

    bool inclusion = true;
    bool escapes = false;
    for (const cplx z : disk_samples(240, 0.93)) {
        const cplx pb = petal_B.phi(z);
        if (!petal_A.contains(pb)) inclusion = false;
        const cplx pa = petal_A.phi(z);
        if (!petal_B.contains(pa)) escapes = true;
    }
    rep.inclusion_ok = inclusion;
    rep.images_equal = !escapes;
    return rep;
}

}  // namespace diskflow
