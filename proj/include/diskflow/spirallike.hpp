#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diskflow/generator.hpp"

namespace diskflow {

// The spirallike (starlike) map h associated with a generator: the solution
// of mu h = h' f, evaluated as h(z) = h(z0) exp(mu int_{z0}^{z} dw/f(w))
// along polylines that detour around the zeros of f. h is single-valued:
// for interior tau the residue of mu/f at tau is 1, so winding contributes
// exact multiples of 2 pi i; for boundary tau no interior path can wind.
//
// Thread-safety: the map is immutable apart from an append-only anchor cache
// of (point, log h) pairs guarded by a mutex.
class SpirallikeMap {
public:
    // Interior tau is normalized by h'(tau) = 1 and requires mu = f'(tau);
    // boundary tau is normalized by h(0) = 1 and requires |mu - beta| <= beta.
    static SpirallikeMap build(Generator gen, cplx mu, cplx z0,
                               std::vector<cplx> extra_avoid = {}) {
        if (!(mu.real() > 0.0)) throw ValidationError("spirallike: need Re mu > 0");
        const cplx beta = gen.beta();
        if (!gen.tau_on_boundary()) {
            if (std::abs(mu - beta) > 1e-9 * (1.0 + std::abs(beta)))
                throw ValidationError("spirallike: interior tau admits only mu = f'(tau)");
        } else {
            if (std::abs(mu - beta) > beta.real() + 1e-9)
                throw ValidationError("spirallike: boundary tau requires |mu - beta| <= beta");
        }
        if (std::abs(gen.eval(z0)) < 1e-14)
            throw ValidationError("spirallike: base point must not be a zero of f");
        require_interior(z0, "spirallike base point");

        SpirallikeMap h;
        h.gen_ = std::move(gen);
        h.mu_ = mu;
        h.base_ = z0;
        h.avoid_.push_back(h.gen_.tau());
        for (cplx p : extra_avoid) h.avoid_.push_back(p);

        if (!h.gen_.tau_on_boundary()) {
            // log h(z0) = Log(z0 - tau) + int_tau^z0 (mu/f - 1/(w - tau)) dw;
            // the integrand is analytic at tau, so a single segment suffices.
            const cplx tau = h.gen_.tau();
            auto reg = [&h, tau](cplx w) { return h.mu_ / h.gen_.eval(w) - 1.0 / (w - tau); };
            h.base_log_ = std::log(z0 - tau) + integrate_segment(reg, tau, z0, 1e-13);
            h.normalization_ = "h'(tau)=1";
        } else {
            h.base_log_ = z0 == cplx(0.0) ? cplx(0.0) : h.path_log(0.0, z0);
            h.normalization_ = "h(0)=1";
        }
        return h;
    }

    const Generator& generator() const { return gen_; }
    cplx mu() const { return mu_; }
    cplx base_point() const { return base_; }
    cplx base_value() const { return std::exp(base_log_); }
    const std::string& normalization() const { return normalization_; }

    // log h(z); the branch is unspecified (consistent modulo 2 pi i).
    cplx log_eval(cplx z) const {
        int depth;
        return log_eval_depth(z, depth);
    }

    cplx log_eval_depth(cplx z, int& depth) const {
        cplx from = base_, from_log = base_log_;
        depth = nearest_anchor(z, from, from_log) + 1;
        const cplx L = from_log + path_log(from, z);
        remember_anchor(z, L, depth);
        return L;
    }

    cplx eval(cplx z) const { return std::exp(log_eval(z)); }

    // Single path from the base point, bypassing the anchor cache.
    cplx log_eval_direct(cplx z) const { return base_log_ + path_log(base_, z); }

    cplx deriv(cplx z) const { return mu_ * eval(z) / gen_.eval(z); }

    // Continuous continuation of log h from a known value along the segment.
    cplx log_continue(cplx z_from, cplx log_from, cplx z_to) const {
        return log_from + path_log(z_from, z_to);
    }

    // Damped Newton in the log plane for h(z) = w. The iteration realigns the
    // branch of log h - log w each step, so convergence means
    // |h(z) - w| < 1e-10 max(1, |w|).
    cplx invert(cplx w, cplx seed) const {
        if (w == cplx(0.0)) throw ValidationError("invert: w must be nonzero");
        require_interior(seed, "invert seed");
        const cplx Lw = std::log(w);
        const double tol = 1e-10 * std::max(1.0, 1.0 / std::abs(w));

        cplx z = seed;
        if (std::abs(z) > 1.0 - 1e-14) z *= (1.0 - 1e-14) / std::abs(z);
        // Anchored evaluation first; long anchor chains accumulate error, so
        // convergence reached through a deep chain is re-verified against a
        // direct single-path evaluation from the base point.
        bool direct = false;
        int depth = 0;
        auto value = [&](cplx p) {
            if (direct) return log_eval_direct(p);
            return log_eval_depth(p, depth);
        };
        cplx g = align(value(z) - Lw);
        const double g0 = std::abs(g);
        for (int it = 0; it < 100; ++it) {
            if (std::abs(g) <= tol) {
                if (direct || depth <= 12) return z;
                direct = true;
                g = align(value(z) - Lw);
                if (std::abs(g) <= tol) return z;
            }
            if (it >= 30 && std::abs(g) > std::max(1e-3 * g0, 1e-6))
                throw NoConvergence("invert: negligible progress after 30 steps", std::abs(g));
            const cplx step = -g * gen_.eval(z) / mu_;
            // Converged in the z plane: roots pinned on the unit circle keep a
            // residual of order |mu/f| * 1e-14 that no step can reduce, and
            // steps below the floating-point lattice cannot move z at all.
            if (std::abs(step) <= 1e-13 * (1.0 + std::abs(z)) && std::abs(g) < 1e-5) return z;
            if (std::abs(step) <= 2.5e-16 * (1.0 + std::abs(z))) return z;
            double s = 1.0;
            bool moved = false;
            for (int halve = 0; halve < 40; ++halve, s *= 0.5) {
                cplx zc = z + s * step;
                const double m = std::abs(zc);
                // Roots on the unit circle make the Newton step tangential, so
                // an exiting trial is projected back rather than shortened.
                if (m > 1.0 - 1e-14) zc *= (1.0 - 1e-14) / m;
                const cplx gc = align(value(zc) - Lw);
                if (std::abs(gc) < std::abs(g)) {
                    z = zc;
                    g = gc;
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                if (!direct) {
                    direct = true;
                    g = align(value(z) - Lw);
                    continue;
                }
                throw NoConvergence("invert: damped Newton stalled", std::abs(g));
            }
        }
        throw NoConvergence("invert: no convergence in 100 steps", std::abs(g));
    }

    std::optional<cplx> try_invert(cplx w, cplx seed) const {
        try {
            return invert(w, seed);
        } catch (const NoConvergence&) {
            return std::nullopt;
        }
    }

private:
    SpirallikeMap() = default;

    static cplx align(cplx g) {  // reduce Im to (-pi, pi]
        return g - cplx{0.0, 2.0 * kPi * std::round(g.imag() / (2.0 * kPi))};
    }

    cplx path_log(cplx from, cplx to) const {
        if (from == to) return 0.0;
        auto integrand = [this](cplx w) { return mu_ / gen_.eval(w); };
        const auto path = build_integration_path(from, to, avoid_, 1e-3);
        return integrate_polyline(integrand, path, 1e-12);
    }

    struct Anchor {
        cplx point;
        cplx log_h;
        int depth;  // hops from the base point, a proxy for accumulated error
    };
    struct AnchorCache {
        std::mutex mu;
        std::vector<Anchor> entries;
    };

    int nearest_anchor(cplx z, cplx& from, cplx& from_log) const {
        std::lock_guard<std::mutex> lock(cache_->mu);
        double best = std::abs(z - from);
        int depth = 0;
        for (const auto& a : cache_->entries) {
            const double d = std::abs(z - a.point);
            if (d < best) {
                best = d;
                from = a.point;
                from_log = a.log_h;
                depth = a.depth;
            }
        }
        return depth;
    }

    void remember_anchor(cplx z, cplx L, int depth) const {
        std::lock_guard<std::mutex> lock(cache_->mu);
        if (cache_->entries.size() >= 1024) return;
        // Spacing shrinks near the boundary so radial chains toward a null
        // point re-integrate only short increments.
        const double spacing = std::min(0.01, 0.3 * (1.0 - std::abs(z)));
        for (const auto& a : cache_->entries)
            if (std::abs(z - a.point) < spacing) return;
        cache_->entries.push_back({z, L, depth});
    }

    Generator gen_;
    cplx mu_{1.0};
    cplx base_{0.0};
    cplx base_log_{0.0};
    std::string normalization_;
    std::vector<cplx> avoid_;
    std::shared_ptr<AnchorCache> cache_ = std::make_shared<AnchorCache>();
};

// Associated map with the default normalization: mu = f'(tau), base point at
// the origin for boundary tau or offset toward `toward` for interior tau.
inline std::shared_ptr<const SpirallikeMap> associated_spirallike(const Generator& gen,
                                                                  cplx toward = 1.0,
                                                                  std::vector<cplx> extra_avoid = {}) {
    cplx z0;
    if (gen.tau_on_boundary()) {
        z0 = 0.0;
    } else {
        const cplx dir = std::abs(toward - gen.tau()) < 1e-12 ? cplx(1.0) : unit(toward - gen.tau());
        z0 = gen.tau() + 0.45 * (1.0 - std::abs(gen.tau())) * dir;
    }
    return std::make_shared<const SpirallikeMap>(
        SpirallikeMap::build(gen, gen.beta(), z0, std::move(extra_avoid)));
}

// Koenigs construction at an attracting fixed point with 0 < |multiplier| < 1:
// returns (F^n(z) - z_fixed) / multiplier^n.
template <class F>
cplx koenigs_iterate(F&& f, cplx z_fixed, cplx multiplier, cplx z, int n) {
    const double m = std::abs(multiplier);
    if (!(m > 0.0 && m < 1.0))
        throw ValidationError("koenigs_iterate: need 0 < |multiplier| < 1");
    cplx w = z;
    const double d0 = std::abs(w - z_fixed);
    for (int i = 0; i < n; ++i) {
        w = f(w);
        if (std::abs(w - z_fixed) > 2.0 * d0 + 1e-12)
            throw NoConvergence("koenigs_iterate: orbit fails to contract", double(i));
    }
    return (w - z_fixed) * std::exp(-double(n) * std::log(multiplier));
}

}  // namespace diskflow
