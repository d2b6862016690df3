#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "diskflow/generator.hpp"

namespace diskflow {

struct BoundaryFixedPoint {
    cplx eta;        // unimodular null point of f, distinct from tau
    double gamma;    // angular derivative f'(eta) < 0
    double quality;  // extrapolation residual of the radial quotient
    double angle() const { return angle_in_2pi(std::arg(eta)); }
};

// Radial limit of f(r eta)/((r-1) eta) over r = 1 - 2^-k, k = 8..20.
// The limit must stabilize, be real to 1e-4, and be strictly negative;
// the imaginary part is discarded after the check.
inline double angular_derivative(const Generator& gen, cplx eta) {
    eta = unit(eta);
    auto f = [&gen](cplx z) { return gen.eval(z); };
    const Extrapolated e = radial_quotient_limit(f, eta);
    const double mag = std::max(1.0, std::abs(e.value));
    if (!(e.error <= 1e-4 * mag))
        throw DivergentLimit("angular derivative quotient does not stabilize (gamma = -inf?)");
    if (std::abs(e.value.imag()) > 1e-4 * mag)
        throw DivergentLimit("angular derivative has a non-real limit");
    if (!(e.value.real() < 0.0))
        throw DivergentLimit("angular derivative is not negative");
    return e.value.real();
}

namespace detail {

// Angle of the minimizer of |f(r e^{i phi})| near a bracketed scan minimum.
inline double refine_null_angle(const Generator& gen, double lo, double hi, double r) {
    auto obj = [&](double phi) { return std::norm(gen.eval(r * std::exp(kI * phi))); };
    return golden_min(obj, lo, hi, 1e-12);
}

}  // namespace detail

// Scans |f| on the circle of radius 1 - 1e-4, refines each dip by
// golden-section in the angle (a second pass at radius 1 - 1e-6 sharpens the
// angle beyond the first-stage bias), certifies that |f| extrapolates to zero
// along the radius, and attaches the angular derivative. Candidates whose
// quotient diverges are dropped: they carry no finite repelling data.
inline std::vector<BoundaryFixedPoint> boundary_null_points(const Generator& gen,
                                                            int scan_count = 4096) {
    if (gen.beta().real() <= 0.0)
        throw ValidationError("boundary_null_points requires Re f'(tau) > 0");
    if (scan_count < 8) throw ValidationError("scan_count too small");

    const double r_scan = 1.0 - 1e-4;
    const double threshold = 1e-2;
    std::vector<double> mag(scan_count);
    for (int j = 0; j < scan_count; ++j)
        mag[j] = std::abs(gen.eval(r_scan * std::exp(kI * (2.0 * kPi * j / scan_count))));

    const double tau_angle = gen.tau_on_boundary() ? angle_in_2pi(std::arg(gen.tau())) : -10.0;
    std::vector<BoundaryFixedPoint> found;
    const double step = 2.0 * kPi / scan_count;
    for (int j = 0; j < scan_count; ++j) {
        const double prev = mag[(j + scan_count - 1) % scan_count];
        const double next = mag[(j + 1) % scan_count];
        if (!(mag[j] < threshold && mag[j] <= prev && mag[j] <= next)) continue;
        const double phi0 = step * j;
        // The minimizer of |f| at radius r sits O((1-r)^2) off the null angle,
        // so the refinement climbs through three radii; the last stage leaves
        // a bias of order 1e-16, far below the downstream extrapolations.
        double phi = detail::refine_null_angle(gen, phi0 - step, phi0 + step, r_scan);
        phi = detail::refine_null_angle(gen, phi - 2e-5, phi + 2e-5, 1.0 - 1e-6);
        phi = detail::refine_null_angle(gen, phi - 1e-10, phi + 1e-10, 1.0 - 1e-8);
        phi = angle_in_2pi(phi);
        if (2.0 * kPi - phi < 1e-9) phi = 0.0;  // keep the ordering stable at the seam

        if (gen.tau_on_boundary() && std::abs(wrap_angle(phi - tau_angle)) < 1e-6) continue;
        const cplx eta = std::exp(kI * phi);
        bool duplicate = false;
        for (const auto& bfp : found)
            if (std::abs(wrap_angle(phi - bfp.angle())) < 1e-6) duplicate = true;
        if (duplicate) continue;

        // Certify the radial modulus really vanishes at eta.
        const double eps = std::ldexp(1.0, -20);
        const double tail = std::abs(gen.eval((1.0 - eps) * eta));
        try {
            auto f = [&gen](cplx z) { return gen.eval(z); };
            const Extrapolated q = radial_quotient_limit(f, eta);
            if (tail > 16.0 * eps * (1.0 + std::abs(q.value))) continue;
            const double mag_q = std::max(1.0, std::abs(q.value));
            if (!(q.error <= 1e-4 * mag_q) || std::abs(q.value.imag()) > 1e-4 * mag_q ||
                !(q.value.real() < 0.0))
                continue;
            found.push_back({eta, q.value.real(), q.error});
        } catch (const DivergentLimit&) {
            continue;
        }
    }
    std::sort(found.begin(), found.end(),
              [](const BoundaryFixedPoint& a, const BoundaryFixedPoint& b) {
                  return a.angle() < b.angle();
              });
    return found;
}

// The detected point nearest a requested angle, if any falls within `window`.
inline std::optional<BoundaryFixedPoint> boundary_null_point_near(const Generator& gen,
                                                                  double angle,
                                                                  int scan_count = 4096,
                                                                  double window = 0.15) {
    const auto pts = boundary_null_points(gen, scan_count);
    std::optional<BoundaryFixedPoint> best;
    double best_d = window;
    for (const auto& p : pts) {
        const double d = std::abs(wrap_angle(p.angle() - angle));
        if (d <= best_d) {
            best_d = d;
            best = p;
        }
    }
    return best;
}

}  // namespace diskflow
