#pragma once

#include <cmath>

#include "diskflow/numeric.hpp"

namespace diskflow {

// Canonical spiral wedge: the image of the disk under
// e^{i theta} ((1-z)/(1+z))^lambda with |lambda - 1| <= 1, lambda != 0.
// (1-z)/(1+z) maps the disk onto the right half-plane, so the principal
// logarithm below never meets the branch cut.
struct SpiralWedge {
    cplx lambda{1.0};
    double theta = 0.0;

    SpiralWedge() = default;
    SpiralWedge(cplx lambda_, double theta_) : lambda(lambda_), theta(theta_) {
        if (std::abs(lambda) < 1e-15) throw ValidationError("spiral wedge: lambda must be nonzero");
        if (std::abs(lambda - 1.0) > 1.0 + 1e-9)
            throw ValidationError("spiral wedge: need |lambda - 1| <= 1");
    }

    cplx eval(cplx z) const {
        return std::exp(kI * theta + lambda * std::log((1.0 - z) / (1.0 + z)));
    }

    // log of eval, continuous on the disk.
    cplx log_eval(cplx z) const { return kI * theta + lambda * std::log((1.0 - z) / (1.0 + z)); }

    // w is in the wedge iff some branch of (log(w e^{-i theta}) + 2 pi i k)/lambda
    // lands in the open strip |Im| < pi/2. Re(1/lambda) >= 1/2 on the admissible
    // lambda region separates the branch images by at least pi, so k in [-3, 3]
    // is exhaustive. The tiny collar keeps points that sit exactly on the edge
    // (petal boundaries evaluate there up to roundoff) classified as outside.
    bool contains(cplx w) const {
        if (w == cplx(0.0)) return false;
        const cplx base = std::log(w) - kI * theta;
        for (int k = -3; k <= 3; ++k) {
            const cplx u = (base + cplx{0.0, 2.0 * kPi * k}) / lambda;
            if (std::abs(u.imag()) < kPi / 2.0 - 1e-9) return true;
        }
        return false;
    }

    // Midline l = { e^{i theta + t lambda} }.
    cplx midline(double t) const { return std::exp(kI * theta + t * lambda); }
};

}  // namespace diskflow
