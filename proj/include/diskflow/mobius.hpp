#pragma once

#include <cmath>

#include "diskflow/numeric.hpp"

namespace diskflow {

// Linear fractional map (a z + b) / (c z + d), ad - bc != 0. Composition is
// coefficient-matrix multiplication.
struct MobiusMap {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    MobiusMap() = default;
    MobiusMap(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
        if (std::abs(a * d - b * c) < 1e-15)
            throw ValidationError("mobius map must have nonzero determinant");
    }

    cplx apply(cplx z) const { return (a * z + b) / (c * z + d); }
    cplx deriv(cplx z) const {
        const cplx den = c * z + d;
        return (a * d - b * c) / (den * den);
    }
    MobiusMap compose(const MobiusMap& o) const {  // this after o
        return MobiusMap(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                         c * o.b + d * o.d);
    }
    bool is_identity(double tol = 1e-14) const {
        return std::abs(b) < tol && std::abs(c) < tol && std::abs(a - d) < tol;
    }
};

struct MobiusFixedPoints {
    cplx z0{0.0};       // multiplier mult0
    cplx z1{0.0};       // second fixed point, or infinity
    cplx mult0{0.0};
    cplx mult1{0.0};
    bool z1_at_infinity = false;
    bool parabolic = false;  // coincident fixed points
};

// Finite fixed points solve c z^2 + (d - a) z - b = 0.
inline MobiusFixedPoints mobius_fixed_points(const MobiusMap& m) {
    if (m.is_identity()) throw ValidationError("fixed points of the identity are everywhere");
    MobiusFixedPoints out;
    if (std::abs(m.c) < 1e-15) {
        if (std::abs(m.a - m.d) < 1e-15) {
            // Translation conjugate: single fixed point at infinity.
            out.z1_at_infinity = true;
            out.parabolic = true;
            return out;
        }
        out.z0 = m.b / (m.d - m.a);
        out.mult0 = m.a / m.d;
        out.z1_at_infinity = true;
        out.mult1 = m.d / m.a;
        return out;
    }
    const cplx disc = (m.d - m.a) * (m.d - m.a) + 4.0 * m.c * m.b;
    const cplx rt = std::sqrt(disc);
    const cplx z0 = (m.a - m.d + rt) / (2.0 * m.c);
    const cplx z1 = (m.a - m.d - rt) / (2.0 * m.c);
    out.z0 = z0;
    out.z1 = z1;
    out.mult0 = m.deriv(z0);
    out.mult1 = m.deriv(z1);
    out.parabolic = std::abs(z0 - z1) < 1e-9 * (1.0 + std::abs(z0));
    return out;
}

// Samples the closed disk |z - center| <= radius and tests F(disk) inside it.
inline bool invariant_disk_check(const MobiusMap& m, cplx center, double radius,
                                 int samples = 256) {
    auto inside = [&](cplx w) { return std::abs(w - center) <= radius + 1e-9; };
    for (int j = 0; j < samples; ++j) {
        const cplx p = center + radius * std::exp(kI * (2.0 * kPi * j / samples));
        if (!inside(m.apply(p))) return false;
    }
    for (int j = 0; j < samples / 4; ++j) {
        const double r = radius * std::sqrt(halton(j + 1, 2));
        const double a = 2.0 * kPi * halton(j + 1, 3);
        if (!inside(m.apply(center + r * std::exp(kI * a)))) return false;
    }
    return true;
}

// The automorphism G(z) = (z + b)/(1 + z b), b = (B-1)/(B+1): repelling fixed
// point -1 with multiplier B, attracting +1 with multiplier 1/B.
inline MobiusMap conjugating_automorphism(double B) {
    if (!(B >= 1.0)) throw ValidationError("conjugating automorphism needs B >= 1");
    const double b = (B - 1.0) / (B + 1.0);
    return MobiusMap(1.0, b, b, 1.0);
}

}  // namespace diskflow
