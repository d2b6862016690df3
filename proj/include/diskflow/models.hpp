#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "diskflow/generator.hpp"

namespace diskflow {

// Koebe map z / (1-z)^2 and its inverse branch into the disk.
inline cplx koebe(cplx z) { return z / ((1.0 - z) * (1.0 - z)); }

inline cplx koebe_deriv(cplx z) { return (1.0 + z) / ((1.0 - z) * (1.0 - z) * (1.0 - z)); }

inline cplx koebe_inverse(cplx w) {
    if (std::abs(w) < 1e-9) return w * (1.0 - 2.0 * w);  // series tail near 0
    // Roots of w z^2 - (2w+1) z + w multiply to 1; take the one inside.
    const cplx s = std::sqrt(1.0 + 4.0 * w);
    return (1.0 + 2.0 * w - s) / (2.0 * w);
}

// Closed-form reference semiflows. Everything here evaluates the printed
// formulas; the library under test never routes through this type.
struct ClosedFormModel {
    std::string name;
    int n = 1;
    Generator gen;

    std::function<cplx(double, cplx)> flow;   // F_t(z), t >= 0
    std::function<cplx(cplx)> linearizer;     // h with mu = beta
    std::vector<cplx> repelling;              // null points eta_k, sorted by angle
    double gamma = 0.0;                       // f'(eta_k), same for all k
    double alpha_max = 0.0;                   // -gamma
    // Maximal petal k: Riemann map phi_k of the disk onto the petal, plus a
    // direct membership predicate for the open petal.
    std::function<cplx(int, cplx)> petal_map;
    std::function<bool(int, cplx)> petal_member;
};

namespace detail {

inline cplx nth_root_principal(cplx w, int n) { return std::exp(std::log(w) / double(n)); }

}  // namespace detail

// f(z) = z (1 - z^n): tau = 0, beta = 1, repelling points at the n-th roots
// of unity with gamma = -n. F_t(z) = z e^-t (1 - z^n + z^n e^-nt)^{-1/n};
// the radicand stays in the right half-plane for z in the disk and t >= 0,
// so the principal root is the branch continuous in t with F_0 = id.
inline ClosedFormModel example1(int n) {
    if (n < 1) throw ValidationError("example1 requires n >= 1");
    ClosedFormModel m;
    m.name = "example1";
    m.n = n;
    m.gen = make_closed_form(
        "example1:n=" + std::to_string(n),
        [n](cplx z) { return z * (1.0 - ipow(z, n)); },
        [n](cplx z) { return 1.0 - double(n + 1) * ipow(z, n); }, 0.0, false, 1.0);
    m.flow = [n](double t, cplx z) {
        const cplx zn = ipow(z, n);
        const cplx radicand = 1.0 - zn + zn * std::exp(-double(n) * t);
        return z * std::exp(-t) / detail::nth_root_principal(radicand, n);
    };
    m.linearizer = [n](cplx z) {
        return z / detail::nth_root_principal(1.0 - ipow(z, n), n);
    };
    for (int k = 0; k < n; ++k) m.repelling.push_back(std::exp(kI * (2.0 * kPi * k / n)));
    m.gamma = -double(n);
    m.alpha_max = double(n);
    m.petal_map = [n](int k, cplx z) {
        return std::exp(kI * (2.0 * kPi * k / n)) * detail::nth_root_principal(0.5 * (1.0 - z), n);
    };
    m.petal_member = [n](int k, cplx w) {
        if (std::abs(1.0 - 2.0 * ipow(w, n)) >= 1.0) return false;
        const cplx eta = std::exp(kI * (2.0 * kPi * k / n));
        return std::abs(std::arg(w * std::conj(eta))) < kPi / n;
    };
    return m;
}

// f(z) = -(1-z)(1+z^2)/(1+z): tau = 1, beta = 1, repelling points +-i with
// gamma = -2; maximal petals are the upper and lower half-disks. The square
// root in the printed F_t never meets the negative real axis on the disk for
// t >= 0, so the principal branch is again the continuous one; the flow is
// evaluated through whichever of the two algebraically equal quotients has
// the larger denominator.
inline ClosedFormModel example2() {
    ClosedFormModel m;
    m.name = "example2";
    m.gen = make_closed_form(
        "example2",
        [](cplx z) { return -(1.0 - z) * (1.0 + z * z) / (1.0 + z); },
        [](cplx z) {
            // f'(1) = 1 and f'(+-i) = -2 pin the signs here.
            const cplx num = (1.0 - z) * (1.0 + z * z) + (3.0 * z * z - 2.0 * z + 1.0) * (1.0 + z);
            return num / ((1.0 + z) * (1.0 + z));
        },
        1.0, true, 1.0);
    m.flow = [](double t, cplx z) {
        const cplx E = std::exp(2.0 * t) * (1.0 + z * z);
        const cplx q = (1.0 - z) * (1.0 - z);
        const cplx w = std::sqrt(2.0 * E - q);
        const cplx N = E - (1.0 - z) * w;
        const cplx D = E - q;
        const cplx Nc = E + (1.0 - z) * w;  // N * Nc = D^2
        return std::abs(Nc) >= std::abs(D) ? D / Nc : N / D;
    };
    m.linearizer = [](cplx z) { return (1.0 - z) / std::sqrt(1.0 + z * z); };
    m.repelling = {kI, -kI};
    m.gamma = -2.0;
    m.alpha_max = 2.0;
    m.petal_map = nullptr;  // not printed in closed form
    m.petal_member = [](int k, cplx w) {
        if (std::abs(w) >= 1.0) return false;
        return k == 0 ? w.imag() > 0.0 : w.imag() < 0.0;
    };
    return m;
}

// f(z) = z (1-z)/(1+z): tau = 0, beta = 1, eta = 1, gamma = -1/2. The
// linearizer is the Koebe function and the maximal petal is the disk minus
// the slit [-1, 0].
inline ClosedFormModel example3() {
    ClosedFormModel m;
    m.name = "example3";
    m.gen = make_closed_form(
        "example3",
        [](cplx z) { return z * (1.0 - z) / (1.0 + z); },
        [](cplx z) { return (1.0 - 2.0 * z - z * z) / ((1.0 + z) * (1.0 + z)); },
        0.0, false, 1.0);
    m.flow = [](double t, cplx z) {
        // Schroeder transport through the Koebe linearizer.
        return koebe_inverse(std::exp(-t) * koebe(z));
    };
    m.linearizer = [](cplx z) { return koebe(z); };
    m.repelling = {1.0};
    m.gamma = -0.5;
    m.alpha_max = 0.5;
    m.petal_map = [](int, cplx z) {
        const cplx h0 = ((1.0 - z) / (1.0 + z));
        return koebe_inverse(h0 * h0);
    };
    m.petal_member = [](int, cplx w) {
        if (std::abs(w) >= 1.0) return false;
        if (w.imag() != 0.0) return true;
        return w.real() > 0.0;
    };
    return m;
}

inline ClosedFormModel example_model(const std::string& name, int n = 1) {
    if (name == "example1") return example1(n);
    if (name == "example2") return example2();
    if (name == "example3") return example3();
    throw ValidationError("unknown example model: " + name);
}

// h(z) = z (1 - z^n)^{-1/n}, the closed-form linearizer for example1.
inline cplx example1_h(int n, cplx z) {
    return z / detail::nth_root_principal(1.0 - ipow(z, n), n);
}

}  // namespace diskflow
