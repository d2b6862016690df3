#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "diskflow/numeric.hpp"

namespace diskflow {

struct HerglotzAtom {
    cplx zeta;      // unimodular location
    double weight;  // > 0
};

// p(z) = constant + sum_j w_j (1 + z conj(zeta_j)) / (1 - z conj(zeta_j)),
// with Re(constant) >= 0. Every such p has nonnegative real part on the disk,
// and both p and p' evaluate in closed form.
class AtomicHerglotz {
public:
    AtomicHerglotz() : constant_(1.0) {}

    AtomicHerglotz(cplx constant, std::vector<HerglotzAtom> atoms)
        : constant_(constant), atoms_(std::move(atoms)) {
        if (constant_.real() < 0.0)
            throw ValidationError("herglotz constant must have nonnegative real part");
        for (auto& a : atoms_) {
            if (!(a.weight > 0.0)) throw ValidationError("herglotz atom weights must be positive");
            const double m = std::abs(a.zeta);
            if (m == 0.0) throw ValidationError("herglotz atom location must be unimodular");
            a.zeta /= m;
        }
    }

    static AtomicHerglotz from_angles(cplx constant, const std::vector<std::pair<double, double>>& angle_weight) {
        std::vector<HerglotzAtom> atoms;
        atoms.reserve(angle_weight.size());
        for (const auto& [ang, w] : angle_weight) atoms.push_back({std::exp(kI * ang), w});
        return AtomicHerglotz(constant, std::move(atoms));
    }

    cplx eval(cplx z) const {
        cplx acc = constant_;
        for (const auto& a : atoms_) {
            const cplx zc = z * std::conj(a.zeta);
            acc += a.weight * (1.0 + zc) / (1.0 - zc);
        }
        return acc;
    }

    cplx deriv(cplx z) const {
        cplx acc = 0.0;
        for (const auto& a : atoms_) {
            const cplx cz = std::conj(a.zeta);
            const cplx d = 1.0 - z * cz;
            acc += a.weight * 2.0 * cz / (d * d);
        }
        return acc;
    }

    cplx constant() const { return constant_; }
    const std::vector<HerglotzAtom>& atoms() const { return atoms_; }

    // Largest atom weight sitting at zeta (angle match), zero if none.
    double weight_at(cplx zeta, double angle_tol = 1e-9) const {
        double w = 0.0;
        for (const auto& a : atoms_)
            if (std::abs(wrap_angle(std::arg(a.zeta) - std::arg(zeta))) < angle_tol) w += a.weight;
        return w;
    }

private:
    cplx constant_;
    std::vector<HerglotzAtom> atoms_;
};

}  // namespace diskflow
