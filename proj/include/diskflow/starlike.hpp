#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "diskflow/herglotz.hpp"
#include "diskflow/numeric.hpp"

namespace diskflow {

// Closed-form starlike map from a finite atomic probability measure:
//
//   h(z) = C (z-tau)(1-z conj(tau)) (1-z conj(eta))^{-2a}
//          * exp[-2(1-a) sum_j s_j log(1-z conj(zeta_j))]
//
// with eta and a in (0,1] optional (a = 0, no eta-factor when absent) and
// sum s_j = 1. All logs are principal: 1 - z conj(zeta) has positive real
// part on the disk. When eta is present the quotient (z-eta) h'/h tends to
// -2a at eta.
class StarlikeClosedForm {
public:
    StarlikeClosedForm(cplx C, cplx tau, std::optional<cplx> eta, double a,
                       std::vector<HerglotzAtom> sigma)
        : C_(C), tau_(tau), eta_(eta), a_(eta ? a : 0.0), sigma_(std::move(sigma)) {
        if (std::abs(C_) < 1e-300) throw ValidationError("starlike form: C must be nonzero");
        const double mt = std::abs(tau_);
        if (mt > 1.0 + 1e-12) throw ValidationError("starlike form: |tau| <= 1 required");
        if (mt >= 1.0 - 1e-12) tau_ /= mt;
        if (eta_) {
            *eta_ = unit(*eta_);
            if (!(a > 0.0 && a <= 1.0)) throw ValidationError("starlike form: a must be in (0,1]");
        }
        double total = 0.0;
        for (auto& s : sigma_) {
            if (!(s.weight > 0.0)) throw ValidationError("starlike form: weights must be positive");
            s.zeta = unit(s.zeta);
            total += s.weight;
            if (eta_ && std::abs(wrap_angle(std::arg(s.zeta) - std::arg(*eta_))) < 1e-9)
                throw ValidationError("starlike form: sigma must have no atom at eta");
        }
        const double coeff = eta_ ? 1.0 - a_ : 1.0;
        if (coeff > 1e-12) {
            if (std::abs(total - 1.0) > 1e-9)
                throw ValidationError("starlike form: sigma must be a probability measure");
        } else if (!sigma_.empty() && std::abs(total - 1.0) > 1e-9) {
            throw ValidationError("starlike form: sigma must be a probability measure");
        }
    }

    cplx eval(cplx z) const {
        cplx log_rest = 0.0;
        if (eta_) log_rest += -2.0 * a_ * std::log(1.0 - z * std::conj(*eta_));
        const double coeff = -2.0 * (eta_ ? 1.0 - a_ : 1.0);
        for (const auto& s : sigma_) log_rest += coeff * s.weight * std::log(1.0 - z * std::conj(s.zeta));
        return C_ * (z - tau_) * (1.0 - z * std::conj(tau_)) * std::exp(log_rest);
    }

    cplx deriv(cplx z) const {
        // h' = C A E [ d/dz((z-tau)(1-z conj tau)) + (z-tau)(1-z conj tau) (log A E)' ]
        cplx log_rest = 0.0;
        cplx dlog = 0.0;
        if (eta_) {
            const cplx ce = std::conj(*eta_);
            log_rest += -2.0 * a_ * std::log(1.0 - z * ce);
            dlog += 2.0 * a_ * ce / (1.0 - z * ce);
        }
        const double coeff = eta_ ? 1.0 - a_ : 1.0;
        for (const auto& s : sigma_) {
            const cplx cz = std::conj(s.zeta);
            log_rest += -2.0 * coeff * s.weight * std::log(1.0 - z * cz);
            dlog += 2.0 * coeff * s.weight * cz / (1.0 - z * cz);
        }
        const cplx ct = std::conj(tau_);
        const cplx front = 1.0 - 2.0 * z * ct + std::norm(tau_);
        const cplx prod = (z - tau_) * (1.0 - z * ct);
        return C_ * std::exp(log_rest) * (front + prod * dlog);
    }

    // Visser-Ostrowski value at eta, exact from the representation.
    cplx q_at_eta() const {
        if (!eta_) throw ValidationError("starlike form: no eta present");
        return -2.0 * a_;
    }

    cplx C() const { return C_; }
    cplx tau() const { return tau_; }
    std::optional<cplx> eta() const { return eta_; }
    double a() const { return a_; }
    const std::vector<HerglotzAtom>& sigma() const { return sigma_; }

private:
    cplx C_;
    cplx tau_;
    std::optional<cplx> eta_;
    double a_;
    std::vector<HerglotzAtom> sigma_;
};

inline StarlikeClosedForm starlike_from_measure(cplx C, cplx tau, std::optional<cplx> eta, double a,
                                                std::vector<HerglotzAtom> sigma) {
    return StarlikeClosedForm(C, tau, eta, a, std::move(sigma));
}

}  // namespace diskflow
