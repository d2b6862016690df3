#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>

#include "diskflow/herglotz.hpp"
#include "diskflow/numeric.hpp"

namespace diskflow {

enum class FlowRegime {
    elliptic_group,
    interior_attracting,
    boundary_hyperbolic,
    boundary_parabolic,
    automorphism_flow,
};

inline const char* to_string(FlowRegime r) {
    switch (r) {
        case FlowRegime::elliptic_group: return "elliptic-group";
        case FlowRegime::interior_attracting: return "interior-attracting";
        case FlowRegime::boundary_hyperbolic: return "boundary-hyperbolic";
        case FlowRegime::boundary_parabolic: return "boundary-parabolic";
        case FlowRegime::automorphism_flow: return "automorphism-flow";
    }
    return "?";
}

struct DenjoyWolffInfo {
    cplx tau;
    bool tau_on_boundary;
    cplx beta;  // f'(tau); real for boundary tau
    FlowRegime regime;
};

struct BerksonPortaData {
    cplx tau;
    bool tau_on_boundary;
    AtomicHerglotz p;
};

struct CompleteData {
    cplx a;
    double b;
};

struct ClosedFormData {
    std::function<cplx(cplx)> f;
    std::function<cplx(cplx)> df;
};

// A semi-complete vector field on the unit disk together with its
// Denjoy-Wolff data. Values are immutable after construction; evaluation is
// a pure function, so generators are freely shared across threads.
class Generator {
public:
    enum class Kind { berkson_porta, complete, closed_form };

    cplx eval(cplx z) const {
        switch (kind_) {
            case Kind::berkson_porta: {
                const auto& d = std::get<BerksonPortaData>(data_);
                return (z - d.tau) * (1.0 - z * std::conj(d.tau)) * d.p.eval(z);
            }
            case Kind::complete: {
                const auto& d = std::get<CompleteData>(data_);
                return d.a - std::conj(d.a) * z * z + kI * d.b * z;
            }
            case Kind::closed_form:
                return std::get<ClosedFormData>(data_).f(z);
        }
        return 0.0;
    }

    cplx deriv(cplx z) const {
        switch (kind_) {
            case Kind::berkson_porta: {
                const auto& d = std::get<BerksonPortaData>(data_);
                const cplx ct = std::conj(d.tau);
                return (1.0 - 2.0 * z * ct + std::norm(d.tau)) * d.p.eval(z) +
                       (z - d.tau) * (1.0 - z * ct) * d.p.deriv(z);
            }
            case Kind::complete: {
                const auto& d = std::get<CompleteData>(data_);
                return -2.0 * std::conj(d.a) * z + kI * d.b;
            }
            case Kind::closed_form:
                return std::get<ClosedFormData>(data_).df(z);
        }
        return 0.0;
    }

    cplx tau() const { return tau_; }
    bool tau_on_boundary() const { return tau_on_boundary_; }
    cplx beta() const { return beta_; }
    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }

    const BerksonPortaData* berkson_porta() const { return std::get_if<BerksonPortaData>(&data_); }
    const CompleteData* complete() const { return std::get_if<CompleteData>(&data_); }

    // The default is the zero complete field; factories below fill in the
    // cached Denjoy-Wolff data for everything useful.
    Generator() : data_(CompleteData{0.0, 0.0}) {}

    friend Generator make_berkson_porta(cplx tau, AtomicHerglotz p);
    friend Generator make_complete(cplx a, double b);
    friend Generator make_closed_form(std::string label, std::function<cplx(cplx)> f,
                                      std::function<cplx(cplx)> df, cplx tau, bool tau_on_boundary,
                                      cplx beta);

private:
    Kind kind_ = Kind::complete;
    std::variant<BerksonPortaData, CompleteData, ClosedFormData> data_;
    cplx tau_{0.0};
    bool tau_on_boundary_ = false;
    cplx beta_{0.0};
    std::string label_;
};

inline Generator make_berkson_porta(cplx tau, AtomicHerglotz p) {
    const double m = std::abs(tau);
    if (m > 1.0 + 1e-12) throw ValidationError("berkson-porta point must satisfy |tau| <= 1");
    Generator g;
    g.kind_ = Generator::Kind::berkson_porta;
    const bool boundary = m >= 1.0 - 1e-12;
    if (boundary) tau /= m;
    g.data_ = BerksonPortaData{tau, boundary, std::move(p)};
    g.tau_ = tau;
    g.tau_on_boundary_ = boundary;
    g.label_ = "berkson_porta";
    const auto& d = std::get<BerksonPortaData>(g.data_);
    if (!boundary) {
        g.beta_ = (1.0 - std::norm(tau)) * d.p.eval(tau);
    } else {
        // Angular derivative at the Denjoy-Wolff point, taken as a radial
        // limit exactly like the derivative at any other boundary null point.
        auto f = [&g](cplx z) { return g.eval(z); };
        const Extrapolated e = radial_quotient_limit(f, tau);
        if (std::abs(e.value.imag()) > 1e-6 * std::max(1.0, std::abs(e.value)) ||
            e.value.real() < -1e-10)
            throw ValidationError("boundary Denjoy-Wolff derivative must be real nonnegative");
        g.beta_ = std::max(0.0, e.value.real());
    }
    if (g.beta_.real() < -1e-12)
        throw ValidationError("berkson-porta generator with Re f'(tau) < 0");
    return g;
}

inline Generator make_complete(cplx a, double b) {
    Generator g;
    g.kind_ = Generator::Kind::complete;
    g.data_ = CompleteData{a, b};
    g.label_ = "complete";
    if (std::abs(a) < 1e-15) {
        g.tau_ = 0.0;
        g.tau_on_boundary_ = false;
        g.beta_ = kI * b;
        return g;
    }
    // Null points solve conj(a) z^2 - i b z - a = 0; the product of the roots
    // is unimodular, so they sit either both on the circle or mirrored across it.
    const cplx ca = std::conj(a);
    const double disc = 4.0 * std::norm(a) - b * b;
    const double scale = 4.0 * std::norm(a) + b * b;
    if (disc > 1e-12 * scale) {
        const double rt = std::sqrt(disc);
        const cplx z1 = (kI * b + rt) / (2.0 * ca);
        const cplx z2 = (kI * b - rt) / (2.0 * ca);
        auto fp = [&](cplx z) { return -2.0 * ca * z + kI * b; };
        const cplx tau = fp(z1).real() >= fp(z2).real() ? z1 : z2;
        g.tau_ = unit(tau);
        g.tau_on_boundary_ = true;
        g.beta_ = fp(g.tau_).real();
    } else if (disc < -1e-12 * scale) {
        const double rt = std::sqrt(-disc);
        const cplx z1 = kI * (b + rt) / (2.0 * ca);
        const cplx z2 = kI * (b - rt) / (2.0 * ca);
        const cplx tau = std::abs(z1) < std::abs(z2) ? z1 : z2;
        g.tau_ = tau;
        g.tau_on_boundary_ = false;
        g.beta_ = -2.0 * ca * tau + kI * b;
    } else {
        g.tau_ = unit(kI * b / (2.0 * ca));
        g.tau_on_boundary_ = true;
        g.beta_ = 0.0;
    }
    return g;
}

inline Generator make_closed_form(std::string label, std::function<cplx(cplx)> f,
                                  std::function<cplx(cplx)> df, cplx tau, bool tau_on_boundary,
                                  cplx beta) {
    Generator g;
    g.kind_ = Generator::Kind::closed_form;
    g.data_ = ClosedFormData{std::move(f), std::move(df)};
    g.tau_ = tau;
    g.tau_on_boundary_ = tau_on_boundary;
    g.beta_ = beta;
    g.label_ = std::move(label);
    return g;
}

struct CompleteMatch {
    bool matches = false;
    cplx a{0.0};
    double b = 0.0;
};

// Matches f against the polynomial form a - conj(a) z^2 + i b z on five
// circle nodes (exact DFT for degree <= 4) plus two off-grid probes against
// aliasing from higher-degree terms.
inline CompleteMatch is_complete(const Generator& gen) {
    constexpr int n = 5;
    constexpr double rho = 0.5;
    std::array<cplx, n> fv;
    double scale = 1.0;
    for (int j = 0; j < n; ++j) {
        fv[j] = gen.eval(rho * std::exp(kI * (2.0 * kPi * j / n)));
        scale = std::max(scale, std::abs(fv[j]));
    }
    std::array<cplx, n> coef;
    for (int m = 0; m < n; ++m) {
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) acc += fv[j] * std::exp(-kI * (2.0 * kPi * j * m / n));
        coef[m] = acc / (static_cast<double>(n) * std::pow(rho, m));
    }
    const double tol = 1e-12 * scale;
    if (std::abs(coef[3]) > tol || std::abs(coef[4]) > tol) return {};
    if (std::abs(coef[1].real()) > tol) return {};
    if (std::abs(coef[2] + std::conj(coef[0])) > tol) return {};
    const cplx a = coef[0];
    const double b = coef[1].imag();
    auto model = [&](cplx z) { return a - std::conj(a) * z * z + kI * b * z; };
    for (const cplx z : {cplx{0.81, 0.0}, cplx{-0.37, 0.5}}) {
        if (std::abs(gen.eval(z) - model(z)) > 1e-10 * (1.0 + std::abs(gen.eval(z)))) return {};
    }
    return {true, a, b};
}

inline DenjoyWolffInfo classify(const Generator& gen) {
    DenjoyWolffInfo info;
    info.tau = gen.tau();
    info.tau_on_boundary = gen.tau_on_boundary();
    info.beta = gen.beta();
    const double re = info.beta.real();
    if (!info.tau_on_boundary) {
        info.regime = std::abs(re) <= 1e-9 ? FlowRegime::elliptic_group
                                           : FlowRegime::interior_attracting;
    } else if (std::abs(info.beta) <= 1e-9) {
        // Reported but unsupported downstream: no petals in the parabolic case.
        info.regime = FlowRegime::boundary_parabolic;
    } else {
        info.regime = is_complete(gen).matches ? FlowRegime::automorphism_flow
                                               : FlowRegime::boundary_hyperbolic;
    }
    return info;
}

inline void require_interior(cplx z, const char* who) {
    if (!(std::abs(z) < 1.0))
        throw ValidationError(std::string(who) + ": point must lie inside the unit disk");
}

}  // namespace diskflow
