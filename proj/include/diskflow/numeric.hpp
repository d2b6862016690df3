#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "diskflow/errors.hpp"

namespace diskflow {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

inline cplx unit(cplx z) { return z / std::abs(z); }

inline double sqr(double x) { return x * x; }

// Reduce an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

inline double angle_in_2pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

inline cplx ipow(cplx z, int n) {
    cplx r = 1.0;
    cplx b = z;
    for (int k = n; k > 0; k >>= 1) {
        if (k & 1) r *= b;
        b *= b;
    }
    return r;
}

struct Extrapolated {
    cplx value;
    double error;  // estimated, from the extrapolation tableau
};

// Neville extrapolation of samples (x_i, y_i) to x = 0. The x_i must be
// distinct and decreasing toward 0. Error estimate is the smallest diagonal
// increment observed; the value is taken at that entry.
inline Extrapolated neville_to_zero(const std::vector<double>& xs, const std::vector<cplx>& ys) {
    const std::size_t n = xs.size();
    if (n == 0 || ys.size() != n) throw ValidationError("neville_to_zero: bad input sizes");
    std::vector<cplx> row = ys;
    cplx best = ys.back();
    double best_err = std::numeric_limits<double>::infinity();
    cplx prev_diag = ys[0];
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = n - 1; i >= j; --i) {
            const double xi = xs[i], xj = xs[i - j];
            row[i] = (xj * row[i] - xi * row[i - 1]) / (xj - xi);
            if (i == j) break;  // unsigned loop guard
        }
        const cplx diag = row[n - 1];
        const double err = std::abs(diag - prev_diag);
        if (err < best_err) {
            best_err = err;
            best = diag;
        }
        prev_diag = diag;
    }
    return {best, best_err};
}

// Radial difference quotient g(r*zeta) / ((r-1)*zeta) extrapolated to r -> 1
// along r_k = 1 - 2^-k. This is the workhorse for angular limits.
template <class F>
Extrapolated radial_quotient_limit(F&& g, cplx zeta, int k_lo = 8, int k_hi = 20) {
    std::vector<double> xs;
    std::vector<cplx> qs;
    xs.reserve(k_hi - k_lo + 1);
    qs.reserve(k_hi - k_lo + 1);
    for (int k = k_lo; k <= k_hi; ++k) {
        const double eps = std::ldexp(1.0, -k);  // 1 - r
        const cplx z = (1.0 - eps) * zeta;
        qs.push_back(g(z) / ((-eps) * zeta));
        xs.push_back(eps);
    }
    return neville_to_zero(xs, qs);
}

// Extrapolate g(r*zeta) itself to r -> 1 along the same radii.
template <class F>
Extrapolated radial_value_limit(F&& g, cplx zeta, int k_lo = 8, int k_hi = 20) {
    std::vector<double> xs;
    std::vector<cplx> vs;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double eps = std::ldexp(1.0, -k);
        vs.push_back(g((1.0 - eps) * zeta));
        xs.push_back(eps);
    }
    return neville_to_zero(xs, vs);
}

// Golden-section minimization of a real function on [a, b].
template <class F>
double golden_min(F&& f, double a, double b, double xtol) {
    constexpr double phi = 0.6180339887498949;  // 1/golden ratio
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights (QUADPACK dqk15).
inline constexpr std::array<double, 8> kGk15Nodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr std::array<double, 8> kGk15Weights = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
inline constexpr std::array<double, 4> kGauss7Weights = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

template <class F>
void gk15_segment(F&& f, cplx a, cplx b, cplx& integral, double& err, double& resabs) {
    const cplx mid = 0.5 * (a + b);
    const cplx half = 0.5 * (b - a);
    const cplx fm = f(mid);
    cplx acc_k = kGk15Weights[7] * fm;
    cplx acc_g = kGauss7Weights[3] * fm;
    double acc_abs = kGk15Weights[7] * std::abs(fm);
    for (int i = 0; i < 7; ++i) {
        const cplx f1 = f(mid - half * kGk15Nodes[i]);
        const cplx f2 = f(mid + half * kGk15Nodes[i]);
        acc_k += kGk15Weights[i] * (f1 + f2);
        acc_abs += kGk15Weights[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) acc_g += kGauss7Weights[i / 2] * (f1 + f2);
    }
    integral = acc_k * half;
    err = std::abs((acc_k - acc_g) * half);
    resabs = acc_abs * std::abs(half);
}

}  // namespace detail

// Adaptive complex line integral of f along the straight segment [a, b]:
// globally adaptive bisection of the piece with the largest error estimate.
// Pieces whose estimate has reached the roundoff floor of the rule are never
// split again, and the piece count is bounded outright, so integrable
// singular growth near an endpoint cannot blow the tree up; the achievable
// error is max(tol, ~5e-13 * integral of |f|).
template <class F>
cplx integrate_segment(F&& f, cplx a, cplx b, double tol = 1e-13) {
    if (a == b) return 0.0;
    struct Piece {
        cplx a, b, integral;
        double err, resabs;
    };
    auto make = [&f](cplx pa, cplx pb) {
        Piece p{pa, pb, 0.0, 0.0, 0.0};
        detail::gk15_segment(f, pa, pb, p.integral, p.err, p.resabs);
        return p;
    };
    std::vector<Piece> pieces;
    pieces.reserve(64);
    pieces.push_back(make(a, b));
    for (int round = 0; round < 255; ++round) {
        double err_sum = 0.0, resabs_sum = 0.0, worst_err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            err_sum += pieces[i].err;
            resabs_sum += pieces[i].resabs;
            const bool at_floor = pieces[i].err <= 2e-14 * pieces[i].resabs;
            const double eff = at_floor ? 0.0 : pieces[i].err;
            if (eff > worst_err) {
                worst_err = eff;
                worst = i;
            }
        }
        if (worst_err == 0.0 || err_sum <= std::max(tol, 5e-13 * resabs_sum)) break;
        const Piece p = pieces[worst];
        const cplx mid = 0.5 * (p.a + p.b);
        pieces[worst] = make(p.a, mid);
        pieces.push_back(make(mid, p.b));
    }
    cplx acc = 0.0;
    for (const auto& p : pieces) acc += p.integral;
    return acc;
}

// Integral along a polyline given by waypoints. The error budget is split by
// arc length: detours contribute many short segments that otherwise would
// starve every piece of tolerance.
template <class F>
cplx integrate_polyline(F&& f, const std::vector<cplx>& pts, double tol = 1e-13) {
    cplx acc = 0.0;
    if (pts.size() < 2) return acc;
    double total_len = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) total_len += std::abs(pts[i + 1] - pts[i]);
    if (total_len == 0.0) return acc;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double share = std::abs(pts[i + 1] - pts[i]) / total_len;
        acc += integrate_segment(f, pts[i], pts[i + 1], std::max(tol * share, 1e-17));
    }
    return acc;
}

inline double distance_to_segment(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * d.real() + (p.imag() - a.imag()) * d.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

// Waypoints from `from` to `to` that keep clear of each point in `avoid` by
// roughly `radius` (shrunk when an endpoint is deliberately close). Detour
// arcs are approximated by chords and chosen to stay inside the unit disk.
inline std::vector<cplx> build_integration_path(cplx from, cplx to, const std::vector<cplx>& avoid,
                                                double radius = 1e-3) {
    std::vector<cplx> path = {from, to};
    for (const cplx c : avoid) {
        std::vector<cplx> out;
        out.push_back(path.front());
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const cplx p = path[i], q = path[i + 1];
            const double dp = std::abs(p - c), dq = std::abs(q - c);
            double rc = std::min({radius, 0.85 * dp, 0.85 * dq});
            if (rc < 1e-15) throw PathThroughZero("integration path endpoint sits on a zero of f");
            if (distance_to_segment(c, p, q) >= rc) {
                out.push_back(q);
                continue;
            }
            const double a0 = std::arg(p - c);
            const double a1 = std::arg(q - c);
            double sweep = wrap_angle(a1 - a0);  // shorter way first
            auto arc_ok = [&](double sw) {
                const cplx m = c + rc * std::exp(kI * (a0 + 0.5 * sw));
                return std::abs(m) < 1.0;
            };
            if (!arc_ok(sweep)) sweep = sweep > 0 ? sweep - 2.0 * kPi : sweep + 2.0 * kPi;
            const int chords = 16;
            out.push_back(c + rc * std::exp(kI * a0));
            for (int j = 1; j <= chords; ++j)
                out.push_back(c + rc * std::exp(kI * (a0 + sweep * j / chords)));
            out.push_back(q);
        }
        path = std::move(out);
    }
    return path;
}

// Central difference derivative of a holomorphic map; step 1e-6 balances
// truncation against roundoff for |f| of order one.
template <class F>
cplx central_derivative(F&& f, cplx z, double h = 1e-6) {
    return (f(z + cplx{h, 0.0}) - f(z - cplx{h, 0.0})) / (2.0 * h);
}

// Halton sequence (bases 2 and 3) mapped to the disk of radius rho.
inline double halton(unsigned index, unsigned base) {
    double f = 1.0, r = 0.0;
    for (unsigned i = index; i > 0; i /= base) {
        f /= base;
        r += f * (i % base);
    }
    return r;
}

inline std::vector<cplx> disk_samples(std::size_t count, double rho = 0.999) {
    std::vector<cplx> pts;
    pts.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
        const double r = rho * std::sqrt(halton(static_cast<unsigned>(i), 2));
        const double a = 2.0 * kPi * halton(static_cast<unsigned>(i), 3);
        pts.push_back(r * std::exp(kI * a));
    }
    return pts;
}

}  // namespace diskflow
