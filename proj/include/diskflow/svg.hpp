#pragma once

#include <charconv>
#include <string>
#include <vector>

#include "diskflow/flow.hpp"
#include "diskflow/generator.hpp"
#include "diskflow/petal.hpp"

namespace diskflow {

struct RenderSpec {
    int grid = 24;        // arrows per axis
    int image_size = 800;
    std::vector<std::string> petal_colors = {"#c62828", "#1565c0", "#2e7d32", "#6a1b9a",
                                             "#ef6c00", "#00838f", "#5d4037"};
    std::vector<cplx> show_trajectories;  // streamline seeds
    double t_min = -6.0;
    double t_max = 12.0;

    void validate() const {
        if (grid < 4) throw ValidationError("render grid must be at least 4");
        if (image_size < 100) throw ValidationError("render image_size must be at least 100");
    }
};

struct Arrow {
    cplx at;
    cplx dir;   // unit vector, the flow direction -f/|f|
    double len;
};

// Arrow anchors on a grid over the disk; the length maps |f| through tanh so
// arrows stay legible both near the Denjoy-Wolff point and near the boundary.
inline std::vector<Arrow> arrow_grid(const Generator& gen, const RenderSpec& spec) {
    spec.validate();
    std::vector<Arrow> arrows;
    const int n = spec.grid;
    const double cell = 1.92 / n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cplx z{-0.96 + cell * (i + 0.5), -0.96 + cell * (j + 0.5)};
            if (std::abs(z) > 0.97) continue;
            const cplx f = gen.eval(z);
            const double mag = std::abs(f);
            if (mag < 1e-13) continue;
            arrows.push_back({z, -f / mag, std::tanh(2.0 * mag) * cell * 0.85});
        }
    }
    return arrows;
}

namespace detail {

inline void fmt(std::string& out, double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
    out.append(buf, res.ptr);
}

inline void xy(std::string& out, cplx z) {
    fmt(out, z.real());
    out.push_back(' ');
    fmt(out, z.imag());
}

}  // namespace detail

// Deterministic SVG phase portrait: unit circle, arrow grid in the direction
// of the flow, one closed path per petal boundary, optional streamlines.
// Identical inputs produce byte-identical output.
inline std::string render_phase_portrait(const Generator& gen, const Flower* flower,
                                         const RenderSpec& spec = {}) {
    spec.validate();
    std::string svg;
    svg.reserve(1 << 16);
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
    svg += std::to_string(spec.image_size);
    svg += "\" height=\"";
    svg += std::to_string(spec.image_size);
    svg += "\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n";
    svg += "<desc>phase portrait of ";
    svg += gen.label();
    svg += "</desc>\n";
    // Flip the y axis so the mathematical orientation matches the figures.
    svg += "<g transform=\"scale(1,-1)\">\n";
    svg += "<circle class=\"disk\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#444\" "
           "stroke-width=\"0.006\"/>\n";

    svg += "<path class=\"arrows\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.004\" d=\"";
    for (const Arrow& a : arrow_grid(gen, spec)) {
        const cplx from = a.at - 0.5 * a.len * a.dir;
        const cplx to = a.at + 0.5 * a.len * a.dir;
        const cplx head1 = to + 0.3 * a.len * a.dir * std::exp(kI * (kPi * 5.0 / 6.0));
        const cplx head2 = to + 0.3 * a.len * a.dir * std::exp(-kI * (kPi * 5.0 / 6.0));
        svg += "M ";
        detail::xy(svg, from);
        svg += " L ";
        detail::xy(svg, to);
        svg += " L ";
        detail::xy(svg, head1);
        svg += " M ";
        detail::xy(svg, to);
        svg += " L ";
        detail::xy(svg, head2);
        svg += ' ';
    }
    svg += "\"/>\n";

    for (const cplx seed : spec.show_trajectories) {
        try {
            const Trajectory tr = trajectory(gen, seed, spec.t_min, spec.t_max, 160);
            if (tr.samples.empty()) continue;
            svg += "<path class=\"streamline\" fill=\"none\" stroke=\"#2b6fb3\" "
                   "stroke-width=\"0.005\" d=\"M ";
            for (std::size_t i = 0; i < tr.samples.size(); ++i) {
                if (i) svg += " L ";
                detail::xy(svg, tr.samples[i].z);
            }
            svg += "\"/>\n";
        } catch (const std::exception& e) {
            svg += "<desc class=\"warning\">streamline dropped: ";
            svg += e.what();
            svg += "</desc>\n";
        }
    }

    if (flower) {
        for (std::size_t i = 0; i < flower->petals.size(); ++i) {
            const auto& boundary = flower->petals[i].boundary;
            if (boundary.size() < 3) {
                svg += "<desc class=\"warning\">petal ";
                svg += std::to_string(i);
                svg += " omitted: boundary too short</desc>\n";
                continue;
            }
            svg += "<path class=\"petal\" fill=\"none\" stroke=\"";
            svg += spec.petal_colors[i % spec.petal_colors.size()];
            svg += "\" stroke-width=\"0.009\" d=\"M ";
            for (std::size_t k = 0; k + 1 < boundary.size(); ++k) {  // last point repeats the first
                if (k) svg += " L ";
                detail::xy(svg, boundary[k]);
            }
            svg += " Z\"/>\n";
        }
    }

    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace diskflow
