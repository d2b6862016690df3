#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diskflow/acceptance.hpp"
#include "diskflow/json_io.hpp"
#include "diskflow/svg.hpp"

namespace diskflow {

namespace cli_detail {

inline cplx parse_point(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ValidationError("expected a point as re,im: " + s);
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ValidationError("bad point literal: " + s);
    }
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << content;
}

}  // namespace cli_detail

// The full command-line driver. Exit codes: 0 success, 2 validation error,
// 3 numerical failure.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"semigroup flows, petals and flowers on the unit disk"};
    app.require_subcommand(1);

    std::string gen_spec, z0_str, svg_path, json_path, csv_path;
    double eta_angle = 0.0, alpha = 1.0, t_min = 0.0, t_max = 10.0;
    int samples = 200, grid = 24, size = 800, scan = 4096, boundary_samples = 257;
    std::vector<std::string> traj_seeds;

    auto* classify_cmd = app.add_subcommand("classify", "print Denjoy-Wolff data as JSON");
    classify_cmd->add_option("--gen", gen_spec, "generator spec (json, example shorthand, or file)")
        ->required();

    auto* flow_cmd = app.add_subcommand("flow", "integrate an orbit and write samples");
    flow_cmd->add_option("--gen", gen_spec)->required();
    flow_cmd->add_option("--z0", z0_str, "seed point re,im")->required();
    flow_cmd->add_option("--tmin", t_min, "backward horizon (<= 0)");
    flow_cmd->add_option("--tmax", t_max, "forward horizon (>= 0)");
    flow_cmd->add_option("--samples", samples);
    flow_cmd->add_option("--json", json_path, "write JSON-lines samples here");
    flow_cmd->add_option("--csv", csv_path, "write CSV samples here");

    auto* petal_cmd = app.add_subcommand("petal", "construct one petal");
    petal_cmd->add_option("--gen", gen_spec)->required();
    petal_cmd->add_option("--eta", eta_angle, "angle of the repelling point, radians")->required();
    petal_cmd->add_option("--alpha", alpha, "petal parameter alpha >= -gamma")->required();
    petal_cmd->add_option("--json", json_path);
    petal_cmd->add_option("--svg", svg_path);
    petal_cmd->add_option("--csv", csv_path, "boundary polyline as CSV");
    petal_cmd->add_option("--samples", boundary_samples, "boundary polyline samples");

    auto* flower_cmd = app.add_subcommand("flower", "all maximal petals");
    flower_cmd->add_option("--gen", gen_spec)->required();
    flower_cmd->add_option("--json", json_path);
    flower_cmd->add_option("--svg", svg_path);
    flower_cmd->add_option("--grid", grid);
    flower_cmd->add_option("--size", size);
    flower_cmd->add_option("--scan", scan, "boundary scan resolution");

    auto* render_cmd = app.add_subcommand("render", "SVG phase portrait");
    render_cmd->add_option("--gen", gen_spec)->required();
    render_cmd->add_option("--svg", svg_path, "output path (stdout when omitted)");
    render_cmd->add_option("--grid", grid);
    render_cmd->add_option("--size", size);
    render_cmd->add_option("--traj", traj_seeds, "streamline seed re,im (repeatable)");
    render_cmd->add_option("--tmin", t_min);
    render_cmd->add_option("--tmax", t_max);
    auto* no_flower = render_cmd->add_flag("--no-flower", "skip petal overlays");

    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
    verify_cmd->add_option("--gen", gen_spec, "check this generator instead of the named suite");
    verify_cmd->add_option("--json", json_path, "write the machine-readable report here");

    std::vector<const char*> argv;
    argv.push_back("diskflow");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "argument error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (classify_cmd->parsed()) {
            const Generator gen = parse_generator_spec(gen_spec);
            const DenjoyWolffInfo info = classify(gen);
            ordered_json j;
            j["tau"] = complex_to_json(info.tau);
            j["beta"] = complex_to_json(info.beta);
            j["regime"] = to_string(info.regime);
            out << j.dump() << '\n';
            return 0;
        }

        if (flow_cmd->parsed()) {
            const Generator gen = parse_generator_spec(gen_spec);
            const cplx z0 = cli_detail::parse_point(z0_str);
            const Trajectory tr = trajectory(gen, z0, t_min, t_max, samples);
            if (!json_path.empty()) cli_detail::write_file(json_path, trajectory_to_jsonl(tr));
            if (!csv_path.empty()) cli_detail::write_file(csv_path, trajectory_to_csv(tr));
            ordered_json j;
            j["samples"] = tr.samples.size();
            if (!tr.samples.empty()) j["final"] = complex_to_json(tr.samples.back().z);
            if (tr.backward_exit_time) j["backward_exit_time"] = *tr.backward_exit_time;
            out << j.dump() << '\n';
            return 0;
        }

        if (petal_cmd->parsed()) {
            const Generator gen = parse_generator_spec(gen_spec);
            const auto bfp = boundary_null_point_near(gen, eta_angle);
            if (!bfp)
                throw ValidationError("no repelling boundary point near the requested angle");
            const Petal petal = solve_petal(gen, *bfp, alpha, boundary_samples);
            if (!json_path.empty())
                cli_detail::write_file(json_path, petal_to_json(petal).dump(2) + "\n");
            if (!csv_path.empty()) cli_detail::write_file(csv_path, boundary_to_csv(petal));
            if (!svg_path.empty()) {
                Flower single;
                single.generator_label = gen.label();
                single.petals.push_back(petal);
                RenderSpec spec;
                spec.grid = grid;
                spec.image_size = size;
                cli_detail::write_file(svg_path, render_phase_portrait(gen, &single, spec));
            }
            ordered_json j = petal_to_json(petal);
            j.erase("boundary");
            j["boundary_points"] = petal.boundary.size();
            out << j.dump() << '\n';
            return 0;
        }

        if (flower_cmd->parsed()) {
            const Generator gen = parse_generator_spec(gen_spec);
            const Flower flower = build_flower(gen, scan);
            if (!json_path.empty())
                cli_detail::write_file(json_path, flower_to_json(flower).dump(2) + "\n");
            if (!svg_path.empty()) {
                RenderSpec spec;
                spec.grid = grid;
                spec.image_size = size;
                cli_detail::write_file(svg_path, render_phase_portrait(gen, &flower, spec));
            }
            ordered_json j;
            j["petals"] = flower.petals.size();
            auto angles = ordered_json::array();
            for (const auto& p : flower.petals) angles.push_back(p.eta.angle());
            j["eta_angles"] = angles;
            out << j.dump() << '\n';
            return 0;
        }

        if (render_cmd->parsed()) {
            const Generator gen = parse_generator_spec(gen_spec);
            RenderSpec spec;
            spec.grid = grid;
            spec.image_size = size;
            if (t_min < 0.0) spec.t_min = t_min;
            if (t_max > 0.0) spec.t_max = t_max;
            for (const auto& s : traj_seeds)
                spec.show_trajectories.push_back(cli_detail::parse_point(s));
            Flower flower;
            bool have_flower = false;
            if (no_flower->count() == 0 && gen.beta().real() > 1e-9) {
                try {
                    flower = build_flower(gen);
                    have_flower = true;
                } catch (const std::exception& e) {
                    err << "warning: flower construction failed: " << e.what() << '\n';
                }
            }
            const std::string svg =
                render_phase_portrait(gen, have_flower ? &flower : nullptr, spec);
            if (svg_path.empty())
                out << svg;
            else
                cli_detail::write_file(svg_path, svg);
            return 0;
        }

        if (verify_cmd->parsed()) {
            VerifyOptions options;
            if (!gen_spec.empty()) options.generator = parse_generator_spec(gen_spec);
            const VerifyReport report = run_verify_suite(options);
            out << report.table();
            if (!json_path.empty()) {
                ordered_json j;
                auto arr = ordered_json::array();
                for (const auto& c : report.criteria) {
                    ordered_json cj;
                    cj["id"] = c.id;
                    cj["name"] = c.name;
                    cj["status"] = c.status;
                    cj["detail"] = c.detail;
                    arr.push_back(cj);
                }
                j["criteria"] = arr;
                j["elapsed_seconds"] = report.elapsed_seconds;
                j["all_passed"] = report.all_passed();
                cli_detail::write_file(json_path, j.dump(2) + "\n");
            }
            return report.all_passed() ? 0 : 3;
        }
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}

}  // namespace diskflow
