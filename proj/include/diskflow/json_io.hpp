#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "diskflow/flow.hpp"
#include "diskflow/generator.hpp"
#include "diskflow/models.hpp"
#include "diskflow/petal.hpp"
#include "diskflow/starlike.hpp"

namespace diskflow {

using ordered_json = nlohmann::ordered_json;

inline ordered_json complex_to_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const ordered_json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

// {"kind":"berkson_porta","tau":[re,im],"constant":[re,im],
//  "atoms":[{"zeta_angle":radians,"weight":w}]}
// {"kind":"complete","a":[re,im],"b":b}
// {"kind":"example","name":"example1","n":3}
inline ordered_json generator_to_json(const Generator& gen) {
    ordered_json j;
    switch (gen.kind()) {
        case Generator::Kind::berkson_porta: {
            const auto* d = gen.berkson_porta();
            j["kind"] = "berkson_porta";
            j["tau"] = complex_to_json(d->tau);
            j["constant"] = complex_to_json(d->p.constant());
            auto atoms = ordered_json::array();
            for (const auto& a : d->p.atoms()) {
                ordered_json atom;
                atom["zeta_angle"] = angle_in_2pi(std::arg(a.zeta));
                atom["weight"] = a.weight;
                atoms.push_back(atom);
            }
            j["atoms"] = atoms;
            break;
        }
        case Generator::Kind::complete: {
            const auto* d = gen.complete();
            j["kind"] = "complete";
            j["a"] = complex_to_json(d->a);
            j["b"] = d->b;
            break;
        }
        case Generator::Kind::closed_form: {
            // Only the built-in example models round-trip as closed forms.
            const std::string& label = gen.label();
            const auto colon = label.find(":n=");
            j["kind"] = "example";
            j["name"] = colon == std::string::npos ? label : label.substr(0, colon);
            if (colon != std::string::npos) j["n"] = std::stoi(label.substr(colon + 3));
            break;
        }
    }
    return j;
}

inline Generator generator_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ValidationError("generator json requires a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "berkson_porta") {
        std::vector<HerglotzAtom> atoms;
        if (j.contains("atoms"))
            for (const auto& aj : j.at("atoms"))
                atoms.push_back({std::exp(kI * aj.at("zeta_angle").get<double>()),
                                 aj.at("weight").get<double>()});
        const cplx constant =
            j.contains("constant") ? complex_from_json(j.at("constant")) : cplx(0.0);
        return make_berkson_porta(complex_from_json(j.at("tau")),
                                  AtomicHerglotz(constant, std::move(atoms)));
    }
    if (kind == "complete")
        return make_complete(complex_from_json(j.at("a")), j.at("b").get<double>());
    if (kind == "example") {
        const std::string name = j.at("name").get<std::string>();
        const int n = j.contains("n") ? j.at("n").get<int>() : 1;
        return example_model(name, n).gen;
    }
    throw ValidationError("unknown generator kind: " + kind);
}

// Accepts inline JSON, the shorthand "example1:n=3" / "example2" / "example3",
// or a path to a JSON file.
inline Generator parse_generator_spec(const std::string& spec) {
    std::string s = spec;
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    if (!s.empty() && s.front() == '{') {
        ordered_json j;
        try {
            j = ordered_json::parse(s);
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(std::string("bad generator json: ") + e.what());
        }
        return generator_from_json(j);
    }
    if (s.rfind("example", 0) == 0) {
        const auto colon = s.find(':');
        std::string name = s.substr(0, colon);
        int n = 1;
        if (colon != std::string::npos) {
            const std::string opt = s.substr(colon + 1);
            if (opt.rfind("n=", 0) != 0)
                throw ValidationError("example option must look like n=<int>: " + spec);
            n = std::stoi(opt.substr(2));
        }
        return example_model(name, n).gen;
    }
    std::ifstream in(s);
    if (!in) throw ValidationError("cannot open generator spec file: " + s);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad generator json file: ") + e.what());
    }
    return generator_from_json(j);
}

// Trajectories: one {"t":...,"re":...,"im":...} record per line.
inline std::string trajectory_to_jsonl(const Trajectory& tr) {
    std::ostringstream out;
    for (const auto& s : tr.samples) {
        ordered_json j;
        j["t"] = s.t;
        j["re"] = s.z.real();
        j["im"] = s.z.imag();
        out << j.dump() << '\n';
    }
    return out.str();
}

inline std::string trajectory_to_csv(const Trajectory& tr) {
    std::ostringstream out;
    out << "t,re,im\n";
    out.precision(17);
    for (const auto& s : tr.samples) out << s.t << ',' << s.z.real() << ',' << s.z.imag() << '\n';
    return out.str();
}

inline ordered_json petal_to_json(const Petal& petal) {
    ordered_json j;
    j["eta_angle"] = petal.eta.angle();
    j["gamma"] = petal.eta.gamma;
    j["alpha"] = petal.alpha;
    j["theta"] = petal.theta;
    auto boundary = ordered_json::array();
    for (const cplx p : petal.boundary) boundary.push_back(complex_to_json(p));
    j["boundary"] = boundary;
    return j;
}

inline std::string boundary_to_csv(const Petal& petal) {
    std::ostringstream out;
    out << "re,im\n";
    out.precision(17);
    for (const cplx p : petal.boundary) out << p.real() << ',' << p.imag() << '\n';
    return out.str();
}

inline ordered_json flower_to_json(const Flower& flower) {
    ordered_json j;
    j["generator"] = flower.generator_label;
    auto petals = ordered_json::array();
    for (const auto& p : flower.petals) petals.push_back(petal_to_json(p));
    j["petals"] = petals;
    return j;
}

// Starlike closed forms mirror the generator schema with C / a / eta_angle.
inline ordered_json starlike_to_json(const StarlikeClosedForm& s) {
    ordered_json j;
    j["kind"] = "starlike";
    j["C"] = complex_to_json(s.C());
    j["tau"] = complex_to_json(s.tau());
    if (s.eta()) {
        j["eta_angle"] = angle_in_2pi(std::arg(*s.eta()));
        j["a"] = s.a();
    }
    auto atoms = ordered_json::array();
    for (const auto& a : s.sigma()) {
        ordered_json atom;
        atom["zeta_angle"] = angle_in_2pi(std::arg(a.zeta));
        atom["weight"] = a.weight;
        atoms.push_back(atom);
    }
    j["atoms"] = atoms;
    return j;
}

inline StarlikeClosedForm starlike_from_json(const ordered_json& j) {
    std::optional<cplx> eta;
    double a = 0.0;
    if (j.contains("eta_angle")) {
        eta = std::exp(kI * j.at("eta_angle").get<double>());
        a = j.at("a").get<double>();
    }
    std::vector<HerglotzAtom> atoms;
    if (j.contains("atoms"))
        for (const auto& aj : j.at("atoms"))
            atoms.push_back({std::exp(kI * aj.at("zeta_angle").get<double>()),
                             aj.at("weight").get<double>()});
    return StarlikeClosedForm(complex_from_json(j.at("C")), complex_from_json(j.at("tau")), eta, a,
                              std::move(atoms));
}

}  // namespace diskflow
