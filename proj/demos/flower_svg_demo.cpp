// Builds the three-petal flower of f(z) = z(1 - z^3), prints the petal data
// and writes a phase portrait next to the working directory.

#include <fstream>
#include <iostream>

#include "diskflow/diskflow.hpp"

int main() {
    using namespace diskflow;

    const auto model = example1(3);
    const Generator& gen = model.gen;

    const DenjoyWolffInfo info = classify(gen);
    std::cout << "regime: " << to_string(info.regime) << ", beta = " << info.beta.real() << "\n";

    const Flower flower = build_flower(gen);
    for (const auto& petal : flower.petals) {
        std::cout << "petal at angle " << petal.eta.angle() << ": gamma = " << petal.eta.gamma
                  << ", alpha = " << petal.alpha
                  << ", boundary points = " << petal.boundary.size() << "\n";
    }

    RenderSpec spec;
    spec.show_trajectories = {cplx{0.25, 0.35}, cplx{-0.4, 0.1}};
    std::ofstream("flower_demo.svg") << render_phase_portrait(gen, &flower, spec);
    std::cout << "wrote flower_demo.svg\n";

    // Backward orbit inside the first petal: the group runs for all real t.
    const Petal& petal = flower.petals.front();
    for (double t : {-8.0, -2.0, 0.0, 2.0}) {
        const cplx w = backward_orbit(petal, petal.seed, t);
        std::cout << "orbit t = " << t << ": (" << w.real() << ", " << w.imag() << ")\n";
    }
    return 0;
}
