#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "diskflow/mobius.hpp"
#include "diskflow/models.hpp"
#include "test_util.hpp"

using namespace diskflow;
using tst::cdist;

TEST_CASE("example models match printed values") {
    SECTION("example1 flow at (n=1, z=1/2, t=1)") {
        CHECK_CLOSE(example1(1).flow(1.0, 0.5), cplx(0.2689414213699951), 1e-14);
    }
    SECTION("example1 petal maps hit the fixed points") {
        for (int n : {1, 2, 5}) {
            const auto m = example1(n);
            for (int k = 0; k < n; ++k) {
                CHECK_CLOSE(m.petal_map(k, 1.0), cplx(0.0), 1e-12);       // phi_k(1) = tau
                CHECK_CLOSE(m.petal_map(k, -1.0), m.repelling[k], 1e-12); // phi_k(-1) = eta_k
            }
        }
    }
    SECTION("example3 linearizer is the Koebe function") {
        CHECK_CLOSE(example3().linearizer(0.5), cplx(2.0), 1e-14);
        CHECK_CLOSE(koebe(koebe_inverse({0.3, 1.1})), (cplx{0.3, 1.1}), 1e-12);
        CHECK_CLOSE(koebe_inverse(1.0), cplx((3.0 - std::sqrt(5.0)) / 2.0), 1e-14);
    }
    SECTION("example1_h values") {
        CHECK_CLOSE(example1_h(1, 0.5), cplx(1.0), 1e-14);
        CHECK_CLOSE(example1_h(4, 0.0), cplx(0.0), 1e-14);
        // h(phi(z)) = (1-z)/(1+z) for n=1 at z=0.3
        const auto m = example1(1);
        CHECK_CLOSE(example1_h(1, m.petal_map(0, 0.3)), cplx(0.7 / 1.3), 1e-13);
    }
    SECTION("unknown model name rejected") {
        CHECK_THROWS_AS(example_model("example9"), ValidationError);
    }
}

TEST_CASE("example models satisfy the semigroup law analytically") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& m : {example1(1), example1(3), example2(), example3()}) {
        for (int i = 0; i < 25; ++i) {
            const cplx z = 0.92 * std::sqrt(u(rng)) * std::exp(kI * (2.0 * kPi * u(rng)));
            const double t = 4.0 * u(rng), s = 4.0 * u(rng);
            CHECK_CLOSE(m.flow(t, m.flow(s, z)), m.flow(t + s, z), 1e-12);
        }
        // F_0 = id
        CHECK_CLOSE(m.flow(0.0, {0.4, -0.2}), (cplx{0.4, -0.2}), 1e-13);
    }
}

TEST_CASE("example1 petal maps satisfy the petal equation exactly") {
    // n phi'(z)(z^2-1) = 2 f(phi(z)), phi' by central differences.
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n : {1, 2, 3}) {
        const auto m = example1(n);
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < 12; ++i) {
                const cplx z = 0.8 * std::sqrt(u(rng)) * std::exp(kI * (2.0 * kPi * u(rng)));
                auto phi = [&](cplx w) { return m.petal_map(k, w); };
                const cplx dphi = central_derivative(phi, z);
                const cplx lhs = double(n) * dphi * (z * z - 1.0);
                const cplx rhs = 2.0 * m.gen.eval(phi(z));
                CHECK_CLOSE(lhs, rhs, 1e-8);
            }
        }
    }
}

TEST_CASE("example flows are consistent with their generators") {
    // Finite-difference time derivative of F_t matches -f(F_t).
    for (const auto& m : {example1(2), example2(), example3()}) {
        for (const cplx z : tst::polar_grid(2, 5, 0.75)) {
            const double t = 0.8, dt = 1e-6;
            const cplx dF = (m.flow(t + dt, z) - m.flow(t - dt, z)) / (2.0 * dt);
            CHECK_CLOSE(dF, -m.gen.eval(m.flow(t, z)), 1e-7);
        }
    }
}

TEST_CASE("mobius fixed points") {
    SECTION("z/(2-z): fixed points 0 and 1, multiplier 1/2 at 0") {
        const MobiusMap F(1.0, 0.0, -1.0, 2.0);
        const auto fp = mobius_fixed_points(F);
        const bool zero_first = std::abs(fp.z0) < 0.5;
        const cplx z_at = zero_first ? fp.z0 : fp.z1;
        const cplx z_rep = zero_first ? fp.z1 : fp.z0;
        const cplx m_at = zero_first ? fp.mult0 : fp.mult1;
        CHECK_CLOSE(z_at, cplx(0.0), 1e-14);
        CHECK_CLOSE(z_rep, cplx(1.0), 1e-14);
        CHECK_CLOSE(m_at, cplx(0.5), 1e-14);
    }
    SECTION("2z: one finite fixed point, multiplier 2") {
        const auto fp = mobius_fixed_points(MobiusMap(2.0, 0.0, 0.0, 1.0));
        CHECK(fp.z1_at_infinity);
        CHECK_CLOSE(fp.z0, cplx(0.0), 1e-15);
        CHECK_CLOSE(fp.mult0, cplx(2.0), 1e-15);
    }
    SECTION("conjugating automorphism for B=2 has multiplier 2 at -1") {
        const auto fp = mobius_fixed_points(conjugating_automorphism(2.0));
        const bool neg_first = std::abs(fp.z0 + 1.0) < 0.5;
        const cplx mult_at_minus1 = neg_first ? fp.mult0 : fp.mult1;
        CHECK_CLOSE(mult_at_minus1, cplx(2.0), 1e-14);
    }
}

TEST_CASE("invariant disk checks (appendix lemma)") {
    SECTION("z/(2-z) preserves a disk pinching 0 and avoiding 1") {
        CHECK(invariant_disk_check(MobiusMap(1.0, 0.0, -1.0, 2.0), 0.2, 0.5));
    }
    SECTION("2z does not preserve the unit disk") {
        CHECK_FALSE(invariant_disk_check(MobiusMap(2.0, 0.0, 0.0, 1.0), 0.0, 1.0));
    }
    SECTION("identity preserves everything") {
        CHECK(invariant_disk_check(MobiusMap(1.0, 0.0, 0.0, 1.0 + 1e-13), 0.3, 0.6));
    }
    SECTION("multiplier in (0,1) makes admissible disks invariant") {
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int tested = 0;
        for (int trial = 0; trial < 40 && tested < 20; ++trial) {
            // Random map with real fixed points x0 < x1 and multiplier in (0,1):
            // conjugate w -> a w (at 0/infinity) back through (z-x0)/(z-x1).
            const double x0 = -1.0 + 2.0 * u(rng);
            const double x1 = x0 + 0.3 + 1.5 * u(rng);
            const double a = 0.1 + 0.8 * u(rng);
            const MobiusMap to_std(1.0, -x0, 1.0, -x1);
            const MobiusMap scale(a, 0.0, 0.0, 1.0);
            const MobiusMap inv(-x1, x0, -1.0, 1.0);  // inverse of to_std up to factor
            const MobiusMap F = inv.compose(scale.compose(to_std));
            const auto fp = mobius_fixed_points(F);
            const cplx zA = std::abs(fp.mult0) < 1.0 ? fp.z0 : fp.z1;
            const cplx zR = std::abs(fp.mult0) < 1.0 ? fp.z1 : fp.z0;
            ++tested;
            for (int d = 0; d < 10; ++d) {
                // Disk with zA in the closure, zR outside.
                const double r = 0.05 + u(rng);
                const cplx dir = std::exp(kI * (2.0 * kPi * u(rng)));
                const cplx center = zA + (r * u(rng) * 0.95) * dir;
                if (std::abs(zR - center) <= r + 1e-6) continue;
                CHECK(invariant_disk_check(F, center, r, 128));
            }
        }
        CHECK(tested == 20);
    }
}
