#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "diskflow/flow.hpp"
#include "diskflow/models.hpp"
#include "test_util.hpp"

using namespace diskflow;
using tst::cdist;

TEST_CASE("advance basics") {
    const auto m1 = example1(1);
    SECTION("example1 n=1 closed-form value at z0=0.5, t=1") {
        const cplx expect = 1.0 / (std::exp(1.0) + 1.0);  // F_1(1/2) = 1/(e+1)
        CHECK_CLOSE(advance(m1.gen, 0.5, 1.0), expect, 1e-10);
        CHECK_CLOSE(expect, cplx(0.2689414213699951), 1e-12);
    }
    SECTION("t = 0 returns the seed") {
        CHECK_CLOSE(advance(m1.gen, {0.1, 0.7}, 0.0), (cplx{0.1, 0.7}), 0.0 + 1e-18);
    }
    SECTION("identity field is exponential decay") {
        const Generator id = make_berkson_porta(0.0, AtomicHerglotz(1.0, {}));
        CHECK_CLOSE(advance(id, {0.0, 0.3}, std::log(2.0)), (cplx{0.0, 0.15}), 1e-11);
    }
    SECTION("forward invariance on a grid") {
        for (const auto& model : {example1(2), example2()})
            for (const cplx z : tst::polar_grid(3, 7, 0.95))
                for (double t : {0.3, 2.0, 11.0}) CHECK(std::abs(advance(model.gen, z, t)) < 1.0);
    }
}

TEST_CASE("advance agrees with printed closed forms") {
    for (int n : {1, 2, 3}) {
        const auto m = example1(n);
        for (const cplx z : tst::polar_grid(3, 6, 0.85))
            for (double t : {0.1, 0.7, 2.5})
                CHECK_CLOSE(advance(m.gen, z, t), m.flow(t, z), 1e-9);
    }
    const auto m2 = example2();
    for (const cplx z : tst::polar_grid(3, 6, 0.85))
        for (double t : {0.1, 0.7, 2.5})
            CHECK_CLOSE(advance(m2.gen, z, t), m2.flow(t, z), 1e-9);
    // Long horizon engages the linearized tail near the boundary DW point.
    CHECK_CLOSE(advance(m2.gen, {0.0, 0.5}, 30.0), m2.flow(30.0, {0.0, 0.5}), 1e-9);
}

TEST_CASE("flow options are validated") {
    FlowOptions bad;
    bad.escape_radius = 1.0;
    CHECK_THROWS_AS(advance_backward(example1(1).gen, 0.3, -1.0, bad), ValidationError);
    bad = FlowOptions{};
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(advance(example1(1).gen, 0.3, 1.0, bad), ValidationError);
}

TEST_CASE("semigroup law on random points") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& model : {example1(1), example2(), example3()}) {
        for (int i = 0; i < 8; ++i) {
            const cplx z = 0.85 * std::sqrt(u(rng)) * std::exp(kI * (2.0 * kPi * u(rng)));
            const double t = 5.0 * u(rng), s = 5.0 * u(rng);
            const cplx one = advance(model.gen, advance(model.gen, z, s), t);
            const cplx two = advance(model.gen, z, t + s);
            CHECK_CLOSE(one, two, 1e-8);
        }
    }
}

TEST_CASE("generator recovery from the flow") {
    // (z - F_t(z))/t -> f(z) with O(t) error; Richardson over t = 1e-4, 1e-5.
    const auto m = example2();
    for (const cplx z : tst::polar_grid(2, 5, 0.7)) {
        auto quotient = [&](double t) { return (z - advance(m.gen, z, t)) / t; };
        const cplx q1 = quotient(1e-4);
        const cplx q2 = quotient(1e-5);
        const cplx extrap = (10.0 * q2 - q1) / 9.0;
        CHECK_CLOSE(extrap, m.gen.eval(z), 1e-6);
    }
}

TEST_CASE("advance_backward") {
    SECTION("example3 pulls back to eta = 1") {
        const auto res = advance_backward(example3().gen, 0.5, -20.0);
        REQUIRE_FALSE(res.exited());
        CHECK_CLOSE(res.value, cplx(1.0), 1e-3);
    }
    SECTION("point outside the petal exits the disk at finite time") {
        const auto res = advance_backward(example1(1).gen, {0.0, 0.9}, -30.0);
        REQUIRE(res.exited());
        CHECK(*res.exit_time < 0.0);
        CHECK(*res.exit_time > -30.0);
        CHECK(std::abs(res.value) >= 1.0 - 1e-9);
    }
    SECTION("t = 0 returns the seed") {
        const auto res = advance_backward(example1(1).gen, 0.4, 0.0);
        CHECK_FALSE(res.exited());
        CHECK_CLOSE(res.value, cplx(0.4), 1e-18);
    }
    SECTION("brute-force check of the exit with fixed fine steps") {
        // Explicit Euler with tiny steps confirms the orbit of 0.9i leaves.
        const Generator g = example1(1).gen;
        cplx u = {0.0, 0.9};
        bool left = false;
        for (int i = 0; i < 2000000 && !left; ++i) {
            u -= -g.eval(u) * 1e-5;  // backward in time
            left = std::abs(u) >= 1.0 - 1e-9;
        }
        CHECK(left);
    }
}

TEST_CASE("trajectory") {
    SECTION("example1 n=2 forward tail reaches tau = 0") {
        const auto tr = trajectory(example1(2).gen, {0.3, 0.3}, 0.0, 30.0, 121);
        REQUIRE(tr.samples.size() == 121);
        CHECK(std::abs(tr.samples.back().z) < 1e-6);
        for (std::size_t i = 1; i < tr.samples.size(); ++i)
            CHECK(tr.samples[i].t > tr.samples[i - 1].t);
    }
    SECTION("example2 forward tail reaches tau = 1") {
        const auto tr = trajectory(example2().gen, {0.0, 0.5}, 0.0, 40.0, 161);
        CHECK_CLOSE(tr.samples.back().z, cplx(1.0), 1e-3);
    }
    SECTION("identity field samples e^{-t} z pointwise") {
        const Generator id = make_berkson_porta(0.0, AtomicHerglotz(1.0, {}));
        const auto tr = trajectory(id, 0.5, 0.0, 3.0, 61);
        for (const auto& s : tr.samples) CHECK_CLOSE(s.z, cplx(0.5 * std::exp(-s.t)), 1e-10);
    }
    SECTION("backward part truncates at the disk exit") {
        const auto tr = trajectory(example1(1).gen, {0.0, 0.9}, -10.0, 1.0, 56);
        REQUIRE(tr.backward_exit_time.has_value());
        CHECK(*tr.backward_exit_time < 0.0);
        for (const auto& s : tr.samples) CHECK(s.t >= *tr.backward_exit_time - 1e-12);
    }
}

TEST_CASE("hyperbolic group") {
    SECTION("t = 0 is the identity") {
        CHECK_CLOSE(hyperbolic_group(1.7, 0.0, {0.3, -0.4}), (cplx{0.3, -0.4}), 1e-15);
    }
    SECTION("orbit of the origin is tanh(alpha t / 2)") {
        for (double a : {0.5, 1.0, 3.0})
            for (double t : {-2.0, 0.3, 5.0})
                CHECK_CLOSE(hyperbolic_group(a, t, 0.0), cplx(std::tanh(a * t / 2.0)), 1e-13);
    }
    SECTION("group law") {
        const cplx z = {0.0, 0.2};
        const cplx lhs = hyperbolic_group(1.0, 0.7, hyperbolic_group(1.0, -1.3, z));
        CHECK_CLOSE(lhs, hyperbolic_group(1.0, -0.6, z), 1e-12);
    }
    SECTION("matches advance on the complete field (alpha/2)(z^2-1)") {
        const double alpha = 1.3;
        const Generator g = make_complete(-alpha / 2.0, 0.0);
        for (const cplx z : tst::polar_grid(2, 5, 0.8))
            for (double t : {0.4, 1.9}) {
                CHECK_CLOSE(advance(g, z, t), hyperbolic_group(alpha, t, z), 1e-8);
            }
    }
}

TEST_CASE("boundary multiplier") {
    SECTION("example1 n=1 at eta=1, t=1: e") {
        CHECK(std::abs(boundary_multiplier(example1(1).gen, 1.0, 1.0) - std::exp(1.0)) <
              1e-4 * std::exp(1.0));
    }
    SECTION("example2 at eta=i, t=0.5: e") {
        CHECK(std::abs(boundary_multiplier(example2().gen, kI, 0.5) - std::exp(1.0)) <
              1e-4 * std::exp(1.0));
    }
    SECTION("t=0 gives 1") {
        CHECK(std::abs(boundary_multiplier(example1(2).gen, -1.0, 0.0) - 1.0) < 1e-9);
    }
}
