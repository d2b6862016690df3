#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "diskflow/boundary.hpp"
#include "diskflow/generator.hpp"
#include "diskflow/models.hpp"
#include "test_util.hpp"

using namespace diskflow;
using tst::cdist;

TEST_CASE("berkson-porta construction and evaluation") {
    SECTION("identity field: tau=0, p == 1") {
        const Generator g = make_berkson_porta(0.0, AtomicHerglotz(1.0, {}));
        CHECK_CLOSE(g.eval({0.3, 0.2}), (cplx{0.3, 0.2}), 1e-15);
        CHECK_CLOSE(g.beta(), cplx(1.0), 1e-15);
    }
    SECTION("single atom at -1 gives z(1-z)/(1+z)") {
        const Generator g = make_berkson_porta(0.0, AtomicHerglotz(0.0, {{-1.0, 1.0}}));
        for (const cplx z : tst::polar_grid(4, 8, 0.9)) {
            const cplx expect = z * (1.0 - z) / (1.0 + z);
            CHECK_CLOSE(g.eval(z), expect, 1e-13);
        }
        CHECK_CLOSE(g.eval(0.5), cplx(0.5 * 0.5 / 1.5), 1e-14);
    }
    SECTION("boundary tau=1 with symmetric atoms matches -(1-z)(1+z^2)/(1+z)") {
        const Generator g =
            make_berkson_porta(1.0, AtomicHerglotz(0.0, {{1.0, 0.5}, {-1.0, 0.5}}));
        for (const cplx z : tst::polar_grid(10, 10, 0.92)) {
            const cplx expect = -(1.0 - z) * (1.0 + z * z) / (1.0 + z);
            CHECK_CLOSE(g.eval(z), expect, 1e-12);
        }
        CHECK(g.tau_on_boundary());
        CHECK_CLOSE(g.beta(), cplx(1.0), 1e-9);
    }
    SECTION("rejects malformed herglotz data") {
        CHECK_THROWS_AS(AtomicHerglotz(cplx{-0.1, 0.0}, {}), ValidationError);
        CHECK_THROWS_AS(AtomicHerglotz(0.0, {{1.0, -2.0}}), ValidationError);
        CHECK_THROWS_AS(AtomicHerglotz(0.0, {{1.0, 0.0}}), ValidationError);
    }
    SECTION("herglotz positivity on a grid (berkson-porta form)") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<HerglotzAtom> atoms;
            const int na = 1 + int(u(rng) * 3);
            for (int i = 0; i < na; ++i)
                atoms.push_back({std::exp(kI * (2.0 * kPi * u(rng))), 0.1 + u(rng)});
            const AtomicHerglotz p(cplx{u(rng), 2.0 * u(rng) - 1.0}, atoms);
            const cplx tau = 0.6 * (2.0 * u(rng) - 1.0) + kI * 0.6 * (2.0 * u(rng) - 1.0);
            const Generator g = make_berkson_porta(tau, p);
            for (const cplx z : tst::polar_grid(10, 20, 0.95)) {
                const cplx ratio = g.eval(z) / ((z - tau) * (1.0 - z * std::conj(tau)));
                CHECK(ratio.real() > -1e-12);
            }
        }
    }
}

TEST_CASE("eval on spec examples") {
    const auto m1 = example1(1);
    CHECK_CLOSE(m1.gen.eval(0.5), cplx(0.25), 1e-15);
    const Generator rot = make_complete(0.0, 1.0);
    CHECK_CLOSE(rot.eval({0.0, 0.3}), (cplx{-0.3, 0.0}), 1e-15);  // f(z) = iz at 0.3i
    const auto m3 = example3();
    CHECK_CLOSE(m3.gen.eval(0.5), cplx(0.5 * 0.5 / 1.5), 1e-15);
}

TEST_CASE("classify") {
    SECTION("example1 is interior-attracting with beta 1") {
        for (int n : {1, 2, 5}) {
            const auto info = classify(example1(n).gen);
            CHECK(info.regime == FlowRegime::interior_attracting);
            CHECK_CLOSE(info.tau, cplx(0.0), 1e-14);
            CHECK_CLOSE(info.beta, cplx(1.0), 1e-12);
        }
    }
    SECTION("pure rotation field is an elliptic group") {
        const auto info = classify(make_complete(0.0, 1.0));
        CHECK(info.regime == FlowRegime::elliptic_group);
        CHECK(std::abs(info.beta.real()) < 1e-14);
    }
    SECTION("example2 is boundary-hyperbolic with tau=1, beta=1") {
        const auto info = classify(example2().gen);
        CHECK(info.regime == FlowRegime::boundary_hyperbolic);
        CHECK(info.tau_on_boundary);
        CHECK_CLOSE(info.tau, cplx(1.0), 1e-12);
        CHECK_CLOSE(info.beta, cplx(1.0), 1e-9);
    }
    SECTION("complete hyperbolic field classifies as automorphism flow") {
        const auto info = classify(make_complete(-0.5, 0.0));  // f = (z^2-1)/2
        CHECK(info.regime == FlowRegime::automorphism_flow);
        CHECK_CLOSE(info.tau, cplx(1.0), 1e-14);
        CHECK_CLOSE(info.beta, cplx(1.0), 1e-12);
    }
    SECTION("double boundary root classifies as boundary-parabolic") {
        // 4|a|^2 = b^2: the two null points coincide on the circle, beta = 0.
        const auto info = classify(make_complete({0.0, 0.5}, 1.0));
        CHECK(info.regime == FlowRegime::boundary_parabolic);
        CHECK(info.tau_on_boundary);
        CHECK(std::abs(info.beta) < 1e-12);
        // Unsupported downstream: no petal machinery for the parabolic case.
        CHECK_THROWS_AS(boundary_null_points(make_complete({0.0, 0.5}, 1.0)), ValidationError);
    }
    SECTION("scale equivariance") {
        const auto base = example3();
        for (double c : {0.5, 2.0, 7.5}) {
            const Generator scaled = make_closed_form(
                "scaled", [c, base](cplx z) { return c * base.gen.eval(z); },
                [c, base](cplx z) { return c * base.gen.deriv(z); }, base.gen.tau(),
                base.gen.tau_on_boundary(), c * base.gen.beta());
            const auto a = classify(base.gen);
            const auto b = classify(scaled);
            CHECK(a.regime == b.regime);
            CHECK_CLOSE(a.tau, b.tau, 1e-14);
            CHECK_CLOSE(c * a.beta, b.beta, 1e-12);
        }
    }
}

TEST_CASE("boundary null points") {
    SECTION("example1 n=3: cube roots of unity, gamma = -3") {
        const auto pts = boundary_null_points(example1(3).gen);
        REQUIRE(pts.size() == 3);
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(pts[k].angle() - 2.0 * kPi * k / 3.0) < 1e-8);
            CHECK(std::abs(pts[k].gamma - (-3.0)) < 1e-4);
        }
    }
    SECTION("example2: +-i with gamma = -2") {
        const auto pts = boundary_null_points(example2().gen);
        REQUIRE(pts.size() == 2);
        CHECK(std::abs(pts[0].angle() - kPi / 2.0) < 1e-8);
        CHECK(std::abs(pts[1].angle() - 3.0 * kPi / 2.0) < 1e-8);
        for (const auto& p : pts) CHECK(std::abs(p.gamma - (-2.0)) < 1e-4);
    }
    SECTION("identity field has none") {
        const Generator g = make_berkson_porta(0.0, AtomicHerglotz(1.0, {}));
        CHECK(boundary_null_points(g).empty());
    }
    SECTION("scan count invariance on the paper examples") {
        for (const auto& model : {example1(3), example2(), example3()}) {
            const auto a = boundary_null_points(model.gen, 4096);
            const auto b = boundary_null_points(model.gen, 8192);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                CHECK(std::abs(a[i].angle() - b[i].angle()) < 1e-8);
        }
    }
}

TEST_CASE("angular derivative") {
    SECTION("example3 at 1 gives -1/2") {
        CHECK(std::abs(angular_derivative(example3().gen, 1.0) - (-0.5)) < 1e-8);
    }
    SECTION("example1 n=2 at -1 gives -2") {
        CHECK(std::abs(angular_derivative(example1(2).gen, -1.0) - (-2.0)) < 1e-8);
    }
    SECTION("half (z^2-1) at -1 gives -1") {
        const Generator g = make_complete(-0.5, 0.0);
        CHECK(std::abs(angular_derivative(g, -1.0) - (-1.0)) < 1e-9);
    }
    SECTION("diverges where f does not vanish") {
        CHECK_THROWS_AS(angular_derivative(example3().gen, -1.0), DivergentLimit);
    }
}

TEST_CASE("is_complete") {
    SECTION("half (z^2-1)") {
        const auto m = is_complete(make_complete(-0.5, 0.0));
        REQUIRE(m.matches);
        CHECK_CLOSE(m.a, cplx(-0.5), 1e-12);
        CHECK(std::abs(m.b) < 1e-12);
    }
    SECTION("example1 n=1 is not complete") {
        CHECK_FALSE(is_complete(example1(1).gen).matches);
    }
    SECTION("roundtrip a=1+i, b=2") {
        const auto m = is_complete(make_complete({1.0, 1.0}, 2.0));
        REQUIRE(m.matches);
        CHECK_CLOSE(m.a, (cplx{1.0, 1.0}), 1e-12);
        CHECK(std::abs(m.b - 2.0) < 1e-12);
    }
}

TEST_CASE("lemma 6 bounds for random atomic generators") {
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int interior_hits = 0, boundary_hits = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const bool boundary_tau = trial % 2 == 1;
        std::vector<HerglotzAtom> atoms;
        const int na = 1 + int(u(rng) * 2.999);
        for (int i = 0; i < na; ++i)
            atoms.push_back({std::exp(kI * (2.0 * kPi * u(rng))), 0.15 + 1.5 * u(rng)});
        cplx tau;
        if (boundary_tau) {
            tau = std::exp(kI * (2.0 * kPi * u(rng)));
            atoms.push_back({tau, 0.2 + u(rng)});  // atom at tau keeps beta > 0
        } else {
            tau = 0.7 * (2.0 * u(rng) - 1.0) + kI * 0.7 * (2.0 * u(rng) - 1.0);
        }
        // Purely imaginary constant keeps boundary zeros of p in play.
        const AtomicHerglotz p(kI * (2.0 * u(rng) - 1.0), atoms);
        Generator g = make_berkson_porta(tau, p);
        if (g.beta().real() <= 1e-9) continue;
        const auto pts = boundary_null_points(g, 2048);
        for (const auto& bfp : pts) {
            if (boundary_tau) {
                ++boundary_hits;
                CHECK(bfp.gamma <= -g.beta().real() + 1e-6);
                if (std::abs(bfp.gamma + g.beta().real()) < 1e-6)
                    CHECK(is_complete(g).matches);
            } else {
                ++interior_hits;
                CHECK(bfp.gamma < -0.5 * g.beta().real() + 1e-6);
            }
        }
    }
    // The generator mix above must actually exercise both branches.
    CHECK(interior_hits > 20);
    CHECK(boundary_hits > 20);
}

TEST_CASE("lemma 6 equality case is the hyperbolic automorphism") {
    // tau-atom plus imaginary constant is a complete field; equality gamma=-beta.
    const cplx tau = 1.0;
    const Generator g = make_berkson_porta(tau, AtomicHerglotz(kI * 0.7, {{tau, 0.8}}));
    REQUIRE(is_complete(g).matches);
    const auto pts = boundary_null_points(g, 4096);
    REQUIRE(pts.size() == 1);
    CHECK(std::abs(pts[0].gamma + g.beta().real()) < 1e-6);
}
