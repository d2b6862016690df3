#include <catch2/catch_amalgamated.hpp>
#include <cstdio>

#include "diskflow/acceptance.hpp"
#include "diskflow/generator.hpp"

using namespace diskflow;

TEST_CASE("acceptance criteria") {
    const VerifyReport report = run_verify_suite();
    std::fputs(report.table().c_str(), stdout);
    std::fflush(stdout);
    REQUIRE(report.criteria.size() == 13);
    for (const auto& c : report.criteria) {
        INFO("criterion " << c.id << " " << c.name << ": " << c.detail);
        CHECK(c.status == "pass");
    }
    CHECK(report.elapsed_seconds < 60.0);
}

TEST_CASE("mutation smoke test: a sign error in eval breaks the schroeder criterion") {
    VerifyOptions options;
    options.inject_eval_sign_error = true;
    const VerifyReport report = run_verify_suite(options);
    bool schroeder_failed = false;
    for (const auto& c : report.criteria)
        if (c.id == 4) schroeder_failed = c.status == "fail";
    CHECK(schroeder_failed);
}

TEST_CASE("generator-generic suite skips petal criteria on an empty flower") {
    VerifyOptions options;
    options.generator = make_berkson_porta(0.0, AtomicHerglotz(1.0, {}));
    const VerifyReport report = run_verify_suite(options);
    int skipped = 0, failed = 0;
    for (const auto& c : report.criteria) {
        if (c.status == "skip") ++skipped;
        if (c.status == "fail") ++failed;
    }
    CHECK(skipped >= 2);
    CHECK(failed == 0);
}
