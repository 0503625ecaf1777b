#include <doctest.h>

#include "resnet/verify.hpp"

using namespace resnet;

TEST_CASE("the full invariant suite passes") {
    const auto results = run_verification();
    CHECK(!results.empty());
    for (const auto& r : results) {
        INFO(r.module, " | ", r.name, " | ", r.detail);
        CHECK(r.pass);
    }
}

TEST_CASE("module filter narrows the run") {
    VerifyOptions opts;
    opts.module_filter = "lattice";
    const auto results = run_verification(opts);
    CHECK(!results.empty());
    for (const auto& r : results) CHECK(r.module == "lattice");
}

TEST_CASE("fault injection makes the operator identities fail") {
    VerifyOptions opts;
    opts.module_filter = "operators";
    opts.inject_fault = true;
    const auto results = run_verification(opts);
    CHECK(!all_passed(results));
    bool fault_seen = false;
    for (const auto& r : results)
        if (!r.pass) {
            fault_seen = true;
            CHECK(r.name.find("fault") != std::string::npos);
        }
    CHECK(fault_seen);
}
