#include <doctest.h>

#include "oracle_check.hpp"

#include <chrono>

TEST_CASE("classification agrees with the brute-force oracle on all small 2x2 systems") {
    auto t0 = std::chrono::steady_clock::now();
    auto s = oracle_check::run_oracle_suite(true);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE("checked ", s.checked, " matrices (", s.classified, " classified, ", s.nonsplit,
            " non-split) in ", dt, "s");
    CHECK(s.checked > 1500);
    CHECK(s.mismatches == 0);
    CHECK(dt < 60.0);
}
